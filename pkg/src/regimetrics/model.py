"""Enterprise event series, competency mappings, and window extraction.

An enterprise is modelled as a dense time grid of periods 1..t_max and an
event matrix of financial expense/income values (thousand rubles), one
column per event channel. A competency mapping is a binary matrix saying
which channels evidence which catalog competencies; applying it masks the
channels no competency covers. Window extraction slices the k periods
preceding a given period, optionally z-scoring each channel inside the
window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import DescriptorCatalog
from .errors import (
    BudgetError,
    InsufficientHistoryError,
    InvalidWindowError,
    ValidationError,
)

RAW = "raw"
STANDARDIZED = "standardized"
MODES = (RAW, STANDARDIZED)


def _frozen_array(values, dtype=float, ndim: int | None = None, name: str = "array") -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise ValidationError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def validate_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class EnterpriseModel:
    """Time grid plus event matrix, shape (t_max, n), thousand rubles."""

    events: np.ndarray
    channel_labels: tuple[str, ...]

    def __post_init__(self):
        events = _frozen_array(self.events, ndim=2, name="events")
        t_max, n = events.shape
        if t_max < 1 or n < 1:
            raise ValidationError(f"events must be at least 1x1, got {t_max}x{n}")
        if not np.all(np.isfinite(events)):
            raise ValidationError("events must contain only finite values")
        labels = tuple(str(label) for label in self.channel_labels)
        if len(labels) != n:
            raise ValidationError(f"expected {n} channel labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValidationError("channel labels must be unique")
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "channel_labels", labels)

    @property
    def t_max(self) -> int:
        return self.events.shape[0]

    @property
    def n(self) -> int:
        return self.events.shape[1]


@dataclass(frozen=True)
class CompetencyMapping:
    """Binary competency-to-channel matrix with per-competency costs.

    ``flags[i, j] == 1`` declares that event channel j evidences
    competency i. Costs and the budget are in thousand rubles.
    """

    flags: np.ndarray
    competency_ids: tuple[str, ...]
    costs: np.ndarray
    budget: float

    def __post_init__(self):
        flags = np.array(self.flags)
        if flags.ndim != 2:
            raise ValidationError(f"flags must be 2-dimensional, got shape {flags.shape}")
        if flags.size and not np.isin(flags, (0, 1)).all():
            raise ValidationError("every flags cell must be 0 or 1")
        flags = _frozen_array(flags, dtype=np.int8, ndim=2, name="flags")
        m = flags.shape[0]
        ids = tuple(str(c) for c in self.competency_ids)
        if len(ids) != m:
            raise ValidationError(f"expected {m} competency ids, got {len(ids)}")
        if len(set(ids)) != m:
            raise ValidationError("competency ids must be unique")
        costs = _frozen_array(self.costs, ndim=1, name="costs")
        if costs.shape[0] != m:
            raise ValidationError(f"expected {m} costs, got {costs.shape[0]}")
        if not np.all(np.isfinite(costs)) or np.any(costs < 0):
            raise ValidationError("costs must be finite and non-negative")
        budget = float(self.budget)
        if not np.isfinite(budget) or budget < 0:
            raise ValidationError("budget must be finite and non-negative")
        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "competency_ids", ids)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "budget", budget)

    @property
    def m(self) -> int:
        return self.flags.shape[0]

    @property
    def n(self) -> int:
        return self.flags.shape[1]

    def active_channels(self) -> np.ndarray:
        """Boolean mask over channels: covered by at least one competency."""
        return self.flags.any(axis=0)

    def active_competencies(self) -> np.ndarray:
        """Boolean mask over competencies: flag at least one channel."""
        return self.flags.any(axis=1)

    def validate_against(self, catalog: DescriptorCatalog) -> None:
        """Check that every competency id resolves in the catalog."""
        known = set(catalog.skill_ids())
        unknown = [c for c in self.competency_ids if c not in known]
        if unknown:
            raise ValidationError(
                f"competency ids not in catalog: {', '.join(sorted(unknown))}"
            )


@dataclass(frozen=True)
class BudgetReport:
    """Feasibility of a mapping: cost of active competencies vs budget."""

    total_cost: float
    budget: float
    satisfied: bool
    active: tuple[str, ...]


def check_budget(mapping: CompetencyMapping) -> BudgetReport:
    """Sum costs of competencies with at least one flag set.

    A violated budget is a valid report, not an error.
    """
    active_mask = mapping.active_competencies()
    total = float(mapping.costs[active_mask].sum())
    active = tuple(
        cid for cid, is_active in zip(mapping.competency_ids, active_mask) if is_active
    )
    return BudgetReport(
        total_cost=total,
        budget=mapping.budget,
        satisfied=total <= mapping.budget,
        active=active,
    )


@dataclass(frozen=True)
class MappedSeries:
    """Event series after competency masking, ready for windowed analysis."""

    values: np.ndarray
    channel_labels: tuple[str, ...]
    mode: str = RAW
    masked_channels: tuple[int, ...] = ()

    def __post_init__(self):
        values = _frozen_array(self.values, ndim=2, name="values")
        t_max, n = values.shape
        if t_max < 1 or n < 1:
            raise ValidationError(f"values must be at least 1x1, got {t_max}x{n}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("values must contain only finite values")
        labels = tuple(str(label) for label in self.channel_labels)
        if len(labels) != n:
            raise ValidationError(f"expected {n} channel labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValidationError("channel labels must be unique")
        validate_mode(self.mode)
        masked = tuple(int(j) for j in self.masked_channels)
        if any(j < 0 or j >= n for j in masked):
            raise ValidationError("masked channel index out of range")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "channel_labels", labels)
        object.__setattr__(self, "masked_channels", masked)

    @property
    def t_max(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @classmethod
    def from_model(cls, model: EnterpriseModel) -> "MappedSeries":
        """Identity mapping: every channel passes through unmasked."""
        return cls(values=model.events, channel_labels=model.channel_labels)


def apply_mapping(source, mapping: CompetencyMapping) -> MappedSeries:
    """Mask event channels not covered by any competency.

    ``source`` may be an EnterpriseModel or an already-mapped series
    (applying the same mapping again changes nothing). Channel j of the
    output equals the input channel when the column-wise OR of flags is
    set, and is zero otherwise; zeroed channels are listed in
    ``masked_channels``. Raises BudgetError (carrying the computed cost)
    when the mapping's active competencies exceed the budget.
    """
    if isinstance(source, EnterpriseModel):
        values, labels = source.events, source.channel_labels
    elif isinstance(source, MappedSeries):
        values, labels = source.values, source.channel_labels
    else:
        raise ValidationError(
            f"source must be EnterpriseModel or MappedSeries, got {type(source).__name__}"
        )
    if mapping.n != values.shape[1]:
        raise ValidationError(
            f"mapping covers {mapping.n} channels but the series has {values.shape[1]}"
        )
    report = check_budget(mapping)
    if not report.satisfied:
        raise BudgetError(report.total_cost, mapping.budget)
    keep = mapping.active_channels()
    masked = tuple(int(j) for j in np.flatnonzero(~keep))
    out = np.where(keep, values, 0.0)
    return MappedSeries(values=out, channel_labels=labels, mode=RAW, masked_channels=masked)


def _check_window_bounds(t_max: int, t: int, k: int) -> None:
    if k < 2:
        raise InvalidWindowError(
            f"window length must be at least 2 (the coefficient divisor is k-1), got {k}"
        )
    if t <= k:
        raise InsufficientHistoryError(
            f"period {t} has only {max(t - 1, 0)} preceding periods, window needs {k}"
        )
    if t > t_max + 1:
        raise ValidationError(
            f"period {t} lies beyond the series (last period {t_max})"
        )


def window_rows(series: MappedSeries, t: int, k: int) -> np.ndarray:
    """The k x n block of the periods preceding t.

    Row l (1-based) holds the channel vector at period t - l, so the
    first row is the most recent period t - 1 and the last is t - k.
    """
    _check_window_bounds(series.t_max, t, k)
    block = series.values[t - k - 1 : t - 1]
    return block[::-1].copy()


@dataclass(frozen=True)
class WindowBlock:
    """A window of standardized values plus degenerate-channel flags."""

    values: np.ndarray
    degenerate: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values, ndim=2, name="values")
        degenerate = _frozen_array(self.degenerate, dtype=bool, ndim=1, name="degenerate")
        if degenerate.shape[0] != values.shape[1]:
            raise ValidationError("degenerate flags must match the channel count")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "degenerate", degenerate)


def standardize_window(series: MappedSeries, t: int, k: int) -> WindowBlock:
    """Per-channel z-scores inside the window preceding t.

    Each channel column is replaced by (value - window mean) / window
    standard deviation with divisor k - 1. A channel whose window
    variance is exactly zero becomes an all-zero column and is flagged
    degenerate.
    """
    block = window_rows(series, t, k)
    mean = block.mean(axis=0)
    centered = block - mean
    variance = (centered * centered).sum(axis=0) / (k - 1)
    degenerate = variance == 0.0
    std = np.sqrt(np.where(degenerate, 1.0, variance))
    out = np.where(degenerate, 0.0, centered / std)
    return WindowBlock(values=out, degenerate=degenerate)
