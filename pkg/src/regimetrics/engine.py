"""Sliding-window correlation matrices and integral indicators.

For a period t and window length k, the engine takes the k preceding
channel vectors as a k x n block, forms the scaled Gram matrix

    R(t) = block' . block / (k - 1)

and reads off the per-channel integral indicator as the absolute row sum
of R(t). Summed over channels and evaluable periods this yields one
total per analysis run; two runs over the same periods can then be
compared regime-against-regime.

In raw mode the block holds the masked event values as-is, so R is a
scaled Gram matrix of the raw data. In standardized mode each channel is
z-scored inside its window first, which makes the entries Pearson
coefficients bounded by 1.

``naive_oracle`` recomputes everything with explicit triple loops and no
matrix product; it exists so tests can check the vectorized pipeline
against an independent implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientHistoryError, InvalidWindowError, ValidationError
from .model import (
    RAW,
    STANDARDIZED,
    MappedSeries,
    _frozen_array,
    standardize_window,
    validate_mode,
    window_rows,
)

# No window length is inherent to the method; 12 is a conventional
# monthly-cycle default and every entry point surfaces it as a parameter.
DEFAULT_WINDOW = 12

SYMMETRY_TOL = 1e-12
STANDARDIZED_BOUND_TOL = 1e-9


@dataclass(frozen=True)
class WindowMatrix:
    """The k x n block preceding period t: row l is the vector at t - l."""

    t: int
    k: int
    block: np.ndarray
    mode: str = RAW
    degenerate: np.ndarray = None

    def __post_init__(self):
        validate_mode(self.mode)
        block = _frozen_array(self.block, ndim=2, name="block")
        if block.shape[0] != self.k:
            raise ValidationError(f"block must have k={self.k} rows, got {block.shape[0]}")
        if self.k < 2:
            raise InvalidWindowError(f"window length must be at least 2, got {self.k}")
        if not np.all(np.isfinite(block)):
            raise ValidationError("block must contain only finite values")
        degenerate = self.degenerate
        if degenerate is None:
            degenerate = np.zeros(block.shape[1], dtype=bool)
        degenerate = _frozen_array(degenerate, dtype=bool, ndim=1, name="degenerate")
        if degenerate.shape[0] != block.shape[1]:
            raise ValidationError("degenerate flags must match the channel count")
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "degenerate", degenerate)

    @property
    def n(self) -> int:
        return self.block.shape[1]


def build_window_matrix(series: MappedSeries, t: int, k: int, mode: str = RAW) -> WindowMatrix:
    """Slice (and in standardized mode z-score) the window preceding t."""
    validate_mode(mode)
    if mode == STANDARDIZED:
        wb = standardize_window(series, t, k)
        return WindowMatrix(t=t, k=k, block=wb.values, mode=mode, degenerate=wb.degenerate)
    return WindowMatrix(t=t, k=k, block=window_rows(series, t, k), mode=mode)


def pairwise_coefficient(window: WindowMatrix, i: int, j: int) -> float:
    """Correlation coefficient of channels i and j (0-based) in the window.

    Defined as sum over window rows of block[l, i] * block[l, j],
    divided by k - 1.
    """
    n = window.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValidationError(f"channel indices must be in 0..{n - 1}, got ({i}, {j})")
    return float(window.block[:, i] @ window.block[:, j]) / (window.k - 1)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Scaled Gram matrix of one window; symmetric by construction."""

    t: int
    k: int
    r: np.ndarray
    mode: str = RAW
    degenerate: np.ndarray = None

    def __post_init__(self):
        validate_mode(self.mode)
        r = _frozen_array(self.r, ndim=2, name="r")
        n = r.shape[0]
        if r.shape != (n, n):
            raise ValidationError(f"r must be square, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValidationError("r must contain only finite values")
        if n and np.abs(r - r.T).max() > SYMMETRY_TOL:
            raise ValidationError(f"r is not symmetric within {SYMMETRY_TOL}")
        degenerate = self.degenerate
        if degenerate is None:
            degenerate = np.zeros(n, dtype=bool)
        degenerate = _frozen_array(degenerate, dtype=bool, ndim=1, name="degenerate")
        if degenerate.shape[0] != n:
            raise ValidationError("degenerate flags must match the channel count")
        if self.mode == STANDARDIZED and n:
            if np.abs(r).max() > 1.0 + STANDARDIZED_BOUND_TOL:
                raise ValidationError("standardized coefficients must lie within [-1, 1]")
            diag = np.diagonal(r)
            if np.abs(diag[~degenerate] - 1.0).max(initial=0.0) > STANDARDIZED_BOUND_TOL:
                raise ValidationError("nondegenerate channels must have unit self-correlation")
            if np.abs(diag[degenerate]).max(initial=0.0) > SYMMETRY_TOL:
                raise ValidationError("degenerate channels must have zero self-correlation")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "degenerate", degenerate)

    @property
    def n(self) -> int:
        return self.r.shape[0]


def correlation_matrix(window: WindowMatrix) -> CorrelationMatrix:
    """All pairwise coefficients of a window as one matrix.

    Computed as block' . block / (k - 1) with the upper triangle
    mirrored onto the lower so the result is exactly symmetric.
    """
    gram = (window.block.T @ window.block) / (window.k - 1)
    r = np.triu(gram) + np.triu(gram, 1).T
    return CorrelationMatrix(
        t=window.t, k=window.k, r=r, mode=window.mode, degenerate=window.degenerate
    )


def integral_indicator(corr: CorrelationMatrix) -> np.ndarray:
    """Per-channel indicator: absolute row sums of the correlation matrix.

    The diagonal is included in the sum.
    """
    return np.abs(corr.r).sum(axis=1)


@dataclass(frozen=True)
class IndicatorSeries:
    """Per-period indicator vectors over the evaluable range, plus total.

    Periods 1..k have no full window and are excluded; the evaluable
    range starts at k + 1.
    """

    periods: np.ndarray
    values: np.ndarray
    k: int
    mode: str
    channel_labels: tuple[str, ...]
    total: float

    def __post_init__(self):
        validate_mode(self.mode)
        periods = _frozen_array(self.periods, dtype=int, ndim=1, name="periods")
        values = _frozen_array(self.values, ndim=2, name="values")
        if values.shape[0] != periods.shape[0]:
            raise ValidationError("one value row per period required")
        if periods.size and np.any(np.diff(periods) <= 0):
            raise ValidationError("periods must be strictly increasing")
        if np.any(values < 0):
            raise ValidationError("indicator components must be non-negative")
        labels = tuple(str(label) for label in self.channel_labels)
        if len(labels) != values.shape[1]:
            raise ValidationError("one channel label per column required")
        total = float(self.total)
        recomputed = float(values.sum())
        if abs(total - recomputed) > 1e-9 * max(1.0, abs(recomputed)):
            raise ValidationError(
                f"stored total {total!r} does not match the per-period records ({recomputed!r})"
            )
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "channel_labels", labels)
        object.__setattr__(self, "total", total)

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def per_period_totals(self) -> np.ndarray:
        """Sum of indicator components per period, in fixed channel order."""
        return self.values.sum(axis=1)


def indicator_series(
    series: MappedSeries, k: int = DEFAULT_WINDOW, mode: str = RAW
) -> IndicatorSeries:
    """Indicator vectors for every evaluable period t in k+1 .. t_max.

    Periods are processed sequentially in ascending order and summed in
    fixed channel order, so results are reproducible bit-for-bit.
    """
    validate_mode(mode)
    if k < 2:
        raise InvalidWindowError(f"window length must be at least 2, got {k}")
    if series.t_max <= k:
        raise InsufficientHistoryError(
            f"series has {series.t_max} periods, need more than the window length {k}"
        )
    periods = np.arange(k + 1, series.t_max + 1)
    values = np.empty((periods.size, series.n))
    for idx, t in enumerate(periods):
        window = build_window_matrix(series, int(t), k, mode)
        values[idx] = integral_indicator(correlation_matrix(window))
    return IndicatorSeries(
        periods=periods,
        values=values,
        k=k,
        mode=mode,
        channel_labels=series.channel_labels,
        total=float(values.sum()),
    )


@dataclass(frozen=True)
class RegimeComparison:
    """Two aligned per-period indicator columns and their differences."""

    periods: np.ndarray
    basic: np.ndarray
    treated: np.ndarray
    delta: np.ndarray
    basic_total: float
    treated_total: float
    delta_total: float

    def __post_init__(self):
        periods = _frozen_array(self.periods, dtype=int, ndim=1, name="periods")
        basic = _frozen_array(self.basic, ndim=1, name="basic")
        treated = _frozen_array(self.treated, ndim=1, name="treated")
        delta = _frozen_array(self.delta, ndim=1, name="delta")
        count = periods.shape[0]
        if not (basic.shape[0] == treated.shape[0] == delta.shape[0] == count):
            raise ValidationError("all comparison columns must have the same length")
        expected = self.treated_total - self.basic_total
        if abs(self.delta_total - expected) > 1e-9 * max(1.0, abs(expected)):
            raise ValidationError(
                "total delta must equal the difference of the column totals"
            )
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "basic", basic)
        object.__setattr__(self, "treated", treated)
        object.__setattr__(self, "delta", delta)


def _as_column(regime) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(regime, IndicatorSeries):
        return regime.periods, regime.per_period_totals()
    periods, values = regime
    periods = np.asarray(periods, dtype=int)
    values = np.asarray(values, dtype=float)
    if periods.ndim != 1 or values.shape != periods.shape:
        raise ValidationError("a regime column is (periods, values) of equal length")
    return periods, values


def compare_regimes(basic, treated) -> RegimeComparison:
    """Per-period and total indicator difference, treated minus basic.

    Each argument is an IndicatorSeries (aggregated per period over
    channels) or a (periods, values) column. Both must cover exactly the
    same evaluable periods.
    """
    basic_periods, basic_values = _as_column(basic)
    treated_periods, treated_values = _as_column(treated)
    if not np.array_equal(basic_periods, treated_periods):
        raise ValidationError("regimes cover different period ranges")
    basic_total = float(basic_values.sum())
    treated_total = float(treated_values.sum())
    return RegimeComparison(
        periods=basic_periods,
        basic=basic_values,
        treated=treated_values,
        delta=treated_values - basic_values,
        basic_total=basic_total,
        treated_total=treated_total,
        delta_total=treated_total - basic_total,
    )


def naive_oracle(
    series: MappedSeries, t: int, k: int, mode: str = RAW
) -> tuple[CorrelationMatrix, np.ndarray]:
    """Reference recomputation with explicit loops, for equivalence tests.

    Extracts the window, z-scores it when standardized, and accumulates
    every coefficient and indicator component with plain Python floats;
    no matrix product, no shared code with the engine pipeline beyond
    the precondition checks.
    """
    validate_mode(mode)
    if k < 2:
        raise InvalidWindowError(f"window length must be at least 2, got {k}")
    if t <= k:
        raise InsufficientHistoryError(
            f"period {t} has only {max(t - 1, 0)} preceding periods, window needs {k}"
        )
    if t > series.t_max + 1:
        raise ValidationError(f"period {t} lies beyond the series (last period {series.t_max})")
    n = series.n
    data = series.values
    rows = [[float(data[t - l - 1, j]) for j in range(n)] for l in range(1, k + 1)]
    degenerate = [False] * n
    if mode == STANDARDIZED:
        for j in range(n):
            column = [rows[l][j] for l in range(k)]
            mean = sum(column) / k
            sum_sq = sum((value - mean) ** 2 for value in column)
            if sum_sq == 0.0:
                degenerate[j] = True
                for l in range(k):
                    rows[l][j] = 0.0
            else:
                std = math.sqrt(sum_sq / (k - 1))
                for l in range(k):
                    rows[l][j] = (rows[l][j] - mean) / std
    r = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(k):
                acc += rows[l][i] * rows[l][j]
            r[i][j] = acc / (k - 1)
    indicators = [sum(abs(value) for value in row) for row in r]
    corr = CorrelationMatrix(
        t=t, k=k, r=np.array(r), mode=mode, degenerate=np.array(degenerate, dtype=bool)
    )
    return corr, np.array(indicators)
