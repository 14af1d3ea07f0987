"""File formats and report emission.

All formats are delimited text, friendly to spreadsheets and diff tools:

* event series: header ``t,<label1>,...,<labeln>``, one row per period,
  period indices dense from 1;
* mapping: ``# budget:`` / ``# cost:`` directives followed by sparse
  ``competency_id,channel_label,flag`` rows (absent pairs default to 0);
* scenario: a JSON object mirroring ScenarioConfig;
* comparison table: ``t,v_basic,v_ddescr,dv`` rows with an optional
  ``# totals:`` directive;
* indicator table: ``t,<labels...>,total``;
* plot data: ``t,v_total`` pairs.

Computed values are serialized with full round-trip precision (shortest
repr); files are written atomically (write to a temporary file in the
same directory, then rename) and byte-identical across repeated runs
with identical inputs.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catalog import DescriptorCatalog
from .engine import IndicatorSeries, RegimeComparison
from .errors import ParseError, ValidationError
from .model import CompetencyMapping, EnterpriseModel, validate_mode
from .synth import ProcessConfig, ScenarioConfig

EVENT_PERIOD_COLUMN = "t"
COMPARISON_HEADER = ("t", "v_basic", "v_ddescr", "dv")
PLOT_HEADER = ("t", "v_total")
MAPPING_HEADER = ("competency_id", "channel_label", "flag")


def fmt(value: float) -> str:
    """Shortest decimal string that round-trips the double exactly."""
    return repr(float(value))


def atomic_write_text(path, text: str) -> Path:
    """Write-then-rename so concurrent readers never see partial output."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return path


def _parse_float(cell: str, source, line: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"column {column!r}: {cell!r} is not a number", source=source, line=line)
    if not np.isfinite(value):
        raise ParseError(f"column {column!r}: {cell!r} is not finite", source=source, line=line)
    return value


def _parse_int(cell: str, source, line: int, column: str) -> int:
    try:
        return int(cell)
    except ValueError:
        raise ParseError(f"column {column!r}: {cell!r} is not an integer", source=source, line=line)


def _csv_text(rows) -> str:
    buffer = _io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


# --- event series ----------------------------------------------------------


def write_events(model: EnterpriseModel, path) -> Path:
    rows = [[EVENT_PERIOD_COLUMN, *model.channel_labels]]
    for index in range(model.t_max):
        rows.append([index + 1, *(fmt(v) for v in model.events[index])])
    return atomic_write_text(path, _csv_text(rows))


def parse_events(path) -> EnterpriseModel:
    """Read an event-series file into a model.

    The period column must run densely 1, 2, ... with no gaps,
    duplicates or reordering; every cell must be a finite number and
    every row must have the same width as the header.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty", source=path, line=1)
        if not header or header[0].strip() != EVENT_PERIOD_COLUMN:
            raise ParseError(
                f"first header column must be {EVENT_PERIOD_COLUMN!r}", source=path, line=1
            )
        labels = tuple(label.strip() for label in header[1:])
        if not labels:
            raise ParseError("at least one channel column is required", source=path, line=1)
        if len(set(labels)) != len(labels):
            raise ParseError("channel labels must be unique", source=path, line=1)
        data: list[list[float]] = []
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(labels) + 1:
                raise ParseError(
                    f"expected {len(labels) + 1} fields, got {len(row)}", source=path, line=line
                )
            period = _parse_int(row[0], path, line, EVENT_PERIOD_COLUMN)
            expected = len(data) + 1
            if period < expected:
                raise ParseError(f"duplicate period {period}", source=path, line=line)
            if period > expected:
                raise ParseError(f"missing period {expected}", source=path, line=line)
            data.append(
                [_parse_float(cell, path, line, labels[i]) for i, cell in enumerate(row[1:])]
            )
    if not data:
        raise ParseError("no data rows (t_max = 0)", source=path, line=1)
    return EnterpriseModel(events=np.array(data), channel_labels=labels)


# --- competency mapping ----------------------------------------------------


def write_mapping(mapping: CompetencyMapping, channel_labels, path) -> Path:
    channel_labels = tuple(channel_labels)
    if len(channel_labels) != mapping.n:
        raise ValidationError(
            f"mapping covers {mapping.n} channels but {len(channel_labels)} labels given"
        )
    lines = [f"# budget: {fmt(mapping.budget)}"]
    for cid, cost in zip(mapping.competency_ids, mapping.costs):
        lines.append(f"# cost: {cid} = {fmt(cost)}")
    rows = [list(MAPPING_HEADER)]
    for i, cid in enumerate(mapping.competency_ids):
        for j in np.flatnonzero(mapping.flags[i]):
            rows.append([cid, channel_labels[j], 1])
    text = "\n".join(lines) + "\n" + _csv_text(rows)
    return atomic_write_text(path, text)


def parse_mapping(path, channel_labels, catalog: DescriptorCatalog | None = None) -> CompetencyMapping:
    """Read a mapping file against a known channel-label set.

    When a catalog is supplied, every competency id must resolve in it.
    """
    path = Path(path)
    channel_labels = tuple(channel_labels)
    column_of = {label: j for j, label in enumerate(channel_labels)}
    budget: float | None = None
    costs: dict[str, float] = {}
    order: list[str] = []
    pairs: dict[tuple[str, str], int] = {}
    header_seen = False
    with path.open(newline="", encoding="utf-8") as handle:
        for line, raw in enumerate(handle, start=1):
            stripped = raw.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                if header_seen:
                    raise ParseError("directives must precede the header", source=path, line=line)
                body = stripped[1:].strip()
                if not body:
                    continue
                if body.startswith("budget:"):
                    if budget is not None:
                        raise ParseError("duplicate budget directive", source=path, line=line)
                    budget = _parse_float(body[len("budget:"):].strip(), path, line, "budget")
                elif body.startswith("cost:"):
                    directive = body[len("cost:"):]
                    if "=" not in directive:
                        raise ParseError(
                            "cost directive must be '# cost: <id> = <number>'",
                            source=path,
                            line=line,
                        )
                    cid, _, amount = directive.partition("=")
                    cid = cid.strip()
                    if not cid:
                        raise ParseError("cost directive has empty id", source=path, line=line)
                    if cid in costs:
                        raise ParseError(f"duplicate cost for {cid!r}", source=path, line=line)
                    costs[cid] = _parse_float(amount.strip(), path, line, "cost")
                    order.append(cid)
                else:
                    raise ParseError(f"unknown directive {body!r}", source=path, line=line)
                continue
            row = next(csv.reader([stripped]))
            if not header_seen:
                if tuple(field.strip() for field in row) != MAPPING_HEADER:
                    raise ParseError(
                        f"header must be {','.join(MAPPING_HEADER)}", source=path, line=line
                    )
                header_seen = True
                continue
            if len(row) != 3:
                raise ParseError(f"expected 3 fields, got {len(row)}", source=path, line=line)
            cid, label, flag_text = (field.strip() for field in row)
            if label not in column_of:
                raise ParseError(f"unknown channel label {label!r}", source=path, line=line)
            if flag_text not in ("0", "1"):
                raise ParseError(f"flag must be 0 or 1, got {flag_text!r}", source=path, line=line)
            if (cid, label) in pairs:
                raise ParseError(f"duplicate pair ({cid!r}, {label!r})", source=path, line=line)
            pairs[(cid, label)] = int(flag_text)
            if cid not in costs and cid not in order:
                order.append(cid)
    if not header_seen:
        raise ParseError("missing mapping header", source=path, line=1)
    if budget is None:
        raise ParseError("missing '# budget:' directive", source=path, line=1)
    flags = np.zeros((len(order), len(channel_labels)), dtype=np.int8)
    for (cid, label), flag in pairs.items():
        flags[order.index(cid), column_of[label]] = flag
    mapping = CompetencyMapping(
        flags=flags,
        competency_ids=tuple(order),
        costs=np.array([costs.get(cid, 0.0) for cid in order]),
        budget=budget,
    )
    if catalog is not None:
        mapping.validate_against(catalog)
    return mapping


# --- scenario config -------------------------------------------------------

_SCENARIO_KEYS = {
    "seed",
    "periods",
    "processes",
    "intervention_period",
    "intervention_cost_per_period",
}
_PROCESS_KEYS = {"name", "channels", "base_level", "amplitude", "period_length", "noise_scale"}


def parse_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", source=path, line=exc.lineno)
    if not isinstance(payload, dict):
        raise ParseError("scenario document must be a JSON object", source=path)
    unknown = set(payload) - _SCENARIO_KEYS
    if unknown:
        raise ParseError(f"unknown scenario keys: {', '.join(sorted(unknown))}", source=path)
    for key in ("seed", "periods", "processes"):
        if key not in payload:
            raise ParseError(f"missing scenario key {key!r}", source=path)
    raw_processes = payload["processes"]
    if not isinstance(raw_processes, list):
        raise ParseError("'processes' must be a list", source=path)
    processes = []
    for index, entry in enumerate(raw_processes):
        if not isinstance(entry, dict):
            raise ParseError(f"process #{index + 1} must be an object", source=path)
        unknown = set(entry) - _PROCESS_KEYS
        if unknown:
            raise ParseError(
                f"process #{index + 1} has unknown keys: {', '.join(sorted(unknown))}",
                source=path,
            )
        if "name" not in entry:
            raise ParseError(f"process #{index + 1} is missing 'name'", source=path)
        processes.append(ProcessConfig(**entry))
    return ScenarioConfig(
        seed=payload["seed"],
        periods=payload["periods"],
        processes=tuple(processes),
        intervention_period=payload.get("intervention_period"),
        intervention_cost_per_period=payload.get("intervention_cost_per_period", 0.0),
    )


def write_scenario(config: ScenarioConfig, path) -> Path:
    payload = {
        "seed": config.seed,
        "periods": config.periods,
        "processes": [
            {
                "name": proc.name,
                "channels": proc.channels,
                "base_level": proc.base_level,
                "amplitude": proc.amplitude,
                "period_length": proc.period_length,
                "noise_scale": proc.noise_scale,
            }
            for proc in config.processes
        ],
        "intervention_period": config.intervention_period,
        "intervention_cost_per_period": config.intervention_cost_per_period,
    }
    return atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


# --- comparison and indicator tables ---------------------------------------


def write_comparison_table(path, periods, basic, treated, delta, totals=None) -> Path:
    lines = []
    if totals is not None:
        basic_total, treated_total, delta_total = totals
        lines.append(
            f"# totals: {fmt(basic_total)},{fmt(treated_total)},{fmt(delta_total)}"
        )
    rows = [list(COMPARISON_HEADER)]
    for t, vb, vd, dv in zip(periods, basic, treated, delta):
        rows.append([int(t), fmt(vb), fmt(vd), fmt(dv)])
    text = ("\n".join(lines) + "\n" if lines else "") + _csv_text(rows)
    return atomic_write_text(path, text)


def read_comparison_table(path):
    """Parse a comparison table.

    Returns (periods, v_basic, v_ddescr, dv, totals) where totals is the
    ``# totals:`` triple or None.
    """
    path = Path(path)
    totals = None
    periods: list[int] = []
    columns: list[list[float]] = [[], [], []]
    header_seen = False
    with path.open(newline="", encoding="utf-8") as handle:
        for line, raw in enumerate(handle, start=1):
            stripped = raw.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                if header_seen:
                    raise ParseError("directives must precede the header", source=path, line=line)
                body = stripped[1:].strip()
                if not body.startswith("totals:"):
                    raise ParseError(f"unknown directive {body!r}", source=path, line=line)
                if totals is not None:
                    raise ParseError("duplicate totals directive", source=path, line=line)
                parts = body[len("totals:"):].split(",")
                if len(parts) != 3:
                    raise ParseError("totals directive needs 3 numbers", source=path, line=line)
                totals = tuple(
                    _parse_float(part.strip(), path, line, "totals") for part in parts
                )
                continue
            row = next(csv.reader([stripped]))
            if not header_seen:
                if tuple(field.strip() for field in row) != COMPARISON_HEADER:
                    raise ParseError(
                        f"header must be {','.join(COMPARISON_HEADER)}", source=path, line=line
                    )
                header_seen = True
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 fields, got {len(row)}", source=path, line=line)
            periods.append(_parse_int(row[0], path, line, "t"))
            for column_index in range(3):
                columns[column_index].append(
                    _parse_float(
                        row[column_index + 1], path, line, COMPARISON_HEADER[column_index + 1]
                    )
                )
    if not header_seen:
        raise ParseError("missing comparison header", source=path, line=1)
    return (
        np.array(periods, dtype=int),
        np.array(columns[0]),
        np.array(columns[1]),
        np.array(columns[2]),
        totals,
    )


def write_indicator_table(indicators: IndicatorSeries, path) -> Path:
    rows = [[EVENT_PERIOD_COLUMN, *indicators.channel_labels, "total"]]
    row_totals = indicators.per_period_totals()
    for index, t in enumerate(indicators.periods):
        rows.append(
            [int(t), *(fmt(v) for v in indicators.values[index]), fmt(row_totals[index])]
        )
    return atomic_write_text(path, _csv_text(rows))


def read_indicator_column(path) -> tuple[np.ndarray, np.ndarray]:
    """Per-period aggregate column of an indicator table or plot file."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(row for row in handle if not row.startswith("#"))
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty", source=path, line=1)
        if header[0].strip() != EVENT_PERIOD_COLUMN or header[-1].strip() not in (
            "total",
            "v_total",
        ):
            raise ParseError(
                "not an indicator output (header must start with 't' and end with a total column)",
                source=path,
                line=1,
            )
        periods: list[int] = []
        values: list[float] = []
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(row)}", source=path, line=line
                )
            periods.append(_parse_int(row[0], path, line, "t"))
            values.append(_parse_float(row[-1], path, line, header[-1]))
    return np.array(periods, dtype=int), np.array(values)


def write_plot_data(path, periods, aggregates) -> Path:
    rows = [list(PLOT_HEADER)]
    for t, value in zip(periods, aggregates):
        rows.append([int(t), fmt(value)])
    return atomic_write_text(path, _csv_text(rows))


# --- analysis reports ------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    """One analysis run, ready for emission.

    Carries the window length, normalization mode, and seed (when the
    events are synthetic), plus per-period indicator records and/or a
    regime comparison.
    """

    k: int
    mode: str
    seed: int | None = None
    indicators: IndicatorSeries | None = None
    comparison: RegimeComparison | None = None

    def __post_init__(self):
        validate_mode(self.mode)
        if self.k < 2:
            raise ValidationError(f"window length must be at least 2, got {self.k}")
        if self.indicators is None and self.comparison is None:
            raise ValidationError("report needs indicator records or a comparison")


def emit_report(report: AnalysisReport, destination, pad_warmup: bool = False) -> list[Path]:
    """Write the report's table, plot data and metadata files.

    Emits ``comparison.csv`` plus one plot file per regime when a
    comparison exists, else ``indicators.csv`` plus ``plot.csv``; always
    ends with ``metadata.json``. With ``pad_warmup`` the plot files gain
    zero rows for the warm-up periods 1..k (flagged in the metadata) so
    external plots align with the raw period axis.
    """
    destination = Path(destination)
    destination.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def plot_rows(periods, aggregates):
        if not pad_warmup:
            return periods, aggregates
        warmup = np.arange(1, report.k + 1)
        return (
            np.concatenate([warmup, periods]),
            np.concatenate([np.zeros(report.k), aggregates]),
        )

    if report.comparison is not None:
        comparison = report.comparison
        if comparison.periods.size == 0:
            raise ValidationError("refusing to emit a report with no evaluable periods")
        written.append(
            write_comparison_table(
                destination / "comparison.csv",
                comparison.periods,
                comparison.basic,
                comparison.treated,
                comparison.delta,
                totals=(
                    comparison.basic_total,
                    comparison.treated_total,
                    comparison.delta_total,
                ),
            )
        )
        written.append(
            write_plot_data(
                destination / "plot_basic.csv", *plot_rows(comparison.periods, comparison.basic)
            )
        )
        written.append(
            write_plot_data(
                destination / "plot_ddescr.csv",
                *plot_rows(comparison.periods, comparison.treated),
            )
        )
    else:
        indicators = report.indicators
        if indicators.periods.size == 0:
            raise ValidationError("refusing to emit a report with no evaluable periods")
        written.append(write_indicator_table(indicators, destination / "indicators.csv"))
        written.append(
            write_plot_data(
                destination / "plot.csv",
                *plot_rows(indicators.periods, indicators.per_period_totals()),
            )
        )
    metadata = {
        "k": report.k,
        "mode": report.mode,
        "seed": report.seed,
        "pad_warmup": bool(pad_warmup),
    }
    written.append(
        atomic_write_text(
            destination / "metadata.json", json.dumps(metadata, indent=2, sort_keys=True) + "\n"
        )
    )
    return written
