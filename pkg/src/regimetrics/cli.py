"""Command-line interface.

Subcommands:

* ``catalog``          validate and print the competency catalog
* ``generate``         scenario config -> paired baseline/treated event files
* ``analyze``          event file (+ optional mapping) -> indicator report
* ``compare``          two event files or indicator outputs -> delta report
* ``verify-reference`` audit the bundled reference table's arithmetic

Every command exits 0 on success and nonzero with a diagnostic on any
error; ``verify-reference`` exits nonzero if any check fails.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .catalog import default_catalog, load_catalog
from .engine import DEFAULT_WINDOW, compare_regimes, indicator_series
from .errors import RegimetricsError
from .io import (
    AnalysisReport,
    emit_report,
    parse_events,
    parse_mapping,
    parse_scenario,
    read_indicator_column,
    write_events,
)
from .model import MODES, RAW, MappedSeries, apply_mapping, check_budget
from .reference import load_reference, read_reference, verify_reference
from .synth import paired_scenarios


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regimetrics",
        description="Sliding-window correlation indicators for enterprise operating regimes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="validate and print the competency catalog")
    p_catalog.add_argument("--file", type=Path, help="catalog document (default: bundled)")
    p_catalog.add_argument("--skill", help="print only the entry with this skill id")

    p_generate = sub.add_parser(
        "generate", help="generate paired baseline/treated event files from a scenario"
    )
    p_generate.add_argument("--config", type=Path, required=True, help="scenario JSON file")
    p_generate.add_argument("--output-dir", type=Path, required=True)

    p_analyze = sub.add_parser("analyze", help="compute indicator series for an event file")
    p_analyze.add_argument("--events", type=Path, required=True)
    p_analyze.add_argument(
        "--mapping", type=Path, help="competency mapping file (default: all channels active)"
    )
    p_analyze.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="window length k")
    p_analyze.add_argument("--mode", choices=MODES, default=RAW)
    p_analyze.add_argument("--seed", type=int, help="provenance stamp for the metadata record")
    p_analyze.add_argument(
        "--pad-warmup",
        action="store_true",
        help="emit zero rows for the warm-up periods 1..k in plot data",
    )
    p_analyze.add_argument("--output-dir", type=Path, required=True)

    p_compare = sub.add_parser(
        "compare", help="compare two regimes (event files or indicator outputs)"
    )
    p_compare.add_argument("--basic", type=Path, required=True)
    p_compare.add_argument("--treated", type=Path, required=True)
    p_compare.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p_compare.add_argument("--mode", choices=MODES, default=RAW)
    p_compare.add_argument("--seed", type=int, help="provenance stamp for the metadata record")
    p_compare.add_argument("--pad-warmup", action="store_true")
    p_compare.add_argument("--output-dir", type=Path, required=True)

    p_verify = sub.add_parser(
        "verify-reference", help="audit the bundled reference table's arithmetic"
    )
    p_verify.add_argument("--file", type=Path, help="reference table (default: bundled)")

    return parser


def _cmd_catalog(args) -> int:
    catalog = load_catalog(args.file) if args.file else default_catalog()
    if args.skill:
        entry = catalog.lookup(args.skill)
        print(f"{entry.skill_id} {entry.skill_name} (level {entry.level} {entry.level_name})")
        print(f"  {entry.request_id} {entry.request_text}")
        return 0
    print(f"catalog OK: {len(catalog.entries)} entries")
    for entry in catalog.entries:
        print(f"{entry.skill_id}  level {entry.level} {entry.level_name:<8}  {entry.skill_name}")
    return 0


def _cmd_generate(args) -> int:
    config = parse_scenario(args.config)
    baseline, treated = paired_scenarios(config)
    args.output_dir.mkdir(parents=True, exist_ok=True)
    for name, model in (("events_baseline.csv", baseline), ("events_treated.csv", treated)):
        path = write_events(model, args.output_dir / name)
        print(f"wrote {path}")
    return 0


def _cmd_analyze(args) -> int:
    model = parse_events(args.events)
    if args.mapping:
        mapping = parse_mapping(args.mapping, model.channel_labels, catalog=default_catalog())
        report = check_budget(mapping)
        print(
            f"budget: {report.total_cost:g} of {report.budget:g} used "
            f"({len(report.active)} active competencies)"
        )
        series = apply_mapping(model, mapping)
        if series.masked_channels:
            masked = ", ".join(model.channel_labels[j] for j in series.masked_channels)
            print(f"masked channels: {masked}")
    else:
        series = MappedSeries.from_model(model)
    indicators = indicator_series(series, args.window, args.mode)
    analysis = AnalysisReport(
        k=args.window, mode=args.mode, seed=args.seed, indicators=indicators
    )
    for path in emit_report(analysis, args.output_dir, pad_warmup=args.pad_warmup):
        print(f"wrote {path}")
    print(f"total indicator: {indicators.total!r}")
    return 0


def _regime_column(path: Path, k: int, mode: str):
    with path.open(newline="", encoding="utf-8") as handle:
        header = next(csv.reader([handle.readline()]), [])
    if header and header[0].strip() == "t" and header[-1].strip() in ("total", "v_total"):
        return read_indicator_column(path)
    model = parse_events(path)
    indicators = indicator_series(MappedSeries.from_model(model), k, mode)
    return indicators.periods, indicators.per_period_totals()


def _cmd_compare(args) -> int:
    basic = _regime_column(args.basic, args.window, args.mode)
    treated = _regime_column(args.treated, args.window, args.mode)
    comparison = compare_regimes(basic, treated)
    analysis = AnalysisReport(
        k=args.window, mode=args.mode, seed=args.seed, comparison=comparison
    )
    for path in emit_report(analysis, args.output_dir, pad_warmup=args.pad_warmup):
        print(f"wrote {path}")
    print(
        f"totals: basic {comparison.basic_total!r}, treated {comparison.treated_total!r}, "
        f"delta {comparison.delta_total!r}"
    )
    return 0


def _cmd_verify_reference(args) -> int:
    table = read_reference(args.file) if args.file else load_reference()
    report = verify_reference(table)
    for check in report:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.check_id}: {check.detail}")
    return 0 if report.ok else 1


_COMMANDS = {
    "catalog": _cmd_catalog,
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "compare": _cmd_compare,
    "verify-reference": _cmd_verify_reference,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (RegimetricsError, OSError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
