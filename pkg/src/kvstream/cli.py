"""Command line interface.

Subcommands: validate, flow, flux, lcc, gaps, cvss, phase, report, plot.
Exit codes: 0 success, 1 validation violations found, 2 I/O or parse error
(including usage errors), 3 analysis precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import Config, load_config
from .dataset import load_dataset, validate_dataset
from .errors import AnalysisError, DataError, NoDecisions, NoRecordedOutcomes, UnsupportedFormat
from .flow import flow_summary
from .flux import flux_assessment, lcc_distribution, project_decisions_1d, uncertainty_from_lcc
from .maturity import cvss_assessment, phase_status
from .model import Dataset
from .report import build_report_bundle, render_report, write_report
from .scenarios import classify_gap_scenario

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_DATA = 2
EXIT_ANALYSIS = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", required=True, help="dataset directory")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--area", action="append", default=None,
                        help="restrict to this knowledge area (repeatable)")
    common.add_argument("--config", default=None, help="JSON threshold overrides")
    common.add_argument("--out", default=None, help="output file or directory")

    parser = argparse.ArgumentParser(prog="kvstream",
                                     description="Knowledge value stream analytics")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check dataset rules")
    sub.add_parser("flow", parents=[common], help="per-area flow measures")
    sub.add_parser("flux", parents=[common], help="per-area knowledge flux")
    sub.add_parser("lcc", parents=[common], help="learning cycle consequences")
    sub.add_parser("gaps", parents=[common], help="gap scenario classification")
    sub.add_parser("cvss", parents=[common], help="maturity scorecard results")
    sub.add_parser("phase", parents=[common], help="deployment phase status")
    sub.add_parser("report", parents=[common], help="full flow-flux report")
    sub.add_parser("plot", parents=[common], help="emit SVG charts")
    return parser


def run_command(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 0 for --help, 2 for usage errors
        code = exc.code if isinstance(exc.code, int) else EXIT_DATA
        return EXIT_OK if code == 0 else EXIT_DATA

    try:
        config = load_config(args.config)
        dataset = load_dataset(args.data)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    violations = validate_dataset(dataset)
    if args.command == "validate":
        for violation in violations:
            print(violation)
        if violations:
            return EXIT_VIOLATIONS
        print("dataset OK")
        return EXIT_OK
    if violations:
        for violation in violations:
            print(f"invalid dataset: {violation}", file=sys.stderr)
        return EXIT_VIOLATIONS

    try:
        selected = _select_areas(dataset, args.area)
        return _dispatch(args, dataset, selected, config)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def _select_areas(dataset: Dataset, requested: list[str] | None) -> list[str]:
    known = dataset.area_ids()
    if not requested:
        return known
    unknown = [a for a in requested if a not in known]
    if unknown:
        raise AnalysisError(f"unknown knowledge area(s): {', '.join(unknown)}")
    return [a for a in known if a in requested]


def _dispatch(args, dataset: Dataset, areas: list[str], config: Config) -> int:
    if args.command == "flow":
        rows = []
        for area in areas:
            summary = flow_summary(dataset.flow_graph(area), config)
            rows.append({
                "area": area,
                "density": summary.density,
                "reciprocity_pct": summary.reciprocity_pct,
                "tacit_pct": summary.tacit_pct,
                "explicit_pct": summary.explicit_pct,
                "cut_points": list(summary.cut_points),
                "cliques": [list(c) for c in summary.cliques],
                "most_approached": [
                    {"actor": r.actor, "in_degree": r.in_degree, "weighted_in_degree": r.weighted_in_degree}
                    for r in summary.most_approached
                ],
                "quadrant": summary.quadrant.value,
            })
        return _emit(rows, args, key_order=("area", "density", "reciprocity_pct", "quadrant"))

    if args.command == "flux":
        rows = []
        for area in areas:
            try:
                a = flux_assessment(area, dataset.flow_graph(area), dataset.decisions_for(area), config)
            except NoDecisions:
                rows.append({"area": area, "flux": None, "verdict": "InsufficientData",
                             "tie_count": len(dataset.flow_graph(area).ties), "decision_count": 0,
                             "favorable_rate": None,
                             "recommendation": "no decisions recorded for this area"})
                continue
            rows.append({
                "area": a.area, "tie_count": a.tie_count, "decision_count": a.decision_count,
                "flux": a.flux, "favorable_rate": a.favorable_rate,
                "verdict": a.verdict.value, "recommendation": a.recommendation,
            })
        return _emit(rows, args, key_order=("area", "flux", "verdict"))

    if args.command == "lcc":
        rows = []
        for area in areas:
            decisions = dataset.decisions_for(area)
            dist = lcc_distribution(decisions, area)
            entry = {
                "area": area,
                "counts": {f"{c.value}/{u.value}": n for (c, u), n in sorted(dist.counts.items())},
                "recorded_total": dist.recorded_total,
                "unrecorded_total": dist.unrecorded_total,
            }
            try:
                entry["uncertainty_score"] = uncertainty_from_lcc(decisions, config)
            except NoRecordedOutcomes:
                entry["uncertainty_score"] = None
            try:
                entry["projection"] = [
                    {"decision": p.decision, "coordinate": p.coordinate, "consequence": p.consequence.value}
                    for p in project_decisions_1d(decisions, dataset.codebook)
                ]
            except AnalysisError as exc:
                entry["projection"] = []
                entry["projection_note"] = str(exc)
            rows.append(entry)
        return _emit(rows, args, key_order=("area", "recorded_total", "unrecorded_total"))

    if args.command == "gaps":
        rows = []
        for gap in dataset.gaps:
            scenario = classify_gap_scenario(gap)
            rows.append({
                "decision": scenario.decision,
                "kind": scenario.kind.value,
                "unknown_unknowns": scenario.unknown_unknowns,
                "phantom_gaps": scenario.phantom_gaps,
            })
        return _emit(rows, args, key_order=("decision", "kind"))

    if args.command == "cvss":
        rows = []
        for card in dataset.scorecards:
            result = cvss_assessment(card, config)
            rows.append({
                "team": result.team,
                "timestamp": result.timestamp,
                "dimensions": {d.value: {"score": s.score, "band": s.band.value}
                               for d, s in result.dimensions.items()},
                "not_assessed": [d.value for d in result.not_assessed()],
                "overall": result.overall,
            })
        return _emit(rows, args, key_order=("team", "timestamp", "overall"))

    if args.command == "phase":
        history = [cvss_assessment(card, config) for card in dataset.scorecards if card.items]
        status = phase_status(dataset, history, config)
        payload = {
            "current": status.current,
            "rules": [
                {"id": r.id, "exits_phase": r.exits_phase, "satisfied": r.satisfied, "evidence": r.evidence}
                for r in status.rules
            ],
        }
        return _emit(payload, args, key_order=("current",))

    if args.command == "report":
        bundle = build_report_bundle(dataset, config)
        if args.area:
            bundle = _filter_bundle(bundle, set(areas))
        if args.out:
            written = write_report(bundle, args.out, args.format)
            if args.format == "csv":
                # figures are rendered next to the per-section CSV files
                from .plots import emit_svg_plots

                written += [str(p) for p in emit_svg_plots(bundle, args.out, config)]
            for path in written:
                print(path)
            return EXIT_OK
        sys.stdout.write(render_report(bundle, args.format).decode("utf-8"))
        return EXIT_OK

    if args.command == "plot":
        from .plots import emit_svg_plots  # defer the matplotlib import

        bundle = build_report_bundle(dataset, config)
        if args.area:
            bundle = _filter_bundle(bundle, set(areas))
        for path in emit_svg_plots(bundle, args.out or ".", config):
            print(path)
        return EXIT_OK

    raise UnsupportedFormat(args.command)


def _filter_bundle(bundle, areas: set[str]):
    return replace(
        bundle,
        rows=tuple(r for r in bundle.rows if r.area in areas),
        flux=tuple(f for f in bundle.flux if f.area in areas),
        lcc=tuple(d for d in bundle.lcc if d.area in areas),
        projections=tuple(p for p in bundle.projections if p.area in areas),
    )


def _emit(payload, args, key_order: tuple[str, ...] = ()) -> int:
    """Print rows (or one object) as text, json or csv; write --out if given."""
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(payload)
    else:
        text = _plain_text(payload, key_order)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
        print(args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _csv_text(payload) -> str:
    import csv as _csv
    import io

    rows = payload if isinstance(payload, list) else [payload]
    if not rows:
        return ""
    headers = list(rows[0])
    for row in rows[1:]:  # keys that only some rows carry still get a column
        headers.extend(k for k in row if k not in headers)
    buffer = io.StringIO()
    writer = _csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_cell(row.get(h)) for h in headers])
    return buffer.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _plain_text(payload, key_order: tuple[str, ...]) -> str:
    rows = payload if isinstance(payload, list) else [payload]
    lines = []
    for row in rows:
        ordered = [k for k in key_order if k in row] + [k for k in row if k not in key_order]
        lines.append("  ".join(f"{k}={_cell(row[k])}" for k in ordered))
    return "\n".join(lines) + ("\n" if lines else "")


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
