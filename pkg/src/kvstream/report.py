"""Flow-flux analysis report: assembly and text/JSON/CSV rendering.

The report has one row per knowledge area (density, reciprocity,
tacit:explicit, flux, templated observations, RED/YELLOW/GREEN health) plus
sections for flux assessments, learning-cycle tallies and projections, gap
scenarios, maturity results, phase status and waste flags. Building it is a
pure function of (dataset, config); only the generation timestamp varies
between runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Sequence

from .config import DEFAULT_CONFIG, Config
from .errors import AnalysisError, NoDecisions, UnsupportedFormat
from .flow import FlowSummary, flow_summary
from .flux import (
    FluxAssessment,
    LccDistribution,
    ProjectionPoint,
    flux_assessment,
    lcc_distribution,
    project_decisions_1d,
)
from .maturity import MaturityResult, PhaseStatus, WasteFlag, cvss_assessment, phase_status, waste_diagnostics
from .model import Dataset
from .scenarios import GapKind, GapScenario, classify_gap_scenario

SCHEMA_NAME = "kvstream_report_v1"


class Health(str, Enum):
    RED = "RED"
    YELLOW = "YELLOW"
    GREEN = "GREEN"


@dataclass(frozen=True)
class FlowFluxRow:
    area: str
    density: float | None
    reciprocity_pct: float | None
    tacit_pct: float | None
    explicit_pct: float | None
    flux: float | None
    observations: tuple[str, ...]
    health: Health | None
    insufficient: str | None  # reason the row's metrics are incomplete


@dataclass(frozen=True)
class AreaProjection:
    area: str
    points: tuple[ProjectionPoint, ...]
    note: str  # non-empty when the projection was skipped


@dataclass(frozen=True)
class ReportBundle:
    generated_at: str
    rows: tuple[FlowFluxRow, ...]
    flux: tuple[FluxAssessment, ...]
    lcc: tuple[LccDistribution, ...]
    projections: tuple[AreaProjection, ...]
    gap_scenarios: tuple[GapScenario, ...]
    gap_tally: dict[GapKind, int]
    maturity: tuple[MaturityResult, ...]
    phase: PhaseStatus
    wastes: tuple[WasteFlag, ...]


def health_of(
    density: float,
    reciprocity_pct: float,
    tacit_pct: float,
    config: Config = DEFAULT_CONFIG,
) -> Health:
    """Health label for one area's (density, reciprocity %, tacit %).

    RED needs all three risk signs at once: sparse flow, little reciprocity
    and tacit-dominant knowledge (single-point-failure territory). GREEN
    needs dense and reciprocal flow. Everything else is YELLOW.
    """
    if (
        density < config.health_red_density
        and reciprocity_pct < config.health_red_reciprocity
        and tacit_pct > config.health_red_tacit
    ):
        return Health.RED
    if density >= config.health_green_density and reciprocity_pct >= config.health_green_reciprocity:
        return Health.GREEN
    return Health.YELLOW


def observations_for(summary: FlowSummary, config: Config = DEFAULT_CONFIG) -> tuple[str, ...]:
    """Templated key observations for one area's flow summary."""
    notes: list[str] = []
    if summary.cliques:
        notes.append("Presence of cliques - conditions ideal for initiating community of practice")
    if summary.cut_points:
        notes.append(
            "Single Point Failure Risk - actions needed to spread the knowledge of "
            + ", ".join(summary.cut_points)
            + " to others and make it more explicit"
        )
    else:
        notes.append("No single point failures")
    if summary.reciprocity_pct is not None and summary.reciprocity_pct < config.reciprocity_hi:
        notes.append("Encourage more reciprocity or mutual knowledge sharing within the team")
    if summary.tacit_pct is not None:
        if summary.tacit_pct > 50:
            notes.append(
                "Increase reliance on explicit body of knowledge (K-briefs/A3s) "
                "to raise the explicit knowledge percentage"
            )
        else:
            notes.append("Ensure awareness in the team of the explicit knowledge sources in use")
    return tuple(notes)


def build_flow_flux_report(dataset: Dataset, config: Config = DEFAULT_CONFIG) -> list[FlowFluxRow]:
    """One row per knowledge area, sorted by area id.

    Areas whose metrics are undefined (too few persons, no person ties) are
    kept in the report marked insufficient instead of failing the whole run.
    """
    rows = []
    for area in dataset.area_ids():
        graph = dataset.flow_graph(area)
        summary = flow_summary(graph, config)
        decisions = dataset.decisions_for(area)
        flux_value = len(graph.ties) / len(decisions) if decisions else None

        missing = []
        if summary.density is None:
            missing.append("density undefined (fewer than 2 persons)")
        if summary.reciprocity_pct is None:
            missing.append("reciprocity undefined (no person-to-person ties)")
        if summary.tacit_pct is None:
            missing.append("tacit/explicit undefined (no ties)")
        insufficient = "; ".join(missing) if missing else None

        health = None
        if insufficient is None:
            health = health_of(summary.density, summary.reciprocity_pct, summary.tacit_pct, config)
        rows.append(
            FlowFluxRow(
                area=area,
                density=summary.density,
                reciprocity_pct=summary.reciprocity_pct,
                tacit_pct=summary.tacit_pct,
                explicit_pct=summary.explicit_pct,
                flux=flux_value,
                observations=observations_for(summary, config) if insufficient is None else (),
                health=health,
                insufficient=insufficient,
            )
        )
    return rows


def build_report_bundle(
    dataset: Dataset,
    config: Config = DEFAULT_CONFIG,
    now: datetime | None = None,
) -> ReportBundle:
    """Assemble every report section from one dataset."""
    stamp = (now or datetime.now(timezone.utc)).isoformat(timespec="seconds")
    rows = build_flow_flux_report(dataset, config)

    flux_rows = []
    lcc_rows = []
    projections = []
    for area in dataset.area_ids():
        graph = dataset.flow_graph(area)
        decisions = dataset.decisions_for(area)
        try:
            flux_rows.append(flux_assessment(area, graph, decisions, config))
        except NoDecisions:
            pass
        lcc_rows.append(lcc_distribution(decisions, area))
        try:
            points = tuple(project_decisions_1d(decisions, dataset.codebook))
            projections.append(AreaProjection(area=area, points=points, note=""))
        except AnalysisError as exc:
            projections.append(AreaProjection(area=area, points=(), note=str(exc)))

    scenarios = tuple(classify_gap_scenario(g) for g in dataset.gaps)
    tally = {kind: 0 for kind in GapKind}
    for scenario in scenarios:
        tally[scenario.kind] += 1

    maturity = tuple(cvss_assessment(card, config) for card in dataset.scorecards if card.items)
    phase = phase_status(dataset, maturity, config)
    wastes = tuple(waste_diagnostics(dataset, config))

    return ReportBundle(
        generated_at=stamp,
        rows=tuple(rows),
        flux=tuple(flux_rows),
        lcc=tuple(lcc_rows),
        projections=tuple(projections),
        gap_scenarios=scenarios,
        gap_tally=tally,
        maturity=maturity,
        phase=phase,
        wastes=wastes,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

REPORT_HEADERS = (
    "KNOWLEDGE AREA",
    "DENSITY",
    "RECIPROCITY",
    "TACIT::EXPLICIT",
    "KNOWLEDGE FLUX",
    "KEY OBSERVATIONS FROM NETWORK GRAPH",
    "HEALTH ASSESSMENT",
)


def render_report(bundle: ReportBundle, fmt: str) -> bytes:
    """Render the bundle as 'text', 'json' or 'csv' bytes.

    JSON output is deterministic (sorted keys) apart from the generation
    timestamp. CSV output is the flow-flux table; use write_report for one
    file per section. Raises UnsupportedFormat for anything else.
    """
    if fmt == "json":
        return (json.dumps(bundle_to_dict(bundle), sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        return _flow_flux_csv(bundle.rows)
    if fmt == "text":
        return _render_text(bundle).encode("utf-8")
    raise UnsupportedFormat(fmt)


def write_report(bundle: ReportBundle, out: str, fmt: str) -> list[str]:
    """Write the report to disk; csv format writes one file per section."""
    from pathlib import Path

    if fmt in ("text", "json"):
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(render_report(bundle, fmt))
        return [str(path)]
    if fmt != "csv":
        raise UnsupportedFormat(fmt)
    root = Path(out)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for name, payload in csv_sections(bundle).items():
        path = root / name
        path.write_bytes(payload)
        written.append(str(path))
    return written


def bundle_to_dict(bundle: ReportBundle) -> dict:
    """JSON-ready dict for the versioned report schema."""
    return {
        "schema": SCHEMA_NAME,
        "generated_at": bundle.generated_at,
        "flow_flux": [
            {
                "area": r.area,
                "density": r.density,
                "reciprocity_pct": r.reciprocity_pct,
                "tacit_pct": r.tacit_pct,
                "explicit_pct": r.explicit_pct,
                "flux": r.flux,
                "observations": list(r.observations),
                "health": r.health.value if r.health else None,
                "insufficient": r.insufficient,
            }
            for r in bundle.rows
        ],
        "flux_assessments": [
            {
                "area": f.area,
                "tie_count": f.tie_count,
                "decision_count": f.decision_count,
                "flux": f.flux,
                "favorable_rate": f.favorable_rate,
                "verdict": f.verdict.value,
                "recommendation": f.recommendation,
            }
            for f in bundle.flux
        ],
        "lcc": [
            {
                "area": d.area,
                "counts": {
                    f"{c.value}/{u.value}": n for (c, u), n in sorted(d.counts.items())
                },
                "recorded_total": d.recorded_total,
                "unrecorded_total": d.unrecorded_total,
            }
            for d in bundle.lcc
        ],
        "projections": [
            {
                "area": p.area,
                "points": [
                    {
                        "decision": pt.decision,
                        "coordinate": pt.coordinate,
                        "consequence": pt.consequence.value,
                    }
                    for pt in p.points
                ],
                "note": p.note,
            }
            for p in bundle.projections
        ],
        "gap_scenarios": {
            "assessments": [
                {
                    "decision": s.decision,
                    "kind": s.kind.value,
                    "unknown_unknowns": s.unknown_unknowns,
                    "phantom_gaps": s.phantom_gaps,
                }
                for s in bundle.gap_scenarios
            ],
            "tally": {kind.value: n for kind, n in bundle.gap_tally.items()},
        },
        "maturity": [
            {
                "team": m.team,
                "timestamp": m.timestamp,
                "dimensions": {
                    d.value: {"score": s.score, "band": s.band.value}
                    for d, s in m.dimensions.items()
                },
                "not_assessed": [d.value for d in m.not_assessed()],
                "overall": m.overall,
            }
            for m in bundle.maturity
        ],
        "phase": {
            "current": bundle.phase.current,
            "rules": [
                {
                    "id": r.id,
                    "exits_phase": r.exits_phase,
                    "satisfied": r.satisfied,
                    "evidence": r.evidence,
                }
                for r in bundle.phase.rules
            ],
        },
        "wastes": [
            {"id": w.id, "triggered": w.triggered, "evidence": w.evidence} for w in bundle.wastes
        ],
    }


def _fmt(value: float | None, pattern: str, suffix: str = "") -> str:
    return (pattern % value) + suffix if value is not None else "-"


def _row_cells(row: FlowFluxRow) -> list[str]:
    split = "-"
    if row.tacit_pct is not None:
        split = f"{row.tacit_pct:.0f}%:{row.explicit_pct:.0f}%"
    health = row.health.value if row.health else "insufficient data"
    return [
        row.area,
        _fmt(row.density, "%.2f"),
        _fmt(row.reciprocity_pct, "%.1f", "%"),
        split,
        _fmt(row.flux, "%.2f"),
        "; ".join(row.observations) if row.observations else (row.insufficient or ""),
        health,
    ]


def _render_text(bundle: ReportBundle) -> str:
    lines = [f"Knowledge flow - flux analysis report (generated {bundle.generated_at})", ""]
    table = [list(REPORT_HEADERS)] + [_row_cells(r) for r in bundle.rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(REPORT_HEADERS))]
    for i, row in enumerate(table):
        lines.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))

    lines.append("")
    lines.append("Flux assessments:")
    for f in bundle.flux:
        rate = f"{f.favorable_rate:.0%} favorable" if f.favorable_rate is not None else "no outcomes"
        lines.append(
            f"  {f.area}: flux {f.flux:.2f} ({f.tie_count} ties / {f.decision_count} decisions), "
            f"{rate} -> {f.verdict.value}"
        )
        lines.append(f"    {f.recommendation}")

    lines.append("")
    lines.append("Gap scenarios: " + ", ".join(f"{k.value}={n}" for k, n in bundle.gap_tally.items()))

    if bundle.maturity:
        lines.append("")
        lines.append("Maturity assessments:")
        for m in bundle.maturity:
            dims = ", ".join(
                f"{d.value} {s.score:.0f}% {s.band.value}" for d, s in m.dimensions.items()
            )
            lines.append(f"  {m.team} @ {m.timestamp}: {dims}; overall {m.overall:.1f}%")

    lines.append("")
    lines.append(f"Deployment phase: {bundle.phase.current}")
    for rule in bundle.phase.rules:
        mark = "satisfied" if rule.satisfied else "pending"
        lines.append(f"  [{mark}] phase {rule.exits_phase} exit {rule.id}: {rule.evidence}")

    lines.append("")
    lines.append("Waste diagnostics:")
    for waste in bundle.wastes:
        mark = "TRIGGERED" if waste.triggered else "clear"
        lines.append(f"  [{mark}] {waste.id}: {waste.evidence}")
    lines.append("")
    return "\n".join(lines)


def _csv_bytes(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buffer.getvalue().encode("utf-8")


def _flow_flux_csv(rows: Sequence[FlowFluxRow]) -> bytes:
    return _csv_bytes(
        ("area", "density", "reciprocity_pct", "tacit_pct", "explicit_pct", "flux", "observations", "health"),
        [
            (
                r.area,
                r.density if r.density is not None else "",
                r.reciprocity_pct if r.reciprocity_pct is not None else "",
                r.tacit_pct if r.tacit_pct is not None else "",
                r.explicit_pct if r.explicit_pct is not None else "",
                r.flux if r.flux is not None else "",
                "; ".join(r.observations) if r.observations else (r.insufficient or ""),
                r.health.value if r.health else "insufficient data",
            )
            for r in rows
        ],
    )


def csv_sections(bundle: ReportBundle) -> dict[str, bytes]:
    """One CSV payload per report section, keyed by file name."""
    sections = {"flow_flux.csv": _flow_flux_csv(bundle.rows)}
    sections["flux_assessments.csv"] = _csv_bytes(
        ("area", "tie_count", "decision_count", "flux", "favorable_rate", "verdict", "recommendation"),
        [
            (
                f.area,
                f.tie_count,
                f.decision_count,
                f.flux,
                f.favorable_rate if f.favorable_rate is not None else "",
                f.verdict.value,
                f.recommendation,
            )
            for f in bundle.flux
        ],
    )
    sections["lcc_distribution.csv"] = _csv_bytes(
        ("area", "consequence", "duration", "count"),
        [
            (d.area, c.value, u.value, n)
            for d in bundle.lcc
            for (c, u), n in sorted(d.counts.items())
        ],
    )
    sections["lcc_projection.csv"] = _csv_bytes(
        ("area", "decision", "coordinate", "consequence"),
        [
            (p.area, pt.decision, pt.coordinate, pt.consequence.value)
            for p in bundle.projections
            for pt in p.points
        ],
    )
    sections["gap_scenarios.csv"] = _csv_bytes(
        ("decision", "kind", "unknown_unknowns", "phantom_gaps"),
        [
            (s.decision, s.kind.value, s.unknown_unknowns, s.phantom_gaps)
            for s in bundle.gap_scenarios
        ],
    )
    sections["maturity.csv"] = _csv_bytes(
        ("team", "timestamp", "dimension", "score", "band"),
        [
            (m.team, m.timestamp, d.value, s.score, s.band.value)
            for m in bundle.maturity
            for d, s in m.dimensions.items()
        ],
    )
    sections["phase_rules.csv"] = _csv_bytes(
        ("rule", "exits_phase", "satisfied", "evidence"),
        [(r.id, r.exits_phase, r.satisfied, r.evidence) for r in bundle.phase.rules],
    )
    sections["waste_flags.csv"] = _csv_bytes(
        ("rule", "triggered", "evidence"),
        [(w.id, w.triggered, w.evidence) for w in bundle.wastes],
    )
    return sections


# JSON schema for the versioned report payload (draft-07).
_NULLABLE_NUMBER = {"type": ["number", "null"]}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "schema",
        "generated_at",
        "flow_flux",
        "flux_assessments",
        "lcc",
        "projections",
        "gap_scenarios",
        "maturity",
        "phase",
        "wastes",
    ],
    "properties": {
        "schema": {"const": SCHEMA_NAME},
        "generated_at": {"type": "string"},
        "flow_flux": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["area", "density", "reciprocity_pct", "tacit_pct", "flux", "observations", "health"],
                "properties": {
                    "area": {"type": "string"},
                    "density": _NULLABLE_NUMBER,
                    "reciprocity_pct": _NULLABLE_NUMBER,
                    "tacit_pct": _NULLABLE_NUMBER,
                    "explicit_pct": _NULLABLE_NUMBER,
                    "flux": _NULLABLE_NUMBER,
                    "observations": {"type": "array", "items": {"type": "string"}},
                    "health": {"enum": ["RED", "YELLOW", "GREEN", None]},
                    "insufficient": {"type": ["string", "null"]},
                },
            },
        },
        "flux_assessments": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["area", "tie_count", "decision_count", "flux", "verdict"],
                "properties": {
                    "area": {"type": "string"},
                    "tie_count": {"type": "integer", "minimum": 0},
                    "decision_count": {"type": "integer", "minimum": 1},
                    "flux": {"type": "number", "minimum": 0},
                    "favorable_rate": _NULLABLE_NUMBER,
                    "verdict": {"enum": ["Optimal", "EnhanceFlux", "InsufficientData"]},
                    "recommendation": {"type": "string"},
                },
            },
        },
        "lcc": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["area", "counts", "recorded_total", "unrecorded_total"],
                "properties": {
                    "area": {"type": "string"},
                    "counts": {"type": "object", "additionalProperties": {"type": "integer"}},
                    "recorded_total": {"type": "integer", "minimum": 0},
                    "unrecorded_total": {"type": "integer", "minimum": 0},
                },
            },
        },
        "projections": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["area", "points", "note"],
                "properties": {
                    "area": {"type": "string"},
                    "points": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["decision", "coordinate", "consequence"],
                            "properties": {
                                "decision": {"type": "string"},
                                "coordinate": {"type": "number"},
                                "consequence": {"enum": ["LC1", "LC2", "LC3", "LC4"]},
                            },
                        },
                    },
                    "note": {"type": "string"},
                },
            },
        },
        "gap_scenarios": {
            "type": "object",
            "required": ["assessments", "tally"],
            "properties": {
                "assessments": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["decision", "kind", "unknown_unknowns", "phantom_gaps"],
                        "properties": {
                            "decision": {"type": "string"},
                            "kind": {"enum": ["Efficient", "IllusoryProgress", "ExcessWaste", "Mixed"]},
                            "unknown_unknowns": {"type": "integer", "minimum": 0},
                            "phantom_gaps": {"type": "integer", "minimum": 0},
                        },
                    },
                },
                "tally": {"type": "object", "additionalProperties": {"type": "integer"}},
            },
        },
        "maturity": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["team", "timestamp", "dimensions", "overall"],
                "properties": {
                    "team": {"type": "string"},
                    "timestamp": {"type": "string"},
                    "dimensions": {
                        "type": "object",
                        "additionalProperties": {
                            "type": "object",
                            "required": ["score", "band"],
                            "properties": {
                                "score": {"type": "number", "minimum": 0, "maximum": 100},
                                "band": {"enum": ["Weak", "Marginal", "Effective", "Robust"]},
                            },
                        },
                    },
                    "not_assessed": {"type": "array", "items": {"type": "string"}},
                    "overall": {"type": "number", "minimum": 0, "maximum": 100},
                },
            },
        },
        "phase": {
            "type": "object",
            "required": ["current", "rules"],
            "properties": {
                "current": {"type": "integer", "minimum": 1, "maximum": 5},
                "rules": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["id", "exits_phase", "satisfied", "evidence"],
                        "properties": {
                            "id": {"type": "string"},
                            "exits_phase": {"type": "integer", "minimum": 1, "maximum": 4},
                            "satisfied": {"type": "boolean"},
                            "evidence": {"type": "string"},
                        },
                    },
                },
            },
        },
        "wastes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "triggered", "evidence"],
                "properties": {
                    "id": {"type": "string"},
                    "triggered": {"type": "boolean"},
                    "evidence": {"type": "string"},
                },
            },
        },
    },
}
