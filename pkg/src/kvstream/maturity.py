"""Scorecard scoring, deployment phases and waste diagnostics.

Survey items rate Create/Validate/Store/Share/Use practices on a four-level
agreement scale. The per-dimension score normalizes the summed ratings so n
all-SD items land at 0% and n all-SA items at 100%, then maps onto the
Weak/Marginal/Effective/Robust bands. The phase ladder and the waste rules
are small configurable rule tables over the whole dataset.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Mapping, Sequence

from .config import DEFAULT_CONFIG, Config
from .errors import AnalysisError, EmptyDimension, NoDecisions, NoRecordedOutcomes, OutOfRange
from .flow import cut_points, density, reciprocity, tacit_explicit_split
from .flux import FluxVerdict, flux_assessment, uncertainty_from_lcc
from .model import Dataset, Dimension, Rating, Scorecard
from .scenarios import GapKind, classify_gap_scenario

RATING_VALUES: Mapping[Rating, int] = {
    Rating.SA: 9,
    Rating.A: 7,
    Rating.D: 3,
    Rating.SD: 1,
}


class Band(str, Enum):
    WEAK = "Weak"
    MARGINAL = "Marginal"
    EFFECTIVE = "Effective"
    ROBUST = "Robust"


@dataclass(frozen=True)
class DimensionScore:
    score: float  # percent
    band: Band


@dataclass(frozen=True)
class MaturityResult:
    team: str
    timestamp: str
    dimensions: Mapping[Dimension, DimensionScore]  # assessed dimensions only
    overall: float

    def not_assessed(self) -> tuple[Dimension, ...]:
        return tuple(d for d in Dimension if d not in self.dimensions)


@dataclass(frozen=True)
class PhaseRule:
    id: str
    exits_phase: int
    satisfied: bool
    evidence: str


@dataclass(frozen=True)
class PhaseStatus:
    current: int  # 1..5
    rules: tuple[PhaseRule, ...]


@dataclass(frozen=True)
class WasteFlag:
    id: str
    triggered: bool
    evidence: str


def _parse_timestamp(value: str) -> datetime:
    # mixed naive/aware timestamps must still be orderable
    stamp = datetime.fromisoformat(value.replace("Z", "+00:00"))
    return stamp if stamp.tzinfo else stamp.replace(tzinfo=timezone.utc)


def dimension_score(ratings: Sequence[Rating]) -> float:
    """Percentage score for one dimension's rated items.

    With values SA=9, A=7, D=3, SD=1 and n items the score is
    100 * (sum - n) / (8n): all-SD gives exactly 0, all-SA exactly 100.
    Raises EmptyDimension for an empty rating list.
    """
    if not ratings:
        raise EmptyDimension("a dimension needs at least one rated item")
    n = len(ratings)
    total = sum(RATING_VALUES[r] for r in ratings)
    return 100.0 * (total - n) / (8 * n)


def band_of(score: float, config: Config = DEFAULT_CONFIG) -> Band:
    """Map a 0-100 score onto its maturity band.

    Weak below 25, Marginal from 25 through 50, Effective above 50 through
    80, Robust above 80. Raises OutOfRange outside [0, 100].
    """
    if score < 0 or score > 100:
        raise OutOfRange(f"score {score} is outside [0, 100]")
    if score < config.band_weak_below:
        return Band.WEAK
    if score <= config.band_marginal_max:
        return Band.MARGINAL
    if score <= config.band_effective_max:
        return Band.EFFECTIVE
    return Band.ROBUST


def cvss_assessment(scorecard: Scorecard, config: Config = DEFAULT_CONFIG) -> MaturityResult:
    """Score every assessed dimension of one scorecard.

    Dimensions with no items are reported as not assessed; the overall score
    is the unweighted mean of the assessed dimensions. A scorecard without
    any items raises EmptyDimension (there is nothing to score).
    """
    scored: dict[Dimension, DimensionScore] = {}
    for dim in Dimension:
        ratings = scorecard.ratings_for(dim)
        if not ratings:
            continue
        score = dimension_score(ratings)
        scored[dim] = DimensionScore(score=score, band=band_of(score, config))
    if not scored:
        raise EmptyDimension(f"scorecard for team {scorecard.team!r} has no rated items")
    overall = sum(d.score for d in scored.values()) / len(scored)
    return MaturityResult(
        team=scorecard.team,
        timestamp=scorecard.timestamp,
        dimensions=scored,
        overall=overall,
    )


def phase_status(
    dataset: Dataset,
    history: Sequence[MaturityResult],
    config: Config = DEFAULT_CONFIG,
) -> PhaseStatus:
    """Where the organization stands on the five-phase deployment ladder.

    Each phase has exit rules; the current phase is the first one whose
    exits are not all satisfied (phase 5, sustenance, when everything is).
    history is the sequence of maturity assessments taken so far, typically
    one cvss_assessment per scorecard in the dataset.
    """
    rules: list[PhaseRule] = []

    has_data = bool(dataset.actors)
    rules.append(
        PhaseRule(
            id="data-collected",
            exits_phase=1,
            satisfied=has_data,
            evidence=(
                f"{len(dataset.actors)} actors, {len(dataset.ties)} ties, "
                f"{len(dataset.decisions)} decisions on file"
            ),
        )
    )

    rules.append(
        PhaseRule(
            id="baseline-maturity-assessed",
            exits_phase=2,
            satisfied=bool(history),
            evidence=f"{len(history)} maturity assessment(s) recorded",
        )
    )
    area_ids = dataset.area_ids()
    uncomputable = []
    for area in area_ids:
        graph = dataset.flow_graph(area)
        try:
            density(graph)
            reciprocity(graph)
        except AnalysisError:
            uncomputable.append(area)
    rules.append(
        PhaseRule(
            id="flow-metrics-computable",
            exits_phase=2,
            satisfied=bool(area_ids) and not uncomputable,
            evidence=(
                f"flow metrics undefined for: {', '.join(uncomputable)}"
                if uncomputable
                else f"density and reciprocity defined for all {len(area_ids)} area(s)"
            ),
        )
    )

    latest = max(history, key=lambda r: _parse_timestamp(r.timestamp), default=None)
    if latest is None:
        dims_ok = False
        dims_evidence = "no maturity assessment to check"
    else:
        below = [
            d.value
            for d, s in latest.dimensions.items()
            if s.band in (Band.WEAK, Band.MARGINAL)
        ]
        dims_ok = not below
        dims_evidence = (
            f"dimensions below Effective: {', '.join(below)}"
            if below
            else f"all assessed dimensions at Effective or better for team {latest.team!r}"
        )
    rules.append(
        PhaseRule(id="dimensions-at-effective", exits_phase=3, satisfied=dims_ok, evidence=dims_evidence)
    )

    optimal = 0
    for area in area_ids:
        try:
            assessment = flux_assessment(
                area, dataset.flow_graph(area), dataset.decisions_for(area), config
            )
        except NoDecisions:
            continue
        if assessment.verdict is FluxVerdict.OPTIMAL:
            optimal += 1
    optimal_share = optimal / len(area_ids) if area_ids else 0.0
    rules.append(
        PhaseRule(
            id="flux-optimal-share",
            exits_phase=4,
            satisfied=bool(area_ids) and optimal_share >= config.phase_optimal_share,
            evidence=f"{optimal} of {len(area_ids)} area(s) at optimal flux",
        )
    )

    efficient = sum(
        1 for g in dataset.gaps if classify_gap_scenario(g).kind is GapKind.EFFICIENT
    )
    efficient_share = efficient / len(dataset.gaps) if dataset.gaps else 0.0
    rules.append(
        PhaseRule(
            id="gap-efficient-share",
            exits_phase=4,
            satisfied=bool(dataset.gaps) and efficient_share >= config.phase_efficient_share,
            evidence=f"{efficient} of {len(dataset.gaps)} gap assessment(s) efficient",
        )
    )

    current = 5
    for phase in (1, 2, 3, 4):
        if not all(r.satisfied for r in rules if r.exits_phase == phase):
            current = phase
            break
    return PhaseStatus(current=current, rules=tuple(rules))


def waste_diagnostics(dataset: Dataset, config: Config = DEFAULT_CONFIG) -> list[WasteFlag]:
    """Evaluate every waste rule against the dataset.

    Every rule comes back with its triggered flag and evidence, so reports
    show what was checked, not just what fired.
    """
    graphs = {area: dataset.flow_graph(area) for area in dataset.area_ids()}

    creation_hits = []
    for area, graph in sorted(graphs.items()):
        if not graph.ties:
            continue
        tacit_pct, _ = tacit_explicit_split(graph)
        points = cut_points(graph)
        if tacit_pct > config.waste_creation_tacit and points:
            creation_hits.append(f"{area} (tacit {tacit_pct:.0f}%, cut points: {', '.join(sorted(points))})")

    unrecorded = sum(1 for d in dataset.decisions if d.lcc is None)
    total = len(dataset.decisions)
    unrecorded_share = unrecorded / total if total else 0.0
    validation_hit = total > 0 and unrecorded_share > config.waste_validation_unrecorded

    sharing_hits = []
    for area, graph in sorted(graphs.items()):
        try:
            r = reciprocity(graph)
        except AnalysisError:
            continue
        if r < config.waste_sharing_reciprocity:
            sharing_hits.append(f"{area} (reciprocity {r:.0f}%)")

    wishful_hits = sorted(
        g.decision for g in dataset.gaps if g.actual and not g.perceived
    )

    learning_hits = []
    for area in sorted(graphs):
        try:
            score = uncertainty_from_lcc(dataset.decisions_for(area), config)
        except NoRecordedOutcomes:
            continue
        if score > config.waste_learning_uncertainty:
            learning_hits.append(f"{area} (uncertainty {score:.2f})")

    return [
        WasteFlag(
            id="creation-loss",
            triggered=bool(creation_hits),
            evidence=(
                "; ".join(creation_hits)
                if creation_hits
                else "no area combines tacit-heavy flow with cut points"
            ),
        ),
        WasteFlag(
            id="validation-feedback",
            triggered=validation_hit,
            evidence=f"{unrecorded} of {total} decision(s) lack a recorded learning cycle",
        ),
        WasteFlag(
            id="sharing-hoarding",
            triggered=bool(sharing_hits),
            evidence=(
                "; ".join(sharing_hits) if sharing_hits else "no area below the reciprocity floor"
            ),
        ),
        WasteFlag(
            id="wishful-thinking",
            triggered=bool(wishful_hits),
            evidence=(
                f"decisions with unperceived real gaps: {', '.join(wishful_hits)}"
                if wishful_hits
                else "every decision with real gaps perceived at least one"
            ),
        ),
        WasteFlag(
            id="learning-cycle",
            triggered=bool(learning_hits),
            evidence=(
                "; ".join(learning_hits)
                if learning_hits
                else "no area above the learning-cycle uncertainty ceiling"
            ),
        ),
    ]
