"""Knowledge flux, learning-cycle statistics and decision projection.

Knowledge flux is the ratio of an area's knowledge ties to the decisions
made in that area: the extent to which flow actually impels decisions.
Whether a flux level is optimal is judged by the learning cycle
consequences those decisions encountered, not by the ratio alone.

For visual analysis, codified decisions are encoded as numeric vectors
(through the dataset codebook for categorical attributes), standardized,
and projected on the first principal component of their covariance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .errors import (
    DegenerateData,
    HeterogeneousAttributes,
    MissingCodebookEntry,
    NoDecisions,
    NoRecordedOutcomes,
)
from .model import AttributeValue, Consequence, DecisionRecord, Duration, FlowGraph


class FluxVerdict(str, Enum):
    OPTIMAL = "Optimal"
    ENHANCE_FLUX = "EnhanceFlux"
    INSUFFICIENT_DATA = "InsufficientData"


_RECOMMENDATIONS = {
    FluxVerdict.OPTIMAL: (
        "Knowledge flux level can be considered optimal; maintain the current ties."
    ),
    FluxVerdict.ENHANCE_FLUX: (
        "Enhance knowledge flux: increase knowledge ties and bring additional "
        "knowledge actors (experts, explicit knowledge sources) into the "
        "decision-making network."
    ),
    FluxVerdict.INSUFFICIENT_DATA: (
        "No learning cycle consequences recorded yet; capture decision outcomes "
        "before judging the flux level."
    ),
}


@dataclass(frozen=True)
class FluxAssessment:
    area: str
    tie_count: int
    decision_count: int
    flux: float
    favorable_rate: float | None
    verdict: FluxVerdict
    recommendation: str


@dataclass(frozen=True)
class LccDistribution:
    """Tally of (consequence, duration) cells for one area's decisions."""

    area: str
    counts: Mapping[tuple[Consequence, Duration], int]
    recorded_total: int
    unrecorded_total: int


@dataclass(frozen=True)
class ProjectionPoint:
    decision: str
    coordinate: float
    consequence: Consequence


@dataclass(frozen=True)
class EncodedDecisions:
    matrix: np.ndarray  # rows x dims, standardized
    row_ids: tuple[str, ...]
    dims: tuple[str, ...]


def knowledge_flux(tie_count: int, decision_count: int) -> float:
    """Ties per decision for one knowledge area.

    25 ties impelling 100 decisions gives 0.25. Raises NoDecisions when
    decision_count is zero.
    """
    if decision_count <= 0:
        raise NoDecisions("knowledge flux is undefined without decisions")
    return tie_count / decision_count


def favorable_lcc_rate(decisions: Sequence[DecisionRecord]) -> float:
    """Share of recorded outcomes that were favorable (LC1 or LC2).

    Decisions without a recorded consequence are excluded from both sides
    of the ratio. Raises NoRecordedOutcomes when nothing is recorded.
    """
    recorded = [d for d in decisions if d.lcc is not None]
    if not recorded:
        raise NoRecordedOutcomes("no decision has a recorded learning cycle consequence")
    favorable = sum(1 for d in recorded if d.lcc.favorable)
    return favorable / len(recorded)


def flux_assessment(
    area: str,
    graph: FlowGraph,
    decisions: Sequence[DecisionRecord],
    config: Config = DEFAULT_CONFIG,
) -> FluxAssessment:
    """Judge whether an area's flux is optimal for the outcomes it produced.

    Flux is optimal when decisions predominantly met favorable consequences
    (rate at or above the configured threshold, default 0.70); otherwise
    actions to enhance flux are recommended. With decisions but no recorded
    outcomes the verdict is InsufficientData. Raises NoDecisions when the
    area has no decisions at all.
    """
    tie_count = len(graph.ties)
    flux = knowledge_flux(tie_count, len(decisions))
    try:
        rate: float | None = favorable_lcc_rate(decisions)
    except NoRecordedOutcomes:
        rate = None
    if rate is None:
        verdict = FluxVerdict.INSUFFICIENT_DATA
    elif rate >= config.favorable_threshold:
        verdict = FluxVerdict.OPTIMAL
    else:
        verdict = FluxVerdict.ENHANCE_FLUX
    return FluxAssessment(
        area=area,
        tie_count=tie_count,
        decision_count=len(decisions),
        flux=flux,
        favorable_rate=rate,
        verdict=verdict,
        recommendation=_RECOMMENDATIONS[verdict],
    )


def lcc_distribution(decisions: Sequence[DecisionRecord], area: str = "") -> LccDistribution:
    """Exact counts per (consequence, duration) cell, unrecorded kept apart."""
    counts: dict[tuple[Consequence, Duration], int] = {}
    unrecorded = 0
    for record in decisions:
        if record.lcc is None:
            unrecorded += 1
            continue
        key = (record.lcc.consequence, record.lcc.duration)
        counts[key] = counts.get(key, 0) + 1
    return LccDistribution(
        area=area,
        counts=counts,
        recorded_total=sum(counts.values()),
        unrecorded_total=unrecorded,
    )


def encode_decision_matrix(
    decisions: Sequence[DecisionRecord],
    codebook: Mapping[str, Mapping[str, AttributeValue]],
) -> EncodedDecisions:
    """Turn decision attributes into a standardized numeric matrix.

    All decisions must share one attribute-name set (HeterogeneousAttributes
    otherwise). Numeric values pass through; categorical strings are
    replaced by their codebook ordinal (MissingCodebookEntry when absent).
    Columns are standardized to mean 0 and sample standard deviation 1;
    zero-variance columns cannot be standardized and are dropped with a
    warning naming them.
    """
    if not decisions:
        raise HeterogeneousAttributes("no decisions to encode")
    dims = sorted(decisions[0].attributes)
    for record in decisions:
        if sorted(record.attributes) != dims:
            raise HeterogeneousAttributes(
                f"decision {record.id!r} attributes {sorted(record.attributes)} "
                f"differ from {dims}"
            )

    raw = np.empty((len(decisions), len(dims)), dtype=float)
    for i, record in enumerate(decisions):
        for j, name in enumerate(dims):
            value = record.attributes[name]
            if isinstance(value, str):
                mapping = codebook.get(name, {})
                if value not in mapping:
                    raise MissingCodebookEntry(name, value)
                raw[i, j] = float(mapping[value])
            else:
                raw[i, j] = float(value)

    constant = [j for j in range(len(dims)) if np.all(raw[:, j] == raw[0, j])]
    if constant:
        dropped = [dims[j] for j in constant]
        warnings.warn(
            f"dropping zero-variance attribute column(s): {', '.join(dropped)}",
            stacklevel=2,
        )
    keep = [j for j in range(len(dims)) if j not in constant]
    kept = raw[:, keep]
    if kept.shape[1] and kept.shape[0] > 1:
        kept = (kept - kept.mean(axis=0)) / kept.std(axis=0, ddof=1)
    return EncodedDecisions(
        matrix=kept,
        row_ids=tuple(d.id for d in decisions),
        dims=tuple(dims[j] for j in keep),
    )


def first_principal_component(matrix: np.ndarray) -> tuple[np.ndarray, float]:
    """Leading eigenpair of the sample covariance of the given rows.

    The direction comes back unit length with its largest-magnitude loading
    made positive, so results are deterministic across runs and platforms.
    Raises DegenerateData when the covariance is all-zero.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 2 or matrix.shape[1] < 1:
        raise DegenerateData("need at least 2 rows and 1 column")
    covariance = np.atleast_2d(np.cov(matrix, rowvar=False, ddof=1))
    if not np.any(covariance):
        raise DegenerateData("covariance matrix is all-zero")
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    direction = eigenvectors[:, -1]
    leading = max(float(eigenvalues[-1]), 0.0)
    pivot = int(np.argmax(np.abs(direction)))
    if direction[pivot] < 0:
        direction = -direction
    return direction, leading


def project_decisions_1d(
    decisions: Sequence[DecisionRecord],
    codebook: Mapping[str, Mapping[str, AttributeValue]],
) -> list[ProjectionPoint]:
    """One coordinate per decision with a recorded consequence.

    Decisions without an outcome are left out before encoding, so the
    projection is fitted on exactly the points that get plotted. Output is
    sorted by coordinate.
    """
    with_outcome = [d for d in decisions if d.lcc is not None]
    if len(with_outcome) < 2:
        raise NoRecordedOutcomes(
            "projection needs at least 2 decisions with recorded consequences"
        )
    encoded = encode_decision_matrix(with_outcome, codebook)
    if encoded.matrix.shape[1] == 0:
        raise DegenerateData("every attribute column had zero variance")
    direction, _ = first_principal_component(encoded.matrix)
    coordinates = encoded.matrix @ direction
    points = [
        ProjectionPoint(
            decision=record.id,
            coordinate=float(coordinates[i]),
            consequence=record.lcc.consequence,
        )
        for i, record in enumerate(with_outcome)
    ]
    return sorted(points, key=lambda p: (p.coordinate, p.decision))


def uncertainty_from_lcc(
    decisions: Sequence[DecisionRecord], config: Config = DEFAULT_CONFIG
) -> float:
    """Uncertainty score in [0, 1] implied by recorded learning cycles.

    Each outcome contributes consequence weight times duration weight; long
    LC4 cycles score 1, short LC1 cycles score 0. Raises NoRecordedOutcomes
    when no outcome is recorded.
    """
    recorded = [d.lcc for d in decisions if d.lcc is not None]
    if not recorded:
        raise NoRecordedOutcomes("no decision has a recorded learning cycle consequence")
    weights = [
        config.consequence_weights[o.consequence] * config.duration_weights[o.duration]
        for o in recorded
    ]
    return sum(weights) / len(weights)
