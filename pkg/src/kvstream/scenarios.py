"""Gap-set scenarios, uncertainty-variability typing and perception-reality.

A decision's knowledge gaps come in two flavors: the gaps that actually
existed and the gaps the team perceived at decision time. Comparing the two
sets classifies the decision's knowledge value stream: perceiving exactly
the real gaps is efficient, missing real gaps produces illusory progress,
chasing phantom gaps produces excess waste.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .errors import InvalidPoset, UndefinedScenario, UnknownLevel
from .model import GapAssessment, UncertaintyScale, UVScenario


class GapKind(str, Enum):
    EFFICIENT = "Efficient"
    ILLUSORY_PROGRESS = "IllusoryProgress"
    EXCESS_WASTE = "ExcessWaste"
    MIXED = "Mixed"


class Alignment(str, Enum):
    ALIGNED = "Aligned"
    MODERATE_WASTE = "ModerateWaste"
    HIGH_WASTE = "HighWaste"


class WasteKind(str, Enum):
    NONE = "None"
    ILLUSORY = "Illusory"
    EXCESS = "Excess"


class Stage(str, Enum):
    """Product lifecycle stage on the adoption curve."""

    INFANCY = "infancy"
    GROWTH = "growth"
    MATURITY = "maturity"


class Comparison(str, Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class GapScenario:
    decision: str
    kind: GapKind
    unknown_unknowns: int  # real gaps the team did not perceive
    phantom_gaps: int  # perceived gaps that were not real


@dataclass(frozen=True)
class PerceptionCell:
    perceived: UVScenario
    actual: UVScenario
    alignment: Alignment
    waste_kind: WasteKind


def classify_gap_scenario(assessment: GapAssessment) -> GapScenario:
    """Classify one decision by its actual vs perceived gap sets.

    Equal sets are Efficient; perceived a proper subset of actual is
    IllusoryProgress; actual a proper subset of perceived is ExcessWaste;
    partially overlapping or disjoint non-equal sets are Mixed. Exactly one
    kind applies to any pair of finite sets.
    """
    unknown_unknowns = len(assessment.actual - assessment.perceived)
    phantom_gaps = len(assessment.perceived - assessment.actual)
    if unknown_unknowns == 0 and phantom_gaps == 0:
        kind = GapKind.EFFICIENT
    elif phantom_gaps == 0:
        kind = GapKind.ILLUSORY_PROGRESS
    elif unknown_unknowns == 0:
        kind = GapKind.EXCESS_WASTE
    else:
        kind = GapKind.MIXED
    return GapScenario(
        decision=assessment.decision,
        kind=kind,
        unknown_unknowns=unknown_unknowns,
        phantom_gaps=phantom_gaps,
    )


def classify_uv(needs_uncertain: bool, solution_uncertain: bool) -> UVScenario:
    """Map the two uncertainty flags onto the three enumerated scenarios.

    Uncertain needs with a certain solution is not an enumerated situation
    and raises UndefinedScenario rather than being coerced.
    """
    if not needs_uncertain and not solution_uncertain:
        return UVScenario.UV1
    if not needs_uncertain and solution_uncertain:
        return UVScenario.UV2
    if needs_uncertain and solution_uncertain:
        return UVScenario.UV3
    raise UndefinedScenario(
        "uncertain needs with a certain solution is not an enumerated scenario"
    )


def perception_reality_cell(perceived: UVScenario, actual: UVScenario) -> PerceptionCell:
    """Locate a (perceived, actual) pair in the perception-reality matrix.

    Diagonal cells are aligned with no waste. Off the diagonal the team
    either underestimates uncertainty (illusory progress) or overestimates
    it (excess waste); two scenario steps of distance grade as high waste,
    one step as moderate.
    """
    if perceived == actual:
        return PerceptionCell(perceived, actual, Alignment.ALIGNED, WasteKind.NONE)
    waste = WasteKind.ILLUSORY if perceived < actual else WasteKind.EXCESS
    distance = abs(int(perceived) - int(actual))
    alignment = Alignment.HIGH_WASTE if distance == 2 else Alignment.MODERATE_WASTE
    return PerceptionCell(perceived, actual, alignment, waste)


_APPROACHES = {
    UVScenario.UV1: "point-based serial/concurrent engineering",
    UVScenario.UV2: "set-based design, close technical knowledge gaps",
    UVScenario.UV3: "rapid learning cycles / fast iterations with customer insight",
}

_STAGE_SCENARIOS = {
    Stage.INFANCY: UVScenario.UV3,
    Stage.GROWTH: UVScenario.UV2,
    Stage.MATURITY: UVScenario.UV1,
}


def recommend_approach(scenario: UVScenario) -> str:
    """Development approach suited to the uncertainty-variability scenario."""
    return _APPROACHES[scenario]


def expected_uv_for_stage(stage: Stage) -> UVScenario:
    """Scenario a product's lifecycle stage is expected to align with."""
    return _STAGE_SCENARIOS[stage]


def validate_scale(scale: UncertaintyScale) -> nx.DiGraph:
    """Build the scale's order digraph, rejecting undeclared levels and cycles."""
    graph = nx.DiGraph()
    graph.add_nodes_from(scale.levels)
    for lower, higher in scale.order:
        for endpoint in (lower, higher):
            if endpoint not in scale.levels:
                raise UnknownLevel(f"order references undeclared level {endpoint!r}")
        graph.add_edge(lower, higher)
    if not nx.is_directed_acyclic_graph(graph):
        raise InvalidPoset("uncertainty ordering contains a cycle")
    return graph


def poset_compare(scale: UncertaintyScale, a: str, b: str) -> Comparison:
    """Compare two uncertainty levels under the scale's partial order.

    Equal for the same level; Less/Greater when one level reaches the other
    through the declared covering pairs; Incomparable otherwise.
    """
    graph = validate_scale(scale)
    for level in (a, b):
        if level not in scale.levels:
            raise UnknownLevel(f"level {level!r} is not declared in the scale")
    if a == b:
        return Comparison.EQUAL
    if nx.has_path(graph, a, b):
        return Comparison.LESS
    if nx.has_path(graph, b, a):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def builtin_scale(name: str) -> UncertaintyScale:
    """Ready-made scales: 'low-medium-high' or 'percentage' (0..100)."""
    if name == "low-medium-high":
        return UncertaintyScale(
            levels=frozenset({"Low", "Medium", "High"}),
            order=(("Low", "Medium"), ("Medium", "High")),
        )
    if name == "percentage":
        levels = [str(i) for i in range(101)]
        return UncertaintyScale(
            levels=frozenset(levels),
            order=tuple((str(i), str(i + 1)) for i in range(100)),
        )
    raise UnknownLevel(f"no builtin scale named {name!r}")
