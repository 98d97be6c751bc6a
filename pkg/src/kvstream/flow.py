"""Per-area knowledge-flow measures.

All measures work on one area's FlowGraph. Ties are directed "A approaches
B" edges; person-to-person ties carry tacit knowledge, person-to-repository
ties carry explicit knowledge. Density and reciprocity look only at the
person subgraph, cut points at the undirected projection of the full graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .config import DEFAULT_CONFIG, Config
from .errors import InsufficientActors, NoPersonTies, NoTies
from .model import ActorKind, FlowGraph


class Quadrant(str, Enum):
    """Density-reciprocity quadrant an area falls into."""

    COP_READY = "CoPReady"
    QUICK_WIN = "QuickWin"
    EXPAND_NETWORK = "ExpandNetwork"
    FOUNDATIONAL = "Foundational"


@dataclass(frozen=True)
class ApproachRank:
    actor: str
    in_degree: int
    weighted_in_degree: int


@dataclass(frozen=True)
class FlowSummary:
    """All flow measures for one area, plus its quadrant.

    Metrics that are undefined for the graph (too few persons, no ties)
    are None; a summary with undefined density or reciprocity is always
    classified Foundational.
    """

    area: str
    density: float | None
    reciprocity_pct: float | None
    tacit_pct: float | None
    explicit_pct: float | None
    cut_points: tuple[str, ...]
    cliques: tuple[tuple[str, ...], ...]
    most_approached: tuple[ApproachRank, ...]
    quadrant: Quadrant


def density(graph: FlowGraph) -> float:
    """Fraction of possible directed person-to-person ties that exist.

    With p persons there are p*(p-1) ordered pairs; weights are ignored.
    Raises InsufficientActors when the graph has fewer than two persons.
    """
    persons = graph.person_ids()
    if len(persons) < 2:
        raise InsufficientActors(
            f"area {graph.area!r} has {len(persons)} person(s); density needs at least 2"
        )
    possible = len(persons) * (len(persons) - 1)
    return len(graph.person_ties()) / possible


def reciprocity(graph: FlowGraph) -> float:
    """Percentage of person-to-person ties whose reverse tie also exists.

    A mutual pair contributes both of its ties, so an all-mutual graph
    scores 100. Raises NoPersonTies when there is nothing to measure.
    """
    person_ties = graph.person_ties()
    if not person_ties:
        raise NoPersonTies(f"area {graph.area!r} has no person-to-person ties")
    pairs = {(t.source, t.target) for t in person_ties}
    reciprocated = sum(1 for t in person_ties if (t.target, t.source) in pairs)
    return 100.0 * reciprocated / len(person_ties)


def tacit_explicit_split(graph: FlowGraph) -> tuple[float, float]:
    """(tacit %, explicit %) of the area's ties; the two always sum to 100.

    Tacit ties run person to person, everything else counts as explicit.
    Raises NoTies on a tieless graph.
    """
    if not graph.ties:
        raise NoTies(f"area {graph.area!r} has no ties")
    tacit = 100.0 * len(graph.person_ties()) / len(graph.ties)
    return tacit, 100.0 - tacit


def cut_points(graph: FlowGraph) -> set[str]:
    """Persons whose departure would disconnect the knowledge flow.

    Articulation points of the undirected projection over every actor that
    participates in at least one tie (repositories included, so a person
    reachable only through a repository still counts as connected), reported
    for persons only.
    """
    undirected = nx.Graph()
    for tie in graph.ties:
        if tie.source != tie.target:
            undirected.add_edge(tie.source, tie.target)
    articulation = set(nx.articulation_points(undirected))
    persons = graph.person_ids()
    return {a for a in articulation if a in persons}


def mutual_cliques(graph: FlowGraph) -> list[tuple[str, ...]]:
    """Maximal groups of three or more persons that all approach each other.

    Built from mutual person-tie pairs; ordered by size (largest first),
    then lexicographically, with members sorted inside each group.
    """
    pairs = {(t.source, t.target) for t in graph.person_ties()}
    mutual = nx.Graph()
    for source, target in pairs:
        if (target, source) in pairs and source != target:
            mutual.add_edge(source, target)
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(mutual) if len(c) >= 3]
    return sorted(cliques, key=lambda c: (-len(c), c))


def most_approached(graph: FlowGraph, k: int) -> list[ApproachRank]:
    """Top-k actors by incoming tie count.

    Ranks persons and repositories together; ties on count are broken by
    summed incoming weight, then by actor id. Actors nobody approaches are
    not ranked, so fewer than k results may come back.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    in_degree: dict[str, int] = {}
    weighted: dict[str, int] = {}
    for tie in graph.ties:
        in_degree[tie.target] = in_degree.get(tie.target, 0) + 1
        weighted[tie.target] = weighted.get(tie.target, 0) + tie.weight
    ranked = sorted(
        (ApproachRank(actor, in_degree[actor], weighted[actor]) for actor in in_degree),
        key=lambda r: (-r.in_degree, -r.weighted_in_degree, r.actor),
    )
    return ranked[:k]


def quadrant_of(density_value: float, reciprocity_pct: float, config: Config = DEFAULT_CONFIG) -> Quadrant:
    """Classify an area by its density and reciprocity against the cutoffs."""
    dense = density_value >= config.density_hi
    reciprocal = reciprocity_pct >= config.reciprocity_hi
    if dense and reciprocal:
        return Quadrant.COP_READY
    if dense:
        return Quadrant.QUICK_WIN
    if reciprocal:
        return Quadrant.EXPAND_NETWORK
    return Quadrant.FOUNDATIONAL


def flow_summary(graph: FlowGraph, config: Config = DEFAULT_CONFIG, top_k: int = 3) -> FlowSummary:
    """Assemble every flow measure for one area.

    Undefined metrics are recorded as None instead of raising, so report
    assembly can keep going area by area.
    """
    density_value = _or_none(density, graph)
    reciprocity_pct = _or_none(reciprocity, graph)
    split = None
    if graph.ties:
        split = tacit_explicit_split(graph)
    if density_value is None or reciprocity_pct is None:
        quadrant = Quadrant.FOUNDATIONAL
    else:
        quadrant = quadrant_of(density_value, reciprocity_pct, config)
    return FlowSummary(
        area=graph.area,
        density=density_value,
        reciprocity_pct=reciprocity_pct,
        tacit_pct=split[0] if split else None,
        explicit_pct=split[1] if split else None,
        cut_points=tuple(sorted(cut_points(graph))),
        cliques=tuple(mutual_cliques(graph)),
        most_approached=tuple(most_approached(graph, top_k)),
        quadrant=quadrant,
    )


def _or_none(measure, graph):
    try:
        return measure(graph)
    except (InsufficientActors, NoPersonTies, NoTies):
        return None


def person_count(graph: FlowGraph) -> int:
    return sum(1 for a in graph.actors.values() if a.kind is ActorKind.PERSON)
