"""Independent brute-force oracles and small builders shared by the tests.

Everything here is deliberately written from first principles (hand-rolled
BFS, subset enumeration, closed-form 2x2 eigendecomposition) so the oracles
share no code path with the library implementations they check.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from kvstream import (
    ActorKind,
    Dataset,
    DecisionRecord,
    FlowGraph,
    KnowledgeActor,
    KnowledgeTie,
)


def make_graph(persons=(), repos=(), ties=(), area="area"):
    """Build a FlowGraph from plain tuples: ties are (src, tgt[, weight])."""
    actors = {p: KnowledgeActor(p, p, ActorKind.PERSON) for p in persons}
    actors.update({r: KnowledgeActor(r, r, ActorKind.REPOSITORY) for r in repos})
    tie_objs = []
    for tie in ties:
        source, target = tie[0], tie[1]
        weight = tie[2] if len(tie) > 2 else 1
        tie_objs.append(KnowledgeTie(area=area, source=source, target=target, weight=weight))
    return FlowGraph(area=area, actors=actors, ties=tuple(tie_objs))


def make_decision(decision_id, lcc=None, attributes=None, area="area", product="prod"):
    return DecisionRecord(
        id=decision_id,
        product=product,
        area=area,
        attributes=attributes or {},
        lcc=lcc,
    )


def make_dataset(actors=(), ties=(), decisions=(), gaps=(), scorecards=(), codebook=None,
                 uncertainty=None):
    return Dataset(
        actors=tuple(actors),
        ties=tuple(ties),
        decisions=tuple(decisions),
        gaps=tuple(gaps),
        scorecards=tuple(scorecards),
        codebook=codebook or {},
        uncertainty=uncertainty,
    )


def random_graph(rng: random.Random) -> FlowGraph:
    """Random mixed person/repository digraph with at most 8 actors.

    Always has at least two persons; sources are persons only and ties
    respect the no-self-tie and uniqueness rules.
    """
    n = rng.randint(3, 8)
    ids = [f"a{i}" for i in range(n)]
    person_count = rng.randint(2, n)
    persons = ids[:person_count]
    repos = ids[person_count:]
    candidates = [(s, t) for s in persons for t in ids if s != t]
    chosen = rng.sample(candidates, k=rng.randint(0, len(candidates)))
    ties = [(s, t, rng.randint(1, 5)) for s, t in chosen]
    return make_graph(persons, repos, ties)


# ---------------------------------------------------------------------------
# Graph measure oracles (direct counting, hand-rolled BFS, subset search)
# ---------------------------------------------------------------------------


def oracle_density(graph: FlowGraph) -> float:
    persons = {a.id for a in graph.actors.values() if a.kind is ActorKind.PERSON}
    assert len(persons) >= 2
    count = sum(1 for t in graph.ties if t.source in persons and t.target in persons)
    return count / (len(persons) * (len(persons) - 1))


def oracle_reciprocity(graph: FlowGraph) -> float:
    persons = {a.id for a in graph.actors.values() if a.kind is ActorKind.PERSON}
    person_ties = [(t.source, t.target) for t in graph.ties
                   if t.source in persons and t.target in persons]
    assert person_ties
    pairs = set(person_ties)
    reciprocated = sum(1 for s, t in person_ties if (t, s) in pairs)
    return 100.0 * reciprocated / len(person_ties)


def oracle_tacit_split(graph: FlowGraph) -> tuple[float, float]:
    persons = {a.id for a in graph.actors.values() if a.kind is ActorKind.PERSON}
    assert graph.ties
    tacit = sum(1 for t in graph.ties if t.source in persons and t.target in persons)
    pct = 100.0 * tacit / len(graph.ties)
    return pct, 100.0 - pct


def _component_count(nodes: set[str], edges: set[frozenset[str]]) -> int:
    adjacency = {node: set() for node in nodes}
    for edge in edges:
        a, b = tuple(edge)
        if a in nodes and b in nodes:
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen: set[str] = set()
    count = 0
    for start in nodes:
        if start in seen:
            continue
        count += 1
        stack = [start]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency[node] - seen)
    return count


def oracle_cut_points(graph: FlowGraph) -> set[str]:
    """Exhaustive removal: drop each tied actor and recount components."""
    edges = {frozenset((t.source, t.target)) for t in graph.ties if t.source != t.target}
    nodes = {t.source for t in graph.ties} | {t.target for t in graph.ties}
    base = _component_count(nodes, edges)
    persons = {a.id for a in graph.actors.values() if a.kind is ActorKind.PERSON}
    cuts = set()
    for victim in nodes:
        remaining = nodes - {victim}
        kept = {e for e in edges if victim not in e}
        if _component_count(remaining, kept) > base:
            cuts.add(victim)
    return cuts & persons


def oracle_mutual_cliques(graph: FlowGraph) -> list[tuple[str, ...]]:
    """Subset enumeration over the mutual person-tie graph."""
    persons = {a.id for a in graph.actors.values() if a.kind is ActorKind.PERSON}
    pairs = {(t.source, t.target) for t in graph.ties
             if t.source in persons and t.target in persons}
    edges = {frozenset((s, t)) for s, t in pairs if (t, s) in pairs and s != t}
    nodes = sorted({n for e in edges for n in e})
    cliques = []
    for size in range(3, len(nodes) + 1):
        for combo in combinations(nodes, size):
            if all(frozenset((a, b)) in edges for a, b in combinations(combo, 2)):
                cliques.append(frozenset(combo))
    maximal = [c for c in cliques if not any(c < other for other in cliques)]
    return sorted((tuple(sorted(c)) for c in maximal), key=lambda c: (-len(c), c))


# ---------------------------------------------------------------------------
# Closed-form 2x2 eigendecomposition oracle
# ---------------------------------------------------------------------------


def sample_cov_2x2(rows) -> tuple[float, float, float]:
    n = len(rows)
    mx = sum(r[0] for r in rows) / n
    my = sum(r[1] for r in rows) / n
    a = sum((r[0] - mx) ** 2 for r in rows) / (n - 1)
    c = sum((r[1] - my) ** 2 for r in rows) / (n - 1)
    b = sum((r[0] - mx) * (r[1] - my) for r in rows) / (n - 1)
    return a, b, c


def eig2x2(a: float, b: float, c: float) -> tuple[tuple[float, float], float]:
    """Leading unit eigenvector (largest-magnitude loading positive) of
    [[a, b], [b, c]] with its eigenvalue, from the quadratic formula."""
    disc = math.sqrt((a - c) ** 2 + 4.0 * b * b)
    leading = (a + c + disc) / 2.0
    if b != 0.0:
        vx, vy = leading - c, b
    elif a >= c:
        vx, vy = 1.0, 0.0
    else:
        vx, vy = 0.0, 1.0
    norm = math.hypot(vx, vy)
    vx, vy = vx / norm, vy / norm
    pivot_is_x = abs(vx) >= abs(vy)
    if (vx if pivot_is_x else vy) < 0:
        vx, vy = -vx, -vy
    return (vx, vy), leading


# ---------------------------------------------------------------------------
# Poset reachability oracle (iterated relation closure)
# ---------------------------------------------------------------------------


def closure_reach(levels, order) -> dict[str, set[str]]:
    reach = {level: {level} for level in levels}
    changed = True
    while changed:
        changed = False
        for lower, higher in order:
            for source in levels:
                if lower in reach[source] and higher not in reach[source]:
                    reach[source].add(higher)
                    changed = True
    return reach


def oracle_poset_compare(levels, order, a: str, b: str) -> str:
    reach = closure_reach(levels, order)
    if a == b:
        return "Equal"
    if b in reach[a]:
        return "Less"
    if a in reach[b]:
        return "Greater"
    return "Incomparable"
