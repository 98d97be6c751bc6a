#!/usr/bin/env python3
"""Regenerate the shipped fixture datasets under fixtures/.

The demo dataset's four areas are engineered so the flow-flux report
reproduces the RED / YELLOW / GREEN / YELLOW health column; this script
asserts every engineered metric before writing, so a bad edit fails loudly
instead of shipping a drifted fixture. Deterministic: fixed seed, no
timestamps.

Usage: python tools/make_fixtures.py [--root fixtures]
"""

from __future__ import annotations

import argparse
import random
import shutil
from pathlib import Path

from kvstream import (
    ActorKind,
    Consequence,
    Dataset,
    DecisionRecord,
    Duration,
    GapAssessment,
    KnowledgeActor,
    KnowledgeTie,
    LccOutcome,
    Rating,
    Scorecard,
    ScorecardItem,
    UncertaintyScale,
    cut_points,
    density,
    mutual_cliques,
    reciprocity,
    save_dataset,
    tacit_explicit_split,
    validate_dataset,
)
from kvstream.model import Dimension
from kvstream.report import Health, build_flow_flux_report

SEED = 20260809

SCORECARD_ITEMS = [
    (Dimension.CREATE, "All members contribute to a usable body of knowledge", Rating.SD),
    (Dimension.CREATE, "Limits of existing design capabilities are established", Rating.D),
    (Dimension.CREATE, "Work standards and guidelines are created and maintained", Rating.A),
    (Dimension.CREATE, "Critical knowledge assets reduce dependency on experts", Rating.SA),
    (Dimension.VALIDATE, "A review workflow validates new knowledge assets", Rating.SD),
    (Dimension.VALIDATE, "Experts validate all critical knowledge assets", Rating.A),
    (Dimension.VALIDATE, "Assets are periodically revalidated and retired", Rating.A),
    (Dimension.VALIDATE, "Assets are checked against external benchmarks", Rating.SA),
    (Dimension.STORE, "A repository stores knowledge assets", Rating.SA),
    (Dimension.STORE, "The repository classifies assets easily", Rating.SA),
    (Dimension.STORE, "The repository supports navigation and search", Rating.A),
    (Dimension.STORE, "New assets are routinely stored in the repository", Rating.A),
    (Dimension.SHARE, "Experts on critical areas are published and approachable", Rating.A),
    (Dimension.SHARE, "Knowledge sharing sessions are held periodically", Rating.D),
    (Dimension.SHARE, "Teams use collaboration tools and capture learnings", Rating.A),
    (Dimension.SHARE, "Incentives discourage knowledge hoarding", Rating.A),
    (Dimension.USE, "The knowledge base is checked before decisions", Rating.D),
    (Dimension.USE, "Closed gaps are captured back into the knowledge base", Rating.D),
    (Dimension.USE, "Metrics track usage of knowledge assets", Rating.SD),
    (Dimension.USE, "Leaders mentor knowledge-based decision making", Rating.A),
]


def person(actor_id: str, name: str) -> KnowledgeActor:
    return KnowledgeActor(id=actor_id, name=name, kind=ActorKind.PERSON)


def repo(actor_id: str, name: str) -> KnowledgeActor:
    return KnowledgeActor(id=actor_id, name=name, kind=ActorKind.REPOSITORY)


def ties_of(area: str, pairs: list[tuple[str, str]], rng: random.Random) -> list[KnowledgeTie]:
    return [KnowledgeTie(area=area, source=s, target=t, weight=rng.randint(1, 5)) for s, t in pairs]


def make_decisions(
    rng: random.Random,
    area: str,
    prefix: str,
    persons: list[str],
    favorable: int,
    unfavorable: int,
    unrecorded: int,
) -> list[DecisionRecord]:
    records = []
    outcomes: list[LccOutcome | None] = []
    for _ in range(favorable):
        outcomes.append(
            LccOutcome(
                consequence=rng.choice([Consequence.LC1, Consequence.LC2]),
                duration=rng.choice([Duration.SHORT, Duration.MEDIUM]),
            )
        )
    for _ in range(unfavorable):
        outcomes.append(
            LccOutcome(
                consequence=rng.choice([Consequence.LC3, Consequence.LC4]),
                duration=rng.choice([Duration.MEDIUM, Duration.LONG]),
            )
        )
    outcomes.extend([None] * unrecorded)
    rng.shuffle(outcomes)
    for i, outcome in enumerate(outcomes, start=1):
        records.append(
            DecisionRecord(
                id=f"{prefix}-{i:03d}",
                product=rng.choice(["controller", "gateway"]),
                area=area,
                attributes={
                    "complexity": rng.randint(1, 10),
                    "approach": rng.choice(["reuse", "adapt", "build"]),
                },
                actors=frozenset(rng.sample(persons, k=rng.randint(1, min(3, len(persons))))),
                lcc=outcome,
                uncertainty=rng.choice([None, "Low", "Medium", "High"]),
            )
        )
    return records


def check_area(dataset: Dataset, area: str, want: dict) -> None:
    graph = dataset.flow_graph(area)
    d = density(graph)
    r = reciprocity(graph)
    tacit, _ = tacit_explicit_split(graph)
    assert abs(d - want["density"]) < 1e-9, (area, "density", d)
    assert abs(r - want["reciprocity"]) < 1e-9, (area, "reciprocity", r)
    assert abs(tacit - want["tacit"]) < 1e-9, (area, "tacit", tacit)
    assert cut_points(graph) == want["cuts"], (area, "cuts", cut_points(graph))
    cliques = mutual_cliques(graph)
    assert cliques == want["cliques"], (area, "cliques", cliques)


def build_demo() -> Dataset:
    rng = random.Random(SEED)

    actors = [
        # FPGA design team: hub p1, ring p2..p6, p7 reachable only through p8.
        *(person(f"p{i}", n) for i, n in enumerate(
            ["Priya", "Marco", "Chen", "Olga", "Tariq", "Lena", "Stephen", "David"], start=1)),
        repo("r-fpga", "FPGA design checklists"),
        # Graphics drivers team.
        *(person(f"q{i}", n) for i, n in enumerate(
            ["Noor", "Ravi", "Ines", "Piotr", "Maya", "Jonas"], start=1)),
        repo("r-gd1", "Driver decision database"),
        repo("r-gd2", "Hardware abstraction notes"),
        repo("r-gd3", "Vendor errata archive"),
        # Data structures team.
        *(person(f"s{i}", n) for i, n in enumerate(
            ["Aiko", "Bruno", "Carla", "Derek", "Esin"], start=1)),
        repo("r-ds1", "Algorithms cookbook"),
        repo("r-ds2", "Benchmark results store"),
        # COM/DCOM team.
        *(person(f"c{i}", n) for i, n in enumerate(
            ["Farid", "Grace", "Hugo", "Irene", "Jun", "Katya", "Liam"], start=1)),
        repo("r-cd1", "Interface contracts wiki"),
        repo("r-cd2", "Legacy integration notes"),
        repo("r-cd3", "Marshalling cookbook"),
        repo("r-cd4", "Troubleshooting logbook"),
    ]

    ties: list[KnowledgeTie] = []

    # fpga-design: 14 person ties (2 reciprocated), 5 repo ties.
    # density 14/56 = 0.25, reciprocity 2/14, tacit 14/19; cut points p1 and p8.
    fpga_pp = [
        ("p2", "p1"), ("p3", "p1"), ("p4", "p1"), ("p5", "p1"), ("p6", "p1"),
        ("p2", "p3"), ("p3", "p4"), ("p4", "p5"), ("p5", "p6"), ("p6", "p2"),
        ("p1", "p8"), ("p8", "p1"), ("p7", "p8"), ("p2", "p4"),
    ]
    fpga_pr = [(f"p{i}", "r-fpga") for i in range(1, 6)]
    ties += ties_of("fpga-design", fpga_pp + fpga_pr, rng)

    # graphics-drivers: 13 person ties (4 reciprocated), 18 repo ties.
    # density 13/30, reciprocity 4/13, tacit 13/31; no cut points.
    gd_pp = [
        ("q1", "q2"), ("q2", "q1"), ("q3", "q4"), ("q4", "q3"),
        ("q1", "q3"), ("q2", "q4"), ("q3", "q5"), ("q4", "q6"),
        ("q5", "q1"), ("q6", "q2"), ("q5", "q6"), ("q1", "q4"), ("q2", "q3"),
    ]
    gd_pr = [(f"q{i}", r) for i in range(1, 7) for r in ("r-gd1", "r-gd2", "r-gd3")]
    ties += ties_of("graphics-drivers", gd_pp + gd_pr, rng)

    # data-structures: 14 person ties (10 reciprocated), 8 repo ties.
    # density 14/20 = 0.7, reciprocity 10/14, tacit 14/22; clique s1-s2-s3.
    ds_pp = [
        ("s1", "s2"), ("s2", "s1"), ("s1", "s3"), ("s3", "s1"),
        ("s2", "s3"), ("s3", "s2"), ("s1", "s4"), ("s4", "s1"),
        ("s4", "s5"), ("s5", "s4"),
        ("s2", "s4"), ("s4", "s3"), ("s5", "s2"), ("s3", "s5"),
    ]
    ds_pr = [(s, "r-ds1") for s in ("s1", "s2", "s3", "s4")] + [
        (s, "r-ds2") for s in ("s1", "s2", "s3", "s5")
    ]
    ties += ties_of("data-structures", ds_pp + ds_pr, rng)

    # com-dcom: 13 person ties (2 reciprocated), 28 repo ties.
    # density 13/42, reciprocity 2/13, tacit 13/41 (explicit-dominant).
    cd_pp = [
        ("c1", "c2"), ("c2", "c1"),
        ("c3", "c1"), ("c4", "c1"), ("c5", "c2"), ("c6", "c3"), ("c7", "c3"),
        ("c1", "c5"), ("c2", "c6"), ("c3", "c4"), ("c4", "c5"), ("c5", "c6"), ("c6", "c7"),
    ]
    cd_pr = [(f"c{i}", r) for i in range(1, 8) for r in ("r-cd1", "r-cd2", "r-cd3", "r-cd4")]
    ties += ties_of("com-dcom", cd_pp + cd_pr, rng)

    decisions = []
    decisions += make_decisions(rng, "fpga-design", "fpga", [f"p{i}" for i in range(1, 9)],
                                favorable=11, unfavorable=39, unrecorded=30)
    decisions += make_decisions(rng, "graphics-drivers", "gd", [f"q{i}" for i in range(1, 7)],
                                favorable=36, unfavorable=12, unrecorded=9)
    decisions += make_decisions(rng, "data-structures", "ds", [f"s{i}" for i in range(1, 6)],
                                favorable=20, unfavorable=5, unrecorded=6)
    decisions += make_decisions(rng, "com-dcom", "cd", [f"c{i}" for i in range(1, 8)],
                                favorable=30, unfavorable=70, unrecorded=52)

    gap_pool = ["g-thermal", "g-timing", "g-vendor", "g-protocol", "g-scaling",
                "g-memory", "g-latency", "g-threading"]
    gaps = []
    picked = rng.sample([d.id for d in decisions], k=12)
    for decision_id in picked[:6]:  # efficient: perceived exactly the real gaps
        shared = frozenset(rng.sample(gap_pool, k=2))
        gaps.append(GapAssessment(decision=decision_id, actual=shared, perceived=shared))
    for decision_id in picked[6:8]:  # illusory: a real gap went unperceived
        actual = frozenset(rng.sample(gap_pool, k=3))
        gaps.append(GapAssessment(decision=decision_id, actual=actual,
                                  perceived=frozenset(rng.sample(sorted(actual), k=2))))
    for decision_id in picked[8:10]:  # excess: a phantom gap was chased
        perceived = frozenset(rng.sample(gap_pool, k=3))
        gaps.append(GapAssessment(decision=decision_id, perceived=perceived,
                                  actual=frozenset(rng.sample(sorted(perceived), k=2))))
    gaps.append(GapAssessment(decision=picked[10], actual=frozenset({"g-thermal", "g-timing"}),
                              perceived=frozenset({"g-timing", "g-vendor"})))  # mixed
    gaps.append(GapAssessment(decision=picked[11], actual=frozenset({"g-scaling"}),
                              perceived=frozenset()))  # wishful thinking

    scorecards = [
        Scorecard(
            team="team-alpha",
            timestamp="2026-04-01T10:00:00+00:00",
            items=tuple(ScorecardItem(dimension=d, statement=s, rating=r)
                        for d, s, r in SCORECARD_ITEMS),
        )
    ]

    return Dataset(
        actors=tuple(actors),
        ties=tuple(ties),
        decisions=tuple(decisions),
        gaps=tuple(gaps),
        scorecards=tuple(scorecards),
        codebook={"approach": {"reuse": 1, "adapt": 2, "build": 3}},
        uncertainty=UncertaintyScale(
            levels=frozenset({"Low", "Medium", "High"}),
            order=(("Low", "Medium"), ("Medium", "High")),
        ),
    )


def build_clean() -> Dataset:
    return Dataset(
        actors=(
            person("john", "John"),
            person("raj", "Raj"),
            person("mike", "Mike"),
            repo("portal", "Team portal"),
        ),
        ties=(
            KnowledgeTie(area="net-design", source="john", target="raj"),
            KnowledgeTie(area="net-design", source="raj", target="john"),
            KnowledgeTie(area="net-design", source="john", target="portal", weight=5),
        ),
        decisions=(
            DecisionRecord(
                id="d-proto", product="gateway", area="net-design",
                attributes={"latency_ms": 12, "protocol": "tcp"},
                actors=frozenset({"john", "raj"}),
                lcc=LccOutcome(Consequence.LC1, Duration.SHORT),
                uncertainty="Medium",
            ),
            DecisionRecord(
                id="d-codec", product="gateway", area="net-design",
                attributes={"latency_ms": 45, "protocol": "udp"},
                actors=frozenset({"mike"}),
                lcc=LccOutcome(Consequence.LC3, Duration.MEDIUM),
            ),
        ),
        gaps=(
            GapAssessment(decision="d-proto",
                          actual=frozenset({"g-proto-scaling"}),
                          perceived=frozenset({"g-proto-scaling"})),
        ),
        scorecards=(
            Scorecard(
                team="team-net", timestamp="2026-03-10T09:00:00+00:00",
                items=(
                    ScorecardItem(Dimension.CREATE, "Standards are maintained", Rating.A),
                    ScorecardItem(Dimension.CREATE, "Knowledge assets are created", Rating.SA),
                    ScorecardItem(Dimension.VALIDATE, "Experts review assets", Rating.A),
                    ScorecardItem(Dimension.STORE, "A repository is in place", Rating.SA),
                    ScorecardItem(Dimension.SHARE, "Sharing sessions happen", Rating.D),
                    ScorecardItem(Dimension.USE, "The knowledge base drives decisions", Rating.A),
                ),
            ),
        ),
        codebook={"protocol": {"tcp": 1, "udp": 2}},
        uncertainty=UncertaintyScale(
            levels=frozenset({"Low", "Medium", "High"}),
            order=(("Low", "Medium"), ("Medium", "High")),
        ),
    )


def build_invalid(clean: Dataset) -> dict[str, Dataset]:
    from dataclasses import replace

    base = replace(clean, decisions=(), gaps=(), scorecards=(), codebook={}, uncertainty=None)
    return {
        "dup-actor": replace(base, actors=base.actors + (person("raj", "Raj again"),)),
        "repo-source": replace(
            base, ties=base.ties + (KnowledgeTie("net-design", "portal", "john"),)
        ),
        "unknown-actor": replace(
            base, ties=base.ties + (KnowledgeTie("net-design", "john", "ghost"),)
        ),
        "dup-tie": replace(
            base, ties=base.ties + (KnowledgeTie("net-design", "john", "raj"),)
        ),
        "bad-weight": replace(
            base, ties=base.ties + (KnowledgeTie("net-design", "mike", "raj", weight=0),)
        ),
    }


EXPECT = {
    "fpga-design": {
        "density": 14 / 56, "reciprocity": 100 * 2 / 14, "tacit": 100 * 14 / 19,
        "cuts": {"p1", "p8"}, "cliques": [], "health": Health.RED,
    },
    "graphics-drivers": {
        "density": 13 / 30, "reciprocity": 100 * 4 / 13, "tacit": 100 * 13 / 31,
        "cuts": set(), "cliques": [], "health": Health.YELLOW,
    },
    "data-structures": {
        "density": 14 / 20, "reciprocity": 100 * 10 / 14, "tacit": 100 * 14 / 22,
        "cuts": set(), "cliques": [("s1", "s2", "s3")], "health": Health.GREEN,
    },
    "com-dcom": {
        "density": 13 / 42, "reciprocity": 100 * 2 / 13, "tacit": 100 * 13 / 41,
        "cuts": set(), "cliques": [], "health": Health.YELLOW,
    },
}


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--root", default="fixtures")
    args = parser.parse_args()
    root = Path(args.root)

    demo = build_demo()
    assert not validate_dataset(demo), validate_dataset(demo)
    for area, want in EXPECT.items():
        check_area(demo, area, want)
    rows = {r.area: r for r in build_flow_flux_report(demo)}
    for area, want in EXPECT.items():
        assert rows[area].health is want["health"], (area, rows[area].health)

    clean = build_clean()
    assert not validate_dataset(clean), validate_dataset(clean)

    if root.exists():
        shutil.rmtree(root)
    save_dataset(demo, root / "demo")
    save_dataset(clean, root / "clean")
    for name, dataset in build_invalid(clean).items():
        save_dataset(dataset, root / name)
    print(f"fixtures written under {root}/")


if __name__ == "__main__":
    main()
