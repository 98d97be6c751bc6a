from __future__ import annotations

import math
import random

import numpy as np
import pytest

from kvstream import (
    Consequence,
    Duration,
    FluxVerdict,
    LccOutcome,
    encode_decision_matrix,
    favorable_lcc_rate,
    first_principal_component,
    flux_assessment,
    knowledge_flux,
    lcc_distribution,
    project_decisions_1d,
    uncertainty_from_lcc,
)
from kvstream.errors import (
    DegenerateData,
    HeterogeneousAttributes,
    MissingCodebookEntry,
    NoDecisions,
    NoRecordedOutcomes,
)

from oracles import eig2x2, make_decision, make_graph, sample_cov_2x2


def outcome(consequence, duration=Duration.SHORT):
    return LccOutcome(consequence=consequence, duration=duration)


def decisions_with(consequences, duration=Duration.SHORT):
    return [
        make_decision(f"d{i}", lcc=outcome(c, duration) if c else None)
        for i, c in enumerate(consequences)
    ]


class TestKnowledgeFlux:
    def test_published_quarter(self):
        assert knowledge_flux(25, 100) == 0.25

    def test_published_high(self):
        assert knowledge_flux(69, 75) == pytest.approx(0.92, abs=1e-4)

    def test_no_ties(self):
        assert knowledge_flux(0, 10) == 0.0

    def test_zero_decisions_raises(self):
        with pytest.raises(NoDecisions):
            knowledge_flux(5, 0)

    def test_exact_ratio_property(self):
        rng = random.Random(31)
        for _ in range(200):
            ties = rng.randint(0, 500)
            decisions = rng.randint(1, 500)
            assert knowledge_flux(ties, decisions) == ties / decisions


class TestFavorableRate:
    def test_seven_of_ten(self):
        recorded = [Consequence.LC1] * 4 + [Consequence.LC2] * 3 + [Consequence.LC4] * 3
        assert favorable_lcc_rate(decisions_with(recorded)) == pytest.approx(0.70)

    def test_all_favorable(self):
        assert favorable_lcc_rate(decisions_with([Consequence.LC1] * 5)) == 1.0

    def test_all_unfavorable(self):
        assert favorable_lcc_rate(decisions_with([Consequence.LC4] * 5)) == 0.0

    def test_unrecorded_excluded(self):
        mixed = decisions_with([Consequence.LC1, None, None, Consequence.LC3])
        assert favorable_lcc_rate(mixed) == 0.5

    def test_nothing_recorded_raises(self):
        with pytest.raises(NoRecordedOutcomes):
            favorable_lcc_rate(decisions_with([None, None]))

    def test_monotone_under_added_outcomes(self):
        rng = random.Random(13)
        for _ in range(50):
            base = decisions_with(
                [rng.choice(list(Consequence)) for _ in range(rng.randint(1, 10))]
            )
            rate = favorable_lcc_rate(base)
            assert favorable_lcc_rate(base + decisions_with([Consequence.LC1])) >= rate
            assert favorable_lcc_rate(base + decisions_with([Consequence.LC4])) <= rate


class TestFluxAssessment:
    def test_optimal_at_072(self):
        g = make_graph("AB", ties=[("A", "B")])
        recorded = [Consequence.LC1] * 18 + [Consequence.LC3] * 7  # 18/25 = 0.72
        result = flux_assessment("area", g, decisions_with(recorded))
        assert result.favorable_rate == pytest.approx(0.72)
        assert result.verdict is FluxVerdict.OPTIMAL

    def test_enhance_at_022(self):
        g = make_graph("AB", ties=[("A", "B")])
        recorded = [Consequence.LC1] * 11 + [Consequence.LC4] * 39  # 11/50 = 0.22
        result = flux_assessment("area", g, decisions_with(recorded))
        assert result.favorable_rate == pytest.approx(0.22)
        assert result.verdict is FluxVerdict.ENHANCE_FLUX
        assert "increase knowledge ties" in result.recommendation

    def test_threshold_is_inclusive(self):
        g = make_graph("AB", ties=[("A", "B")])
        recorded = [Consequence.LC1] * 7 + [Consequence.LC4] * 3
        result = flux_assessment("area", g, decisions_with(recorded))
        assert result.favorable_rate == pytest.approx(0.70)
        assert result.verdict is FluxVerdict.OPTIMAL

    def test_no_outcomes_is_insufficient(self):
        g = make_graph("AB", ties=[("A", "B")])
        result = flux_assessment("area", g, decisions_with([None, None]))
        assert result.verdict is FluxVerdict.INSUFFICIENT_DATA
        assert result.favorable_rate is None

    def test_no_decisions_raises(self):
        g = make_graph("AB", ties=[("A", "B")])
        with pytest.raises(NoDecisions):
            flux_assessment("area", g, [])

    def test_flux_value_is_ties_over_decisions(self):
        g = make_graph("ABC", ties=[("A", "B"), ("B", "C"), ("C", "A")])
        result = flux_assessment("area", g, decisions_with([Consequence.LC1] * 4))
        assert result.flux == 0.75
        assert result.tie_count == 3
        assert result.decision_count == 4


class TestLccDistribution:
    def test_tally(self):
        records = [
            make_decision("a", lcc=outcome(Consequence.LC1, Duration.SHORT)),
            make_decision("b", lcc=outcome(Consequence.LC1, Duration.SHORT)),
            make_decision("c", lcc=outcome(Consequence.LC4, Duration.LONG)),
        ]
        dist = lcc_distribution(records, "x")
        assert dist.counts == {
            (Consequence.LC1, Duration.SHORT): 2,
            (Consequence.LC4, Duration.LONG): 1,
        }
        assert dist.recorded_total == 3
        assert dist.unrecorded_total == 0

    def test_empty(self):
        dist = lcc_distribution([])
        assert dist.counts == {} and dist.recorded_total == 0 and dist.unrecorded_total == 0

    def test_unrecorded_counted_apart(self):
        records = [make_decision("a", lcc=outcome(Consequence.LC2)), make_decision("b")]
        dist = lcc_distribution(records)
        assert dist.recorded_total == 1
        assert dist.unrecorded_total == 1


class TestEncodeDecisionMatrix:
    CODEBOOK = {"metal": {"steel": 2, "aluminum": 1}}

    def test_categorical_substitution(self):
        records = [
            make_decision("a", attributes={"radius": 45, "metal": "steel"},
                          lcc=outcome(Consequence.LC1)),
            make_decision("b", attributes={"radius": 50, "metal": "aluminum"},
                          lcc=outcome(Consequence.LC2)),
        ]
        encoded = encode_decision_matrix(records, self.CODEBOOK)
        assert encoded.dims == ("metal", "radius")
        raw = np.array([[2.0, 45.0], [1.0, 50.0]])
        expected = (raw - raw.mean(axis=0)) / raw.std(axis=0, ddof=1)
        assert np.allclose(encoded.matrix, expected)

    def test_zero_variance_column_dropped_with_warning(self):
        records = [
            make_decision("a", attributes={"radius": 45, "rate": 1}),
            make_decision("b", attributes={"radius": 45, "rate": 2}),
        ]
        with pytest.warns(UserWarning, match="radius"):
            encoded = encode_decision_matrix(records, {})
        assert encoded.dims == ("rate",)

    def test_missing_codebook_entry(self):
        records = [make_decision("a", attributes={"metal": "brass"})]
        with pytest.raises(MissingCodebookEntry):
            encode_decision_matrix(records, self.CODEBOOK)

    def test_heterogeneous_attributes(self):
        records = [
            make_decision("a", attributes={"radius": 1}),
            make_decision("b", attributes={"height": 2}),
        ]
        with pytest.raises(HeterogeneousAttributes):
            encode_decision_matrix(records, {})


class TestFirstPrincipalComponent:
    def test_diagonal_line(self):
        direction, eigenvalue = first_principal_component([[1, 1], [2, 2], [3, 3]])
        assert np.allclose(direction, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-12)
        assert eigenvalue == pytest.approx(2.0, abs=1e-12)

    def test_axis_aligned(self):
        direction, eigenvalue = first_principal_component([[0, 5], [1, 5], [2, 5], [9, 5]])
        assert np.allclose(direction, [1.0, 0.0], atol=1e-12)
        cov = float(np.var([0, 1, 2, 9], ddof=1))
        assert eigenvalue == pytest.approx(cov, abs=1e-12)

    def test_single_column(self):
        direction, eigenvalue = first_principal_component([[1.0], [4.0], [6.0]])
        assert np.allclose(direction, [1.0])
        assert eigenvalue == pytest.approx(float(np.var([1, 4, 6], ddof=1)), abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateData):
            first_principal_component([[3.0, 1.0], [3.0, 1.0], [3.0, 1.0]])

    def test_matches_closed_form_oracle(self):
        rng = random.Random(2024)
        checked = 0
        while checked < 100:
            n = rng.randint(3, 40)
            rows = [(rng.gauss(0, 3), rng.gauss(0, 1) + 0.4 * rng.gauss(0, 3)) for _ in range(n)]
            a, b, c = sample_cov_2x2(rows)
            if a + c == 0:
                continue
            (ox, oy), oracle_lambda = eig2x2(a, b, c)
            direction, eigenvalue = first_principal_component(np.array(rows))
            # skip near-ties in loading magnitude where the sign convention
            # could legitimately flip between implementations
            if abs(abs(ox) - abs(oy)) < 1e-7:
                continue
            assert abs(direction[0] - ox) < 1e-9 and abs(direction[1] - oy) < 1e-9
            assert abs(eigenvalue - oracle_lambda) < 1e-9
            checked += 1

    def test_projection_variance_equals_eigenvalue(self):
        rng = random.Random(77)
        for _ in range(100):
            n = rng.randint(3, 30)
            rows = np.array(
                [[rng.gauss(0, 2), rng.gauss(0, 0.5) + 0.7 * rng.gauss(0, 2)] for _ in range(n)]
            )
            direction, eigenvalue = first_principal_component(rows)
            centered = rows - rows.mean(axis=0)
            coords = centered @ direction
            assert float(np.var(coords, ddof=1)) == pytest.approx(eigenvalue, abs=1e-9)

    def test_direction_invariant_under_translation(self):
        rows = np.array([[0.0, 1.0], [2.0, 1.5], [4.0, 4.0], [1.0, 0.5]])
        d1, e1 = first_principal_component(rows)
        d2, e2 = first_principal_component(rows + np.array([100.0, -40.0]))
        assert np.allclose(d1, d2, atol=1e-12)
        assert e1 == pytest.approx(e2, abs=1e-9)


class TestProjection:
    CODEBOOK = {"metal": {"steel": 2, "aluminum": 1, "brass": 3}}

    def records(self):
        return [
            make_decision("d1", attributes={"radius": 30, "rate": 2.0},
                          lcc=outcome(Consequence.LC1)),
            make_decision("d2", attributes={"radius": 45, "rate": 3.5},
                          lcc=outcome(Consequence.LC3)),
            make_decision("d3", attributes={"radius": 60, "rate": 5.0},
                          lcc=outcome(Consequence.LC4, Duration.LONG)),
        ]

    def test_collinear_order_preserved(self):
        points = project_decisions_1d(self.records(), {})
        assert [p.decision for p in points] == ["d1", "d2", "d3"]
        assert points[0].coordinate < points[1].coordinate < points[2].coordinate

    def test_coordinates_match_closed_form(self):
        records = [
            make_decision("a", attributes={"x": 1.0, "y": 0.5}, lcc=outcome(Consequence.LC1)),
            make_decision("b", attributes={"x": 3.0, "y": 2.5}, lcc=outcome(Consequence.LC2)),
            make_decision("c", attributes={"x": 4.0, "y": 9.0}, lcc=outcome(Consequence.LC4)),
        ]
        raw = np.array([[1.0, 0.5], [3.0, 2.5], [4.0, 9.0]])
        standardized = (raw - raw.mean(axis=0)) / raw.std(axis=0, ddof=1)
        a, b, c = sample_cov_2x2([tuple(r) for r in standardized])
        (ox, oy), _ = eig2x2(a, b, c)
        expected = sorted(standardized @ np.array([ox, oy]))
        points = project_decisions_1d(records, {})
        for point, want in zip(points, expected):
            assert point.coordinate == pytest.approx(want, abs=1e-9)

    def test_projection_order_invariant_under_uniform_scaling(self):
        records = self.records()
        scaled = [
            make_decision(r.id, attributes={k: v * 10 for k, v in r.attributes.items()},
                          lcc=r.lcc)
            for r in records
        ]
        original = [p.decision for p in project_decisions_1d(records, {})]
        rescaled = [p.decision for p in project_decisions_1d(scaled, {})]
        assert original == rescaled

    def test_unrecorded_omitted(self):
        records = self.records() + [make_decision("d4", attributes={"radius": 5, "rate": 9.0})]
        points = project_decisions_1d(records, {})
        assert {p.decision for p in points} == {"d1", "d2", "d3"}

    def test_all_unrecorded_raises(self):
        records = [make_decision("a", attributes={"x": 1}), make_decision("b", attributes={"x": 2})]
        with pytest.raises(NoRecordedOutcomes):
            project_decisions_1d(records, {})

    def test_categorical_attributes_flow_through(self):
        records = [
            make_decision("a", attributes={"metal": "steel"}, lcc=outcome(Consequence.LC1)),
            make_decision("b", attributes={"metal": "aluminum"}, lcc=outcome(Consequence.LC2)),
            make_decision("c", attributes={"metal": "brass"}, lcc=outcome(Consequence.LC3)),
        ]
        points = project_decisions_1d(records, self.CODEBOOK)
        assert [p.decision for p in points] == ["b", "a", "c"]  # ordinals 1 < 2 < 3


class TestUncertaintyFromLcc:
    def test_all_best_is_zero(self):
        records = decisions_with([Consequence.LC1] * 3)
        assert uncertainty_from_lcc(records) == 0.0

    def test_single_worst_is_one(self):
        records = decisions_with([Consequence.LC4], duration=Duration.LONG)
        assert uncertainty_from_lcc(records) == 1.0

    def test_documented_mixture(self):
        records = [
            make_decision("a", lcc=outcome(Consequence.LC2, Duration.SHORT)),
            make_decision("b", lcc=outcome(Consequence.LC4, Duration.LONG)),
        ]
        assert uncertainty_from_lcc(records) == pytest.approx(0.5625)

    def test_no_outcomes_raises(self):
        with pytest.raises(NoRecordedOutcomes):
            uncertainty_from_lcc([make_decision("a")])

    def test_weight_tables_are_overridable(self):
        from kvstream.config import DEFAULT_CONFIG

        harsh = DEFAULT_CONFIG.with_overrides(
            {"consequence_weights": {"LC2": 1.0}, "duration_weights": {"short": 1.0}}
        )
        records = decisions_with([Consequence.LC2])
        assert uncertainty_from_lcc(records, harsh) == 1.0
        assert uncertainty_from_lcc(records) == pytest.approx(0.125)

    def test_monotone_in_cell_weight(self):
        from kvstream.config import DEFAULT_CONFIG

        cells = sorted(
            ((c, d) for c in Consequence for d in Duration),
            key=lambda cd: DEFAULT_CONFIG.consequence_weights[cd[0]]
            * DEFAULT_CONFIG.duration_weights[cd[1]],
        )
        base = [make_decision("x", lcc=outcome(Consequence.LC2, Duration.MEDIUM))]
        scores = [
            uncertainty_from_lcc(base + [make_decision("y", lcc=LccOutcome(c, d))])
            for c, d in cells
        ]
        assert scores == sorted(scores)
