from __future__ import annotations

from itertools import chain, combinations

import pytest

from kvstream import (
    Alignment,
    Comparison,
    GapAssessment,
    GapKind,
    Stage,
    UncertaintyScale,
    UVScenario,
    WasteKind,
    builtin_scale,
    classify_gap_scenario,
    classify_uv,
    expected_uv_for_stage,
    perception_reality_cell,
    poset_compare,
    recommend_approach,
)
from kvstream.errors import InvalidPoset, UndefinedScenario, UnknownLevel

from oracles import oracle_poset_compare


def assess(actual, perceived):
    return GapAssessment(decision="d", actual=frozenset(actual), perceived=frozenset(perceived))


class TestGapScenarios:
    def test_equal_sets_are_efficient(self):
        result = classify_gap_scenario(assess({"g1", "g2"}, {"g1", "g2"}))
        assert result.kind is GapKind.EFFICIENT
        assert (result.unknown_unknowns, result.phantom_gaps) == (0, 0)

    def test_perceived_subset_is_illusory(self):
        result = classify_gap_scenario(assess({"g1", "g2"}, {"g1"}))
        assert result.kind is GapKind.ILLUSORY_PROGRESS
        assert result.unknown_unknowns == 1 and result.phantom_gaps == 0

    def test_actual_subset_is_excess_waste(self):
        result = classify_gap_scenario(assess({"g1"}, {"g1", "g2"}))
        assert result.kind is GapKind.EXCESS_WASTE
        assert result.unknown_unknowns == 0 and result.phantom_gaps == 1

    def test_partial_overlap_is_mixed(self):
        result = classify_gap_scenario(assess({"g1", "g2"}, {"g2", "g3"}))
        assert result.kind is GapKind.MIXED
        assert (result.unknown_unknowns, result.phantom_gaps) == (1, 1)

    def test_exhaustive_totality_over_four_element_universe(self):
        universe = ["a", "b", "c", "d"]
        subsets = list(
            chain.from_iterable(combinations(universe, k) for k in range(len(universe) + 1))
        )
        assert len(subsets) == 16
        for actual in subsets:
            for perceived in subsets:
                actual_set, perceived_set = set(actual), set(perceived)
                result = classify_gap_scenario(assess(actual_set, perceived_set))
                if perceived_set == actual_set:
                    want = GapKind.EFFICIENT
                elif perceived_set < actual_set:
                    want = GapKind.ILLUSORY_PROGRESS
                elif actual_set < perceived_set:
                    want = GapKind.EXCESS_WASTE
                else:
                    want = GapKind.MIXED
                assert result.kind is want, (actual_set, perceived_set)
                assert result.unknown_unknowns == len(actual_set - perceived_set)
                assert result.phantom_gaps == len(perceived_set - actual_set)

    def test_classification_depends_only_on_set_contents(self):
        duplicated = GapAssessment(
            decision="d",
            actual=frozenset(["g2", "g1", "g1", "g2"]),
            perceived=frozenset(["g1", "g2", "g2"]),
        )
        assert classify_gap_scenario(duplicated).kind is GapKind.EFFICIENT


class TestUVClassification:
    def test_both_clear(self):
        assert classify_uv(False, False) is UVScenario.UV1

    def test_solution_uncertain(self):
        assert classify_uv(False, True) is UVScenario.UV2

    def test_both_uncertain(self):
        assert classify_uv(True, True) is UVScenario.UV3

    def test_needs_only_is_undefined(self):
        with pytest.raises(UndefinedScenario):
            classify_uv(True, False)

    def test_ordering(self):
        assert UVScenario.UV1 < UVScenario.UV2 < UVScenario.UV3


class TestPerceptionReality:
    def test_diagonal_aligned(self):
        for scenario in UVScenario:
            cell = perception_reality_cell(scenario, scenario)
            assert cell.alignment is Alignment.ALIGNED
            assert cell.waste_kind is WasteKind.NONE

    def test_underestimating_by_two_is_high_illusory(self):
        cell = perception_reality_cell(UVScenario.UV1, UVScenario.UV3)
        assert cell.alignment is Alignment.HIGH_WASTE
        assert cell.waste_kind is WasteKind.ILLUSORY

    def test_overestimating_by_two_is_high_excess(self):
        cell = perception_reality_cell(UVScenario.UV3, UVScenario.UV1)
        assert cell.alignment is Alignment.HIGH_WASTE
        assert cell.waste_kind is WasteKind.EXCESS

    def test_overestimating_by_one_is_moderate_excess(self):
        cell = perception_reality_cell(UVScenario.UV2, UVScenario.UV1)
        assert cell.alignment is Alignment.MODERATE_WASTE
        assert cell.waste_kind is WasteKind.EXCESS

    def test_all_nine_cells_deterministic_and_antisymmetric(self):
        for perceived in UVScenario:
            for actual in UVScenario:
                first = perception_reality_cell(perceived, actual)
                again = perception_reality_cell(perceived, actual)
                assert first == again
                if perceived == actual:
                    continue
                flipped = perception_reality_cell(actual, perceived)
                assert flipped.alignment is first.alignment
                assert {first.waste_kind, flipped.waste_kind} == {
                    WasteKind.ILLUSORY,
                    WasteKind.EXCESS,
                }


class TestApproachesAndStages:
    def test_recommendations(self):
        assert "point-based" in recommend_approach(UVScenario.UV1)
        assert "set-based" in recommend_approach(UVScenario.UV2)
        assert "rapid learning" in recommend_approach(UVScenario.UV3)

    def test_stage_mapping(self):
        assert expected_uv_for_stage(Stage.INFANCY) is UVScenario.UV3
        assert expected_uv_for_stage(Stage.GROWTH) is UVScenario.UV2
        assert expected_uv_for_stage(Stage.MATURITY) is UVScenario.UV1


class TestPosetCompare:
    CHAIN = UncertaintyScale(
        levels=frozenset({"Low", "Medium", "High"}),
        order=(("Low", "Medium"), ("Medium", "High")),
    )
    BRANCH = UncertaintyScale(
        levels=frozenset({"root", "a", "b"}), order=(("root", "a"), ("root", "b"))
    )

    def test_chain_reachability(self):
        assert poset_compare(self.CHAIN, "Low", "High") is Comparison.LESS
        assert poset_compare(self.CHAIN, "High", "Low") is Comparison.GREATER

    def test_reflexive_equal(self):
        assert poset_compare(self.CHAIN, "Medium", "Medium") is Comparison.EQUAL

    def test_branches_incomparable(self):
        assert poset_compare(self.BRANCH, "a", "b") is Comparison.INCOMPARABLE

    def test_unknown_level(self):
        with pytest.raises(UnknownLevel):
            poset_compare(self.CHAIN, "Low", "Extreme")

    def test_cycle_rejected(self):
        cyclic = UncertaintyScale(levels=frozenset({"x", "y"}), order=(("x", "y"), ("y", "x")))
        with pytest.raises(InvalidPoset):
            poset_compare(cyclic, "x", "y")

    def test_matches_closure_oracle_on_small_posets(self):
        import random

        rng = random.Random(1234)
        for _ in range(100):
            n = rng.randint(2, 6)
            levels = [f"u{i}" for i in range(n)]
            # only i -> j edges with i < j, so the order stays acyclic
            pairs = [
                (levels[i], levels[j])
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            ]
            scale = UncertaintyScale(levels=frozenset(levels), order=tuple(pairs))
            for a in levels:
                for b in levels:
                    got = poset_compare(scale, a, b)
                    want = oracle_poset_compare(levels, pairs, a, b)
                    assert got.value == want, (pairs, a, b)

    def test_builtin_scales(self):
        lmh = builtin_scale("low-medium-high")
        assert poset_compare(lmh, "Low", "High") is Comparison.LESS
        pct = builtin_scale("percentage")
        assert poset_compare(pct, "3", "99") is Comparison.LESS
        assert poset_compare(pct, "42", "42") is Comparison.EQUAL
