from fractions import Fraction

import pytest

from convexlab.families import FamilySpec
from convexlab.search import (
    SearchConfig,
    extremal_search,
    normalization_constant,
    objective_core,
    objective_value,
)
from convexlab.functions import SQUARE
from convexlab.sets import NumberSet, difference_set, product_set


def cfg(**overrides):
    base = dict(objective="diffProdRatio", set_size=8, iterations=40, seed=1)
    base.update(overrides)
    return SearchConfig(**base)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            cfg(set_size=3)
        with pytest.raises(ValueError):
            cfg(iterations=-1)
        with pytest.raises(ValueError):
            cfg(objective="nope")
        with pytest.raises(ValueError):
            cfg(temp_decay=Fraction(0))
        with pytest.raises(ValueError):
            cfg(move_set=("teleport",))
        with pytest.raises(ValueError):
            cfg(restarts=0)

    def test_json_round_trip(self):
        c = cfg(initial=FamilySpec("geometric", 8, ratio=Fraction(3, 2)), restarts=2)
        again = SearchConfig.from_json_dict(c.to_json_dict())
        assert again == c


class TestObjective:
    def test_core_matches_direct_sizes(self):
        a = NumberSet([1, 2, 4, 8, 16, 32, 64, 100])
        core = objective_core("diffProdRatio", a, SQUARE)
        assert core == max(len(product_set(a, a)), len(difference_set(a, a)))

    def test_normalization_positive(self):
        for name in ("T1ratio", "T2ratio", "diffProdRatio", "sumProdRatio"):
            k = normalization_constant(name, 8)
            assert k > 0


class TestSearch:
    def test_zero_budget_returns_initial(self):
        out = extremal_search(cfg(iterations=0))
        assert out.best_set == NumberSet([1, 2, 4, 8, 16, 32, 64, 128])
        assert out.traces == ()

    def test_objective_matches_reevaluation(self):
        c = cfg(iterations=60, seed=2)
        out = extremal_search(c)
        assert objective_value(c, out.best_set) == out.best_objective

    def test_trace_best_monotone_nonincreasing(self):
        out = extremal_search(cfg(iterations=80, seed=3))
        bests = [Fraction(t["best"]) for t in out.traces]
        assert all(bests[i + 1] <= bests[i] for i in range(len(bests) - 1))

    def test_deterministic(self):
        a = extremal_search(cfg(iterations=50, seed=4))
        b = extremal_search(cfg(iterations=50, seed=4))
        assert a == b

    def test_constraints_preserved(self):
        for objective in ("diffProdRatio", "sumProdRatio", "T1ratio", "T2ratio"):
            out = extremal_search(cfg(objective=objective, iterations=30, seed=5))
            best = out.best_set
            assert len(best) == 8
            assert best.is_strictly_positive()
            assert len(set(best.elements)) == 8

    def test_restart_merge_and_workers_identical(self):
        c = cfg(iterations=30, seed=6, restarts=3)
        serial = extremal_search(c, workers=1)
        parallel = extremal_search(c, workers=3)
        assert serial == parallel
        restarts_seen = {t["restart"] for t in serial.traces}
        assert restarts_seen == {0, 1, 2}

    def test_ap_initial_is_shifted_positive(self):
        c = cfg(initial=FamilySpec("AP", 8), iterations=0, seed=0,
                objective="sumProdRatio")
        out = extremal_search(c)
        assert out.best_set == NumberSet(range(1, 9))

    def test_search_improves_or_preserves_geometric_start(self):
        c = cfg(iterations=120, seed=9)
        start = extremal_search(cfg(iterations=0, seed=9))
        out = extremal_search(c)
        assert out.best_objective <= start.best_objective
