import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import positive_number_sets
from convexlab.errors import DomainError, EmptyInputError
from convexlab.functions import EXP2, RECIPROCAL, SQUARE, power_fn
from convexlab.incidence import (
    build_instance,
    count_incidences,
    lemma_st1_ratio,
    lemma_st2_ratio,
    st_bound_check,
    st_bound_decimal,
)
from convexlab.sets import NumberSet, sumset
from oracles import (
    naive_incidences,
    naive_level_count,
    naive_rep,
    reciprocal_translate_intersections,
    square_translate_intersections,
)


def nset(*values):
    return NumberSet(Fraction(v) for v in values)


def random_positive_set(rng, size, max_num=60, max_den=6):
    vals = set()
    while len(vals) < size:
        vals.add(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)))
    return NumberSet(vals)


class TestBuildInstance:
    def test_parabola_nine_points(self):
        grid, family = build_instance(SQUARE, nset(0, 1, 2), nset(0), nset(0))
        assert len(grid) == 9 and len(family) == 1
        assert grid.xs == nset(0, 1, 2) and grid.ys == nset(0, 1, 4)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            build_instance(SQUARE, nset(0, 1), NumberSet(), NumberSet())

    def test_cardinality_arithmetic(self):
        grid, family = build_instance(SQUARE, nset(1, 2), nset(0, 5), nset(0, 3))
        assert len(family) == 4
        assert len(grid) <= 16

    def test_square_needs_nonnegative(self):
        with pytest.raises(DomainError):
            build_instance(SQUARE, nset(-1, 1), nset(0), nset(0))

    def test_family_size_is_bc(self):
        rng = random.Random(0)
        a, b, c = (random_positive_set(rng, k) for k in (4, 3, 5))
        _, family = build_instance(SQUARE, a, b, c)
        assert len(family) == len(b) * len(c)
        assert len(set(family.shifts)) == len(family.shifts)


class TestCountIncidences:
    def test_parabola_incidences(self):
        grid, family = build_instance(SQUARE, nset(0, 1, 2), nset(0), nset(0))
        report = count_incidences(grid, family, taus=(1, 2))
        assert report.incidences == 3
        assert report.rich_points == {1: 3, 2: 0}
        assert report.st_bound_holds

    def test_tau_above_family_size_gives_zero(self):
        grid, family = build_instance(SQUARE, nset(0, 1, 2), nset(0), nset(0))
        report = count_incidences(grid, family, taus=(5,))
        assert report.rich_points[5] == 0

    @pytest.mark.parametrize("fn", [SQUARE, RECIPROCAL, power_fn(3), power_fn(4)])
    def test_matches_naive_oracle(self, fn):
        rng = random.Random(hash(fn.name) & 0xFFFF)
        for _ in range(6):
            a = random_positive_set(rng, rng.randint(2, 5))
            b = random_positive_set(rng, rng.randint(1, 4))
            c = random_positive_set(rng, rng.randint(1, 4))
            grid, family = build_instance(fn, a, b, c)
            report = count_incidences(grid, family)
            naive_total, per_point = naive_incidences(grid, family)
            assert report.incidences == naive_total
            assert report.max_point_curves == max(per_point.values(), default=0)

    def test_exp2_matches_naive_oracle(self):
        rng = random.Random(9)
        for _ in range(4):
            a = NumberSet(rng.sample(range(0, 9), 3))
            b = NumberSet(Fraction(rng.randint(0, 8), rng.randint(1, 3)) for _ in range(3))
            c = NumberSet(Fraction(rng.randint(0, 8), rng.randint(1, 3)) for _ in range(3))
            grid, family = build_instance(EXP2, a, b, c)
            report = count_incidences(grid, family)
            naive_total, _ = naive_incidences(grid, family)
            assert report.incidences == naive_total

    def test_every_diagonal_incidence_is_counted(self):
        rng = random.Random(3)
        a = random_positive_set(rng, 4)
        b = random_positive_set(rng, 3)
        c = random_positive_set(rng, 3)
        grid, family = build_instance(SQUARE, a, b, c)
        report = count_incidences(grid, family)
        assert report.incidences >= len(a) * len(b) * len(c)

    def test_workers_equivalence(self):
        rng = random.Random(11)
        a, b, c = (random_positive_set(rng, k) for k in (5, 4, 4))
        grid, family = build_instance(RECIPROCAL, a, b, c)
        serial = count_incidences(grid, family, workers=1)
        for w in (2, 3, 7):
            assert count_incidences(grid, family, workers=w) == serial

    def test_rich_points_monotone_and_capped(self):
        rng = random.Random(21)
        for _ in range(5):
            a, b, c = (random_positive_set(rng, rng.randint(2, 6)) for _ in range(3))
            grid, family = build_instance(SQUARE, a, b, c)
            report = count_incidences(grid, family, taus=(1, 2, 3, 4))
            rich = report.rich_points
            assert rich[1] >= rich[2] >= rich[3] >= rich[4]
            assert rich[1] <= report.incidences
            assert report.max_point_curves <= min(len(b), len(c))


class TestCurvesPairwiseIntersections:
    def test_square_translates_closed_form(self):
        rng = random.Random(5)
        shifts = [(Fraction(rng.randint(0, 20), rng.randint(1, 4)),
                   Fraction(rng.randint(0, 20), rng.randint(1, 4))) for _ in range(12)]
        for (b1, c1), (b2, c2) in combinations(set(shifts), 2):
            assert square_translate_intersections(b1, c1, b2, c2) <= 1

    def test_reciprocal_translates_closed_form(self):
        rng = random.Random(6)
        shifts = [(Fraction(rng.randint(0, 20), rng.randint(1, 4)),
                   Fraction(rng.randint(0, 20), rng.randint(1, 4))) for _ in range(12)]
        for (b1, c1), (b2, c2) in combinations(set(shifts), 2):
            assert reciprocal_translate_intersections(b1, c1, b2, c2) <= 1

    @pytest.mark.parametrize("fn", [SQUARE, RECIPROCAL, power_fn(3), EXP2])
    def test_no_two_curves_share_two_grid_points(self, fn):
        rng = random.Random(hash(fn.name) & 0xFFF)
        a = NumberSet(rng.sample(range(1, 12), 4))
        b = NumberSet(rng.sample(range(0, 9), 3))
        c = NumberSet(rng.sample(range(0, 9), 3))
        grid, family = build_instance(fn, a, b, c)
        points_on = {shift: set() for shift in family.shifts}
        for x in grid.xs:
            for shift in family.shifts:
                bb, cc = shift
                v = fn.evaluate_on_graph(x - bb)
                if v is not None and (v + cc) in grid.ys:
                    points_on[shift].add((x, v + cc))
        for s1, s2 in combinations(family.shifts, 2):
            assert len(points_on[s1] & points_on[s2]) <= 1


class TestStBound:
    def test_zero_excess_always_holds(self):
        assert st_bound_check(5, 1, 1)
        assert st_bound_check(0, 3, 3)

    def test_violation_detected(self):
        assert not st_bound_check(100, 1, 1)

    def test_boundary_equality(self):
        # P=4, L=2: 4(PL)^(2/3) = 16 exactly; I = 16 + 4P + L hits the bound
        assert st_bound_check(34, 4, 2)
        assert not st_bound_check(35, 4, 2)

    def test_decimal_rendering(self):
        s = st_bound_decimal(9, 1, 30)
        assert s.startswith("54.306994843688900587859659729")

    @given(positive_number_sets(min_size=2, max_size=6),
           positive_number_sets(min_size=1, max_size=4),
           positive_number_sets(min_size=1, max_size=4))
    @settings(max_examples=25)
    def test_holds_on_random_instances(self, a, b, c):
        grid, family = build_instance(SQUARE, a, b, c)
        assert count_incidences(grid, family).st_bound_holds


class TestLevelSetReports:
    def test_tau_one_counts_whole_supports(self):
        a = b = c = nset(*range(1, 9))
        r1 = lemma_st1_ratio(SQUARE, a, b, c, 1)
        from convexlab.functions import apply_fn

        assert r1.lhs == len(sumset(apply_fn(SQUARE, a), c))
        r2 = lemma_st2_ratio(SQUARE, a, b, c, 1)
        assert r2.lhs == len(sumset(a, b))

    def test_tau_above_min_gives_zero(self):
        a = b = c = nset(1, 2, 3)
        r = lemma_st1_ratio(SQUARE, a, b, c, 4)
        assert r.lhs == 0 and r.ratio == 0

    def test_singleton_b_large_tau(self):
        r = lemma_st2_ratio(SQUARE, nset(1, 2, 3), nset(5), nset(1, 2, 3), 2)
        assert r.lhs == 0

    def test_matches_brute_force_sigma(self):
        a = b = c = nset(*range(1, 9))
        from convexlab.functions import apply_fn

        fa = apply_fn(SQUARE, a)
        for tau in (1, 2, 3):
            r = lemma_st1_ratio(SQUARE, a, b, c, tau)
            assert r.lhs == naive_level_count(naive_rep(fa, c, "sum"), tau)
            assert r.hypothesis_ok
            r2 = lemma_st2_ratio(SQUARE, a, b, c, tau)
            assert r2.lhs == naive_level_count(naive_rep(a, b, "sum"), tau)

    def test_hypothesis_flagging(self):
        r = lemma_st1_ratio(SQUARE, nset(1, 2, 3, 4), nset(1), nset(1), 1)
        assert not r.hypothesis_ok and r.flags

    def test_tau_validation(self):
        with pytest.raises(ValueError):
            lemma_st1_ratio(SQUARE, nset(1), nset(1), nset(1), 0)
