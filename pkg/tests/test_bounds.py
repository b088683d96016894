from fractions import Fraction

import pytest

from sidcodes.bounds import (
    bounds_record,
    compare_gamma_id,
    density_profile,
    exact_small_value,
    fixed_m_density_limits,
    lower_bound,
    sweep_rows,
    upper_bound,
)
from sidcodes.constructions import construct_vertices
from sidcodes.graphs import Topology


class TestFormulas:
    def test_lower_bound_values(self):
        assert lower_bound(3, 7, Topology.PATH) == 13
        assert lower_bound(3, 6, Topology.CYCLE) == 10
        assert lower_bound(4, 9, Topology.CYCLE) == 18

    def test_upper_bound_values(self):
        assert upper_bound(3, 7, Topology.PATH) == 21
        assert upper_bound(3, 6, Topology.CYCLE) == 15
        assert upper_bound(3, 3, Topology.PATH) == 9  # exact value substituted

    def test_small_path_bounds_collapse_to_exact(self):
        for m in range(3, 9):
            for n in range(3, 7):
                exact = exact_small_value(m, n)
                assert lower_bound(m, n, Topology.PATH) == exact
                assert upper_bound(m, n, Topology.PATH) == exact

    def test_exact_small_values(self):
        assert [exact_small_value(3, n) for n in range(3, 7)] == [9, 12, 12, 14]
        assert exact_small_value(3, 4) == 12
        assert exact_small_value(5, 6) == 20
        assert exact_small_value(7, 5) == 21
        assert exact_small_value(4, 3) == 11
        assert exact_small_value(3, 7) is None
        assert exact_small_value(2, 4) is None

    def test_range_errors(self):
        with pytest.raises(ValueError):
            lower_bound(2, 8, Topology.PATH)
        with pytest.raises(ValueError):
            upper_bound(3, 2, Topology.CYCLE)


class TestSandwich:
    def test_construction_between_bounds_paths(self):
        for m in range(3, 11):
            for n in range(7, 31):
                size = len(construct_vertices(m, n, Topology.PATH))
                assert lower_bound(m, n, Topology.PATH) <= size <= upper_bound(m, n, Topology.PATH)

    def test_construction_between_bounds_cycles(self):
        # n = 4 is exceptional: the only self-identifying code is the full
        # vertex set, whose 4m vertices exceed the formula upper bound once
        # m >= 5; the acceptance suite tracks that discrepancy explicitly.
        for m in range(3, 11):
            for n in range(3, 31):
                if n == 4 and m >= 5:
                    continue
                size = len(construct_vertices(m, n, Topology.CYCLE))
                assert lower_bound(m, n, Topology.CYCLE) <= size <= upper_bound(m, n, Topology.CYCLE)

    def test_record_invariants(self):
        for m, n, topo in [(3, 8, Topology.PATH), (3, 5, Topology.PATH), (4, 9, Topology.CYCLE)]:
            rec = bounds_record(m, n, topo)
            assert rec.lower <= rec.upper
            if rec.exact is not None:
                assert rec.lower <= rec.exact <= rec.upper
            assert rec.density_lower == Fraction(rec.lower, m * n)
            assert rec.density_upper == Fraction(rec.upper, m * n)
            assert set(rec.source) >= {"lower", "upper"}


class TestDensity:
    def test_profile_rows_are_exact_rationals(self):
        rows = density_profile(3, 15, Topology.CYCLE)
        assert rows[0].n == 3 and rows[-1].n == 15
        for row in rows:
            assert isinstance(row.density_lower, Fraction)
            assert row.density_lower <= row.density_construction <= row.density_upper

    def test_profile_path(self):
        rows = density_profile(4, 20, Topology.PATH)
        for row in rows:
            assert row.density_lower <= row.density_construction <= row.density_upper

    def test_cycle_density_lower_formula(self):
        rows = {r.n: r for r in density_profile(3, 30, Topology.CYCLE)}
        assert rows[30].density_lower == Fraction(10 * 5, 90)

    def test_fixed_m_limits(self):
        lo, hi = fixed_m_density_limits(3)
        assert lo == Fraction(5, 9) and hi == Fraction(6, 9)
        for m in (3, 10, 30, 100):
            lo, hi = fixed_m_density_limits(m)
            assert lo - Fraction(1, 3) == Fraction(2, 3 * m)
            assert hi - Fraction(1, 3) == Fraction(1, m)
        # exact agreement of the n-limit with the closed form on a multiple of 3
        m, n = 10, 3000
        assert Fraction(lower_bound(m, n, Topology.CYCLE), m * n) == fixed_m_density_limits(m)[0]

    def test_big_m_construction_density_near_one_third(self):
        m, n = 100, 300
        density = Fraction(len(construct_vertices(m, n, Topology.CYCLE)), m * n)
        assert Fraction(1, 3) - Fraction(1, 1000) <= density <= Fraction(1, 3) + Fraction(5, 100)

    def test_range_error(self):
        with pytest.raises(ValueError):
            density_profile(3, 5, Topology.PATH)


class TestSweepRows:
    def test_row_shape_and_order(self):
        rows = sweep_rows(range(3, 5), range(7, 10), Topology.PATH)
        assert len(rows) == 6
        assert [(r["m"], r["n"]) for r in rows] == [(3, 7), (3, 8), (3, 9), (4, 7), (4, 8), (4, 9)]
        for row in rows:
            assert row["lower"] <= row["construction"] <= row["upper"]
            assert row["topology"] == "path"

    def test_small_n_rows_carry_exact(self):
        rows = sweep_rows([3], range(3, 7), Topology.PATH)
        assert [r["exact"] for r in rows] == [9, 12, 12, 14]


class TestCompareGammaId:
    def test_k3p3(self):
        gamma_id, gamma_sid = compare_gamma_id(3, 3, Topology.PATH)
        assert gamma_sid == 9
        assert gamma_id <= gamma_sid

    def test_k3c3(self):
        gamma_id, gamma_sid = compare_gamma_id(3, 3, Topology.CYCLE)
        assert gamma_id <= gamma_sid

    def test_budget_error(self):
        from sidcodes.bounds import BudgetExceededError
        from sidcodes.solver import SolveBudget

        with pytest.raises(BudgetExceededError):
            compare_gamma_id(6, 8, Topology.PATH, SolveBudget(max_nodes=50))
