import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sidcodes.graphs import Topology, build_product_graph
from sidcodes.verification import (
    CodeSet,
    TopologyMismatchError,
    audit_necessary_cycle,
    audit_necessary_path,
    check_degree_condition,
    check_sufficient_cycle,
    check_sufficient_path,
    is_dominating,
    is_identifying,
    is_self_identifying_def1,
    is_self_identifying_def2,
    verify_code,
)

K3P3 = build_product_graph(3, 3, Topology.PATH)
K3P4 = build_product_graph(3, 4, Topology.PATH)
K3P5 = build_product_graph(3, 5, Topology.PATH)
K3C3 = build_product_graph(3, 3, Topology.CYCLE)
K3C4 = build_product_graph(3, 4, Topology.CYCLE)


def subsets_strategy(graph):
    return st.integers(min_value=0, max_value=graph.universe).map(
        lambda bits: CodeSet.from_bits(graph, bits)
    )


class TestDominating:
    def test_full_set_dominates(self):
        assert is_dominating(CodeSet(K3P4, K3P4.full_set())).holds

    def test_empty_set_fails_with_first_witness(self):
        res = is_dominating(CodeSet(K3P3, K3P3.empty_set()))
        assert not res.holds and res.witness == ((0, 0),)

    def test_single_column_leaves_far_vertices_undominated(self):
        code = CodeSet(K3P5, K3P5.column(0))
        res = is_dominating(code)
        assert not res.holds
        # scan order gives the first undominated vertex, which sits in column 2
        assert res.witness[0][1] >= 2


class TestIdentifying:
    def test_full_sets(self):
        assert is_identifying(CodeSet(K3P4, K3P4.full_set())).holds
        assert is_identifying(CodeSet(K3C3, K3C3.full_set())).holds

    def test_singleton_fails(self):
        res = is_identifying(CodeSet.from_vertices(K3P3, [(0, 0)]))
        assert not res.holds

    def test_exhaustive_pair_oracle(self):
        # brute-force the separation property independently on K3xP3
        g = K3P3
        for bits in range(0, 1 << 9, 7):  # sampled lattice of subsets
            code = CodeSet.from_bits(g, bits)
            verts = list(g.vertices())
            dominated = all(g.closed_bits[g.index(v)] & bits for v in verts)
            separated = True
            for a in range(len(verts)):
                for b in range(a + 1, len(verts)):
                    ta = g.closed_bits[g.index(verts[a])] & bits
                    tb = g.closed_bits[g.index(verts[b])] & bits
                    if ta == tb:
                        separated = False
            assert is_identifying(code).holds == (dominated and separated and bits != 0)


class TestSelfIdentifying:
    def test_full_vertex_sets(self):
        assert is_self_identifying_def1(CodeSet(K3P3, K3P3.full_set())).holds
        g = build_product_graph(5, 5, Topology.PATH)
        assert is_self_identifying_def1(CodeSet(g, g.full_set())).holds
        assert is_self_identifying_def2(CodeSet(K3C4, K3C4.full_set())).holds

    def test_single_code_neighbor_fails(self):
        code = CodeSet.from_vertices(K3P3, [(1, 1), (0, 0)])
        res = is_self_identifying_def1(code)
        assert not res.holds

    def test_empty_set_fails_both_forms(self):
        code = CodeSet(K3P3, K3P3.empty_set())
        assert not is_self_identifying_def1(code).holds
        assert not is_self_identifying_def2(code).holds

    @pytest.mark.parametrize("graph", [K3P3, K3C3], ids=["K3P3", "K3C3"])
    def test_definitions_agree_exhaustively(self, graph):
        for bits in range(1 << graph.num_vertices):
            code = CodeSet.from_bits(graph, bits)
            assert is_self_identifying_def1(code).holds == is_self_identifying_def2(code).holds

    def test_full_sets_valid_for_all_small_mn(self):
        for m in range(3, 9):
            for n in range(3, 9):
                for topology in (Topology.PATH, Topology.CYCLE):
                    g = build_product_graph(m, n, topology)
                    assert is_self_identifying_def1(CodeSet(g, g.full_set())).holds, (m, n, topology)

    def test_leafy_products_not_self_identifiable_with_full_set(self):
        for n in (2, 3, 5):
            g = build_product_graph(2, n, Topology.PATH)
            assert not is_self_identifying_def1(CodeSet(g, g.full_set())).holds

    @settings(max_examples=200, derandomize=True)
    @given(bits=st.integers(min_value=0, max_value=K3P4.universe))
    def test_hierarchy(self, bits):
        code = CodeSet.from_bits(K3P4, bits)
        sid = is_self_identifying_def1(code).holds
        ident = is_identifying(code).holds
        dom = is_dominating(code).holds
        if sid:
            assert ident
        if ident:
            assert dom

    @settings(max_examples=200, derandomize=True)
    @given(
        bits=st.integers(min_value=0, max_value=K3P4.universe),
        extra=st.integers(min_value=0, max_value=K3P4.universe),
    )
    def test_monotonicity(self, bits, extra):
        small = CodeSet.from_bits(K3P4, bits)
        large = CodeSet.from_bits(K3P4, bits | extra)
        if is_self_identifying_def2(small).holds:
            assert is_self_identifying_def2(large).holds

    def test_witness_deterministic(self):
        code = CodeSet(K3P5, K3P5.empty_set())
        first = is_self_identifying_def1(code)
        second = is_self_identifying_def1(code)
        assert first == second


class TestDegreeCondition:
    def test_full_set_passes(self):
        assert check_degree_condition(CodeSet(K3P4, K3P4.full_set())).holds

    def test_two_columns_fail_far_away(self):
        code = CodeSet(K3P5, K3P5.column(0) | K3P5.column(1))
        res = check_degree_condition(code)
        assert not res.holds and res.witness[0][1] >= 3

    def test_necessary_for_self_identifying_on_connected_graphs(self):
        g = K3P4
        for bits in range(1 << g.num_vertices):
            code = CodeSet.from_bits(g, bits)
            if is_self_identifying_def1(code).holds:
                assert check_degree_condition(code).holds


class TestSufficientConditions:
    def test_construction_passes(self):
        from sidcodes.constructions import construct

        code, _ = construct(3, 9, Topology.PATH)
        assert check_sufficient_path(code).holds
        code, _ = construct(3, 6, Topology.CYCLE)
        assert check_sufficient_cycle(code).holds

    def test_full_sets_pass(self):
        assert check_sufficient_path(CodeSet(K3P5, K3P5.full_set())).holds
        g = build_product_graph(4, 5, Topology.CYCLE)
        assert check_sufficient_cycle(CodeSet(g, g.full_set())).holds

    def test_boundary_only_fails(self):
        g = build_product_graph(3, 7, Topology.PATH)
        code = CodeSet(g, g.column(0) | g.column(6))
        assert not check_sufficient_path(code).holds

    def test_single_column_cycle_fails(self):
        g = build_product_graph(3, 6, Topology.CYCLE)
        assert not check_sufficient_cycle(CodeSet(g, g.column(0))).holds

    def test_wrong_topology_raises(self):
        with pytest.raises(TopologyMismatchError):
            check_sufficient_path(CodeSet(K3C3, K3C3.full_set()))
        with pytest.raises(TopologyMismatchError):
            check_sufficient_cycle(CodeSet(K3P5, K3P5.full_set()))

    def test_missing_boundary_vertex_rejected(self):
        # the local criterion must reject V minus one boundary vertex, which
        # is not self-identifying despite satisfying the interior conditions
        g = K3P5
        code = CodeSet(g, g.full_set() - g.vertex_set([(0, 0)]))
        assert not is_self_identifying_def1(code).holds
        assert not check_sufficient_path(code).holds

    @pytest.mark.parametrize(
        "m,n,topology",
        [
            (3, 5, Topology.PATH), (4, 6, Topology.PATH), (5, 8, Topology.PATH),
            (3, 3, Topology.CYCLE), (3, 4, Topology.CYCLE), (4, 5, Topology.CYCLE),
            (3, 7, Topology.CYCLE), (5, 6, Topology.CYCLE),
        ],
    )
    def test_soundness_on_random_subsets(self, m, n, topology):
        g = build_product_graph(m, n, topology)
        check = check_sufficient_path if topology is Topology.PATH else check_sufficient_cycle
        rng = random.Random(1234)
        for _ in range(4000):
            code = CodeSet.from_bits(g, rng.getrandbits(g.num_vertices))
            if check(code).holds:
                assert is_self_identifying_def1(code).holds


class TestAudits:
    def test_valid_codes_pass_applicable_conditions(self):
        from sidcodes.constructions import construct

        for m, n in [(3, 7), (4, 9), (5, 12)]:
            code, _ = construct(m, n, Topology.PATH)
            report = audit_necessary_path(code)
            assert report.is_self_identifying
            assert report.all_hold(), report.violations
        for m, n in [(3, 6), (4, 9), (3, 12)]:
            code, _ = construct(m, n, Topology.CYCLE)
            report = audit_necessary_cycle(code)
            assert report.all_hold(), report.violations

    def test_deleting_boundary_vertex_reports_violation(self):
        from sidcodes.constructions import construct

        code, _ = construct(3, 9, Topology.PATH)
        damaged = CodeSet(code.graph, code.members - code.graph.vertex_set([(0, 0)]))
        report = audit_necessary_path(damaged)
        assert not report.is_self_identifying
        assert not report.conditions["boundary_columns"].holds
        assert ("boundary_columns", ((0, 0),)) in report.violations

    def test_triple_column_counts_on_construction(self):
        from sidcodes.constructions import construct

        code, _ = construct(3, 9, Topology.PATH)
        g, bits = code.graph, code.bits
        for j in range(3, 6):
            triple = g.col_bits[j - 1] | g.col_bits[j] | g.col_bits[j + 1]
            assert (triple & bits).bit_count() >= g.m + 2

        code, _ = construct(3, 6, Topology.CYCLE)
        g, bits = code.graph, code.bits
        for j in range(6):
            triple = g.col_bits[(j - 1) % 6] | g.col_bits[j] | g.col_bits[(j + 1) % 6]
            assert (triple & bits).bit_count() >= g.m + 2

    def test_exhaustive_necessity_on_k3p5(self):
        # every self-identifying subset satisfies every audited condition
        g = K3P5
        checked = 0
        for bits in range(1 << g.num_vertices):
            code = CodeSet.from_bits(g, bits)
            if is_self_identifying_def1(code).holds:
                report = audit_necessary_path(code)
                assert report.all_hold(), (bin(bits), report.violations)
                checked += 1
        assert checked > 0

    def test_wrong_topology(self):
        with pytest.raises(TopologyMismatchError):
            audit_necessary_path(CodeSet(K3C3, K3C3.full_set()))
        with pytest.raises(TopologyMismatchError):
            audit_necessary_cycle(CodeSet(K3P5, K3P5.full_set()))


class TestReport:
    def test_flags_and_json(self):
        report = verify_code(CodeSet(K3P4, K3P4.full_set()))
        assert report.is_dominating and report.is_identifying
        assert report.is_self_identifying and report.degree_condition_holds
        payload = report.to_json()
        assert payload["self_identifying"] == {"holds": True, "witnesses": []}

    def test_every_false_flag_has_witness(self):
        report = verify_code(CodeSet(K3P4, K3P4.empty_set()))
        names = {name for name, _ in report.violations}
        assert {"dominating", "identifying", "self_identifying", "degree_condition"} <= names
        for name, witnesses in report.violations:
            assert witnesses
