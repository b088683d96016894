import itertools

import pytest

from sidcodes.graphs import (
    DimensionError,
    Topology,
    VertexSet,
    automorphism_generators,
    build_product_graph,
    is_automorphism,
)


def adjacent_by_definition(m, n, topology, u, v):
    """Oracle: the defining adjacency rule, written independently."""
    (i1, j1), (i2, j2) = u, v
    if i1 == i2:
        return False
    if topology is Topology.PATH:
        return abs(j1 - j2) == 1
    return (j1 - j2) % n in (1, n - 1)


def count_edges_exhaustively(m, n, topology):
    verts = [(i, j) for i in range(m) for j in range(n)]
    return sum(
        1 for u, v in itertools.combinations(verts, 2)
        if adjacent_by_definition(m, n, topology, u, v)
    )


class TestBuild:
    def test_edge_count_examples(self):
        assert build_product_graph(3, 4, Topology.PATH).edge_count == 18
        assert build_product_graph(1, 5, Topology.PATH).edge_count == 0
        assert build_product_graph(3, 3, Topology.CYCLE).edge_count == 18

    def test_vertex_count(self):
        g = build_product_graph(3, 4, Topology.PATH)
        assert g.num_vertices == 12
        assert len(list(g.vertices())) == 12

    @pytest.mark.parametrize("m", range(1, 7))
    @pytest.mark.parametrize("n", range(2, 11))
    def test_edge_formula_matches_exhaustive_count(self, m, n):
        g = build_product_graph(m, n, Topology.PATH)
        assert g.edge_count == count_edges_exhaustively(m, n, Topology.PATH)
        assert g.edge_count == m * (m - 1) * (n - 1)
        if n >= 3:
            g = build_product_graph(m, n, Topology.CYCLE)
            assert g.edge_count == count_edges_exhaustively(m, n, Topology.CYCLE)
            assert g.edge_count == m * (m - 1) * n

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            build_product_graph(0, 4, Topology.PATH)
        with pytest.raises(DimensionError):
            build_product_graph(3, 1, Topology.PATH)
        with pytest.raises(DimensionError):
            build_product_graph(3, 2, Topology.CYCLE)
        with pytest.raises(DimensionError):
            Topology.from_string("torus")

    def test_adjacency_symmetric_irreflexive(self):
        for topology, n0 in ((Topology.PATH, 2), (Topology.CYCLE, 3)):
            for m, n in itertools.product((1, 2, 3, 4), range(n0, 7)):
                g = build_product_graph(m, n, topology)
                for u in g.vertices():
                    assert not g.adjacent(u, u)
                    for v in g.vertices():
                        assert g.adjacent(u, v) == g.adjacent(v, u)
                        assert g.adjacent(u, v) == adjacent_by_definition(m, n, topology, u, v)


class TestNeighborhoods:
    def test_closed_neighborhood_examples(self):
        g = build_product_graph(3, 4, Topology.PATH)
        assert set(g.closed_neighborhood((0, 0))) == {(0, 0), (1, 1), (2, 1)}
        assert set(g.closed_neighborhood((0, 1))) == {(0, 1), (1, 0), (2, 0), (1, 2), (2, 2)}
        g = build_product_graph(3, 3, Topology.CYCLE)
        assert set(g.closed_neighborhood((0, 0))) == {(0, 0), (1, 1), (2, 1), (1, 2), (2, 2)}

    def test_closed_neighborhood_contains_vertex_size_degree(self):
        for topology, n0 in ((Topology.PATH, 2), (Topology.CYCLE, 3)):
            g = build_product_graph(4, max(n0, 5), topology)
            for v in g.vertices():
                nb = g.closed_neighborhood(v)
                assert v in nb
                assert len(nb) == g.degree(v) + 1

    def test_path_degrees(self):
        g = build_product_graph(5, 6, Topology.PATH)
        m = g.m
        for i, j in g.vertices():
            expected = (m - 1) if j in (0, g.n - 1) else 2 * (m - 1)
            assert g.degree((i, j)) == expected

    def test_internal_neighborhood_within_adjacent_columns(self):
        g = build_product_graph(4, 7, Topology.PATH)
        for j in range(1, g.n - 1):
            for i in range(g.m):
                nb = g.closed_neighborhood((i, j))
                allowed = g.column(j - 1) | g.column(j + 1) | g.vertex_set([(i, j)])
                assert nb.issubset(allowed)

    def test_out_of_range_vertex(self):
        g = build_product_graph(3, 4, Topology.PATH)
        with pytest.raises(DimensionError):
            g.closed_neighborhood((3, 0))
        with pytest.raises(DimensionError):
            g.closed_neighborhood((0, 4))


class TestRowsColumns:
    def test_column_examples(self):
        g = build_product_graph(3, 4, Topology.PATH)
        assert set(g.column(0)) == {(0, 0), (1, 0), (2, 0)}
        g = build_product_graph(3, 6, Topology.CYCLE)
        assert g.column(-1) == g.column(5)
        g = build_product_graph(4, 5, Topology.PATH)
        assert len(g.column(2)) == 4

    def test_row_examples(self):
        g = build_product_graph(3, 4, Topology.PATH)
        assert set(g.row(0)) == {(0, 0), (0, 1), (0, 2), (0, 3)}
        g = build_product_graph(5, 3, Topology.CYCLE)
        assert len(g.row(4)) == 3

    def test_rows_and_columns_partition(self):
        for topology, n in ((Topology.PATH, 7), (Topology.CYCLE, 6)):
            g = build_product_graph(4, n, topology)
            cols = [g.column(j) for j in range(g.n)]
            rows = [g.row(i) for i in range(g.m)]
            assert all(len(c) == g.m for c in cols)
            assert all(len(r) == g.n for r in rows)
            union = g.empty_set()
            for c in cols:
                assert len(union & c) == 0
                union = union | c
            assert union == g.full_set()
            union = g.empty_set()
            for r in rows:
                assert len(union & r) == 0
                union = union | r
            assert union == g.full_set()

    def test_path_column_out_of_range(self):
        g = build_product_graph(3, 4, Topology.PATH)
        with pytest.raises(DimensionError):
            g.column(4)
        with pytest.raises(DimensionError):
            g.row(3)


class TestCanonicalIndex:
    def test_index_bijection(self):
        g = build_product_graph(4, 6, Topology.PATH)
        seen = set()
        for v in g.vertices():
            idx = g.index(v)
            assert g.vertex_at(idx) == v
            assert idx == v[0] * g.n + v[1]
            seen.add(idx)
        assert seen == set(range(g.num_vertices))


class TestVertexSet:
    def test_algebra(self):
        a = VertexSet.from_vertices(3, 4, [(0, 0), (1, 1)])
        b = VertexSet.from_vertices(3, 4, [(1, 1), (2, 3)])
        assert set(a | b) == {(0, 0), (1, 1), (2, 3)}
        assert set(a & b) == {(1, 1)}
        assert set(a - b) == {(0, 0)}
        assert set(a ^ b) == {(0, 0), (2, 3)}
        assert len(a.complement()) == 10
        assert (0, 0) in a and (0, 1) not in a

    def test_dimension_mismatch(self):
        a = VertexSet.from_vertices(3, 4, [(0, 0)])
        b = VertexSet.from_vertices(3, 5, [(0, 0)])
        with pytest.raises(DimensionError):
            a | b

    def test_out_of_range_member(self):
        with pytest.raises(DimensionError):
            VertexSet.from_vertices(3, 4, [(3, 0)])

    def test_iteration_sorted_by_canonical_index(self):
        s = VertexSet.from_vertices(3, 4, [(2, 3), (0, 1), (1, 0)])
        assert s.vertices() == [(0, 1), (1, 0), (2, 3)]


class TestAutomorphisms:
    def test_path_generator_count(self):
        g = build_product_graph(3, 5, Topology.PATH)
        gens = automorphism_generators(g)
        assert len(gens) == 3  # two row swaps + reversal

    def test_cycle_generator_count(self):
        g = build_product_graph(3, 6, Topology.CYCLE)
        gens = automorphism_generators(g)
        assert len(gens) == 4  # two row swaps + rotation + reflection

    @pytest.mark.parametrize(
        "m,n,topology",
        [(4, 4, Topology.PATH), (3, 5, Topology.PATH), (3, 6, Topology.CYCLE), (4, 3, Topology.CYCLE)],
    )
    def test_generators_preserve_adjacency_exhaustively(self, m, n, topology):
        g = build_product_graph(m, n, topology)
        for perm in automorphism_generators(g):
            for u in g.vertices():
                for v in g.vertices():
                    pu = g.vertex_at(perm[g.index(u)])
                    pv = g.vertex_at(perm[g.index(v)])
                    assert g.adjacent(u, v) == g.adjacent(pu, pv)

    def test_non_automorphism_rejected(self):
        g = build_product_graph(3, 4, Topology.PATH)
        ident = list(range(g.num_vertices))
        ident[0], ident[1] = ident[1], ident[0]  # swap (0,0) and (0,1): not an automorphism
        assert not is_automorphism(g, tuple(ident))
