"""Direct products of a complete graph with a path or a cycle.

The vertex set is ``{(row, col) : 0 <= row < m, 0 <= col < n}`` where ``row``
indexes the complete-graph side and ``col`` the path/cycle side.  Two vertices
are adjacent exactly when their rows differ *and* their columns are adjacent
in the underlying path or cycle.  Every per-vertex neighborhood, every row and
every column is precomputed as a bitmask over the canonical index
``idx = row * n + col``; all higher layers (verification, constructions,
search) run on that bit representation.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator

Vertex = tuple[int, int]


class DimensionError(ValueError):
    """Raised for out-of-range graph parameters, vertices, rows or columns."""


class Topology(Enum):
    PATH = "path"
    CYCLE = "cycle"

    @classmethod
    def from_string(cls, text: str) -> "Topology":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise DimensionError(f"unknown topology {text!r}; expected 'path' or 'cycle'") from None

    def __str__(self) -> str:
        return self.value


class VertexSet:
    """An immutable subset of the vertices of one (m, n) grid.

    Membership is a single integer bitmask over canonical indices, so the
    usual set algebra is one machine operation per word.  Binary operations
    require both operands to live over the same (m, n) dimensions.
    """

    __slots__ = ("m", "n", "bits")

    def __init__(self, m: int, n: int, bits: int = 0):
        if m < 1 or n < 1:
            raise DimensionError(f"invalid dimensions ({m}, {n})")
        universe = (1 << (m * n)) - 1
        if bits & ~universe:
            raise DimensionError("membership bits outside the (m, n) universe")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("VertexSet is immutable")

    @classmethod
    def from_vertices(cls, m: int, n: int, vertices: Iterable[Vertex]) -> "VertexSet":
        bits = 0
        for i, j in vertices:
            if not (0 <= i < m and 0 <= j < n):
                raise DimensionError(f"vertex ({i}, {j}) outside a {m} x {n} graph")
            bits |= 1 << (i * n + j)
        return cls(m, n, bits)

    def _check_dims(self, other: "VertexSet") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionError("vertex sets live over different graph dimensions")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check_dims(other)
        return VertexSet(self.m, self.n, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check_dims(other)
        return VertexSet(self.m, self.n, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check_dims(other)
        return VertexSet(self.m, self.n, self.bits & ~other.bits)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._check_dims(other)
        return VertexSet(self.m, self.n, self.bits ^ other.bits)

    def complement(self) -> "VertexSet":
        universe = (1 << (self.m * self.n)) - 1
        return VertexSet(self.m, self.n, self.bits ^ universe)

    def __contains__(self, vertex: Vertex) -> bool:
        i, j = vertex
        if not (0 <= i < self.m and 0 <= j < self.n):
            return False
        return bool(self.bits >> (i * self.n + j) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[Vertex]:
        bits = self.bits
        while bits:
            low = bits & -bits
            idx = low.bit_length() - 1
            yield divmod(idx, self.n)
            bits ^= low

    def vertices(self) -> list[Vertex]:
        """Members sorted by canonical index."""
        return list(self)

    def issubset(self, other: "VertexSet") -> bool:
        self._check_dims(other)
        return not (self.bits & ~other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return (self.m, self.n, self.bits) == (other.m, other.n, other.bits)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet(m={self.m}, n={self.n}, {{{', '.join(map(str, self))}}})"


class ProductGraph:
    """Immutable K_m x P_n or K_m x C_n with precomputed neighborhoods.

    Instances are safe to share across workers: every attribute is filled in
    once by :func:`build_product_graph` and only read afterwards.
    """

    __slots__ = (
        "m", "n", "topology", "num_vertices", "universe",
        "row_bits", "col_bits", "open_bits", "closed_bits", "edge_count",
    )

    def __init__(self, m: int, n: int, topology: Topology):
        self.m = m
        self.n = n
        self.topology = topology
        self.num_vertices = m * n
        self.universe = (1 << (m * n)) - 1

        self.row_bits = tuple(
            sum(1 << (i * n + j) for j in range(n)) for i in range(m)
        )
        self.col_bits = tuple(
            sum(1 << (i * n + j) for i in range(m)) for j in range(n)
        )

        open_bits = []
        for i in range(m):
            for j in range(n):
                if topology is Topology.PATH:
                    adjacent_cols = [c for c in (j - 1, j + 1) if 0 <= c < n]
                else:
                    adjacent_cols = sorted({(j - 1) % n, (j + 1) % n} - {j})
                mask = 0
                for c in adjacent_cols:
                    mask |= self.col_bits[c]
                mask &= ~self.row_bits[i]
                open_bits.append(mask)
        self.open_bits = tuple(open_bits)
        self.closed_bits = tuple(
            mask | (1 << idx) for idx, mask in enumerate(open_bits)
        )
        self.edge_count = sum(mask.bit_count() for mask in open_bits) // 2

    # -- canonical indexing -------------------------------------------------

    def index(self, vertex: Vertex) -> int:
        i, j = vertex
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise DimensionError(f"vertex ({i}, {j}) outside {self.describe()}")
        return i * self.n + j

    def vertex_at(self, idx: int) -> Vertex:
        if not (0 <= idx < self.num_vertices):
            raise DimensionError(f"index {idx} outside {self.describe()}")
        return divmod(idx, self.n)

    def vertices(self) -> Iterator[Vertex]:
        for idx in range(self.num_vertices):
            yield divmod(idx, self.n)

    # -- structure queries ---------------------------------------------------

    def closed_neighborhood(self, vertex: Vertex) -> VertexSet:
        return VertexSet(self.m, self.n, self.closed_bits[self.index(vertex)])

    def open_neighborhood(self, vertex: Vertex) -> VertexSet:
        return VertexSet(self.m, self.n, self.open_bits[self.index(vertex)])

    def degree(self, vertex: Vertex) -> int:
        return self.open_bits[self.index(vertex)].bit_count()

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return bool(self.open_bits[self.index(u)] >> self.index(v) & 1)

    def column(self, j: int) -> VertexSet:
        if self.topology is Topology.CYCLE:
            j %= self.n
        elif not (0 <= j < self.n):
            raise DimensionError(f"column {j} outside {self.describe()}")
        return VertexSet(self.m, self.n, self.col_bits[j])

    def row(self, i: int) -> VertexSet:
        if not (0 <= i < self.m):
            raise DimensionError(f"row {i} outside {self.describe()}")
        return VertexSet(self.m, self.n, self.row_bits[i])

    def full_set(self) -> VertexSet:
        return VertexSet(self.m, self.n, self.universe)

    def empty_set(self) -> VertexSet:
        return VertexSet(self.m, self.n, 0)

    def vertex_set(self, vertices: Iterable[Vertex]) -> VertexSet:
        return VertexSet.from_vertices(self.m, self.n, vertices)

    def describe(self) -> str:
        side = "P" if self.topology is Topology.PATH else "C"
        return f"K{self.m} x {side}{self.n}"

    def __repr__(self) -> str:
        return f"ProductGraph({self.describe()})"


def build_product_graph(m: int, n: int, topology: Topology | str) -> ProductGraph:
    """Build the product graph, validating the dimension preconditions.

    Paths need n >= 2, cycles n >= 3 (a shorter cycle is not a simple graph).
    m = 1 and m = 2 are allowed so that degenerate cases can be probed even
    though most code properties only become interesting from m = 3 on.
    """
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    if m < 1:
        raise DimensionError(f"m must be >= 1, got {m}")
    if topology is Topology.PATH and n < 2:
        raise DimensionError(f"paths need n >= 2, got n={n}")
    if topology is Topology.CYCLE and n < 3:
        raise DimensionError(f"cycles need n >= 3, got n={n}")
    return ProductGraph(m, n, topology)


def _permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def is_automorphism(graph: ProductGraph, perm: tuple[int, ...]) -> bool:
    """Exhaustively check that ``perm`` preserves the adjacency relation."""
    if sorted(perm) != list(range(graph.num_vertices)):
        return False
    for idx in range(graph.num_vertices):
        if _permute_mask(graph.open_bits[idx], perm) != graph.open_bits[perm[idx]]:
            return False
    return True


def automorphism_generators(graph: ProductGraph) -> list[tuple[int, ...]]:
    """Generators of the obvious symmetry group, each verified before return.

    Row side: adjacent-row transpositions (any relabelling of the complete
    graph is an automorphism).  Column side: reversal for paths, rotation and
    reflection for cycles.  Every permutation is checked against the adjacency
    relation; a failure would mean a bug, so it raises.
    """
    m, n = graph.m, graph.n
    generators: list[tuple[int, ...]] = []

    def by_coords(image):
        return tuple(image(*divmod(idx, n)) for idx in range(m * n))

    for a in range(m - 1):
        b = a + 1
        swap = {a: b, b: a}
        generators.append(by_coords(lambda i, j, s=swap: s.get(i, i) * n + j))
    if graph.topology is Topology.PATH:
        generators.append(by_coords(lambda i, j: i * n + (n - 1 - j)))
    else:
        generators.append(by_coords(lambda i, j: i * n + (j + 1) % n))
        generators.append(by_coords(lambda i, j: i * n + (-j) % n))

    for perm in generators:
        if not is_automorphism(graph, perm):  # pragma: no cover - invariant
            raise RuntimeError("generated permutation fails the adjacency check")
    return generators
