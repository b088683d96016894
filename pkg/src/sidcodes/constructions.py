"""Explicit self-identifying codes for the two product families.

Path side (n >= 7): a four-part assembly.  Full boundary columns, three fixed
rows in the columns next to them, a periodic core built from six-vertex
stencils alternating with full columns, and a right-edge block that depends
on n mod 3.  The resulting size is (k + 1) * (m + 3) for n in {3k, 3k + 1}
and (k + 1) * (m + 3) + m for n = 3k + 2, with k = n // 3.

Path side (3 <= n <= 6): the small-case codes whose sizes are the exact
optimum (the solver certifies this at desk scale).

Cycle side (n >= 6): a periodic assembly from analogous stencils, with one
repair: for k even and n = 3k + 1 the raw table leaves row 0 of the appended
full column with a single codeword neighbor, so one extra vertex is added to
restore the two-neighbor condition.  Sizes stay within
ceil(n / 3) * (m + 3) + 3.

Cycle side (n in {3, 4, 5}): tagged as fallback.  n = 3 and n = 5 reuse the
stencil assembly (verified valid); for n = 4 the full vertex set is emitted,
because removing any single vertex breaks self-identification there, making
V the unique self-identifying code.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graphs import ProductGraph, Topology, Vertex, VertexSet, build_product_graph
from .verification import CodeSet


class UnsupportedParametersError(ValueError):
    """Requested (m, n, topology) lies outside the supported construction range."""


class ConstructionFamily(str, Enum):
    PATH_GENERAL = "path-general"
    APPENDIX_SMALL = "appendix-small"
    CYCLE_GENERAL = "cycle-general"
    CYCLE_FALLBACK = "cycle-fallback"


class PatternVariant(str, Enum):
    BASE = "base"
    PRIME = "prime"
    DOUBLE_PRIME = "double-prime"


@dataclass(frozen=True)
class ConstructionPlan:
    """How a constructed code decomposes into named disjoint parts."""

    family: ConstructionFamily
    m: int
    n: int
    k: int
    parity_case: str
    residue_case: int
    parts: dict[str, VertexSet]
    predicted_size: int

    def part_sizes(self) -> dict[str, int]:
        return {name: len(part) for name, part in self.parts.items()}


# ---------------------------------------------------------------------------
# codeword stencils
# ---------------------------------------------------------------------------

def pattern_a(t: int | None, variant: PatternVariant, k: int) -> frozenset[Vertex]:
    """Six-vertex (or three-vertex) stencils used by the path core.

    BASE and PRIME need an odd block index t within range; DOUBLE_PRIME is a
    single cap that only depends on k and needs k >= 3 so its columns are
    nonnegative (paths have no column wraparound).
    """
    if variant is PatternVariant.DOUBLE_PRIME:
        if k < 3:
            raise UnsupportedParametersError(f"cap stencil needs k >= 3, got k={k}")
        return frozenset({(0, 3 * k - 7), (1, 3 * k - 5), (2, 3 * k - 5)})
    if t is None or t % 2 == 0:
        raise UnsupportedParametersError(f"stencil index must be odd, got t={t}")
    if variant is PatternVariant.BASE:
        if not 1 <= t <= k - 3:
            raise UnsupportedParametersError(f"base stencil needs 1 <= t <= k-3, got t={t}, k={k}")
        return frozenset({
            (2, 3 * t - 1),
            (0, 3 * t + 1), (1, 3 * t + 1),
            (0, 3 * t + 2),
            (1, 3 * t + 4), (2, 3 * t + 4),
        })
    if not 1 <= t <= k - 4:
        raise UnsupportedParametersError(f"prime stencil needs 1 <= t <= k-4, got t={t}, k={k}")
    return frozenset({
        (0, 3 * t - 1),
        (1, 3 * t + 1), (2, 3 * t + 1),
        (2, 3 * t + 2),
        (0, 3 * t + 4), (1, 3 * t + 4),
    })


def pattern_b(t: int | None, variant: PatternVariant, k: int, n: int) -> frozenset[Vertex]:
    """Stencils for the cycle core; column indices are reduced mod n."""
    if n < 3:
        raise UnsupportedParametersError(f"cycle stencils need n >= 3, got n={n}")
    if variant is PatternVariant.BASE:
        if t is None or t < 0:
            raise UnsupportedParametersError(f"base stencil needs t >= 0, got t={t}")
        cols = (3 * t, 3 * t + 2, 3 * t + 2, 3 * t + 3, 3 * t + 5, 3 * t + 5)
        rows = (0, 1, 2, 2, 0, 1)
        return frozenset((r, c % n) for r, c in zip(rows, cols))
    if k < 1:
        raise UnsupportedParametersError(f"cycle cap stencils need k >= 1, got k={k}")
    if variant is PatternVariant.PRIME:
        return frozenset((r, (3 * k) % n) for r in (0, 1, 2))
    return frozenset(
        (r, c % n) for r in (0, 1, 2) for c in (3 * k - 3, 3 * k - 1)
    )


def _column(m: int, j: int) -> frozenset[Vertex]:
    return frozenset((i, j) for i in range(m))


# ---------------------------------------------------------------------------
# part assembly (graph-free, so sizes can be computed at any scale)
# ---------------------------------------------------------------------------

def path_code_parts(m: int, n: int) -> dict[str, frozenset[Vertex]]:
    if m < 3 or n < 7:
        raise UnsupportedParametersError(
            f"the general path assembly needs m >= 3 and n >= 7, got ({m}, {n}); "
            "small n is covered by the small-case codes"
        )
    k = n // 3
    parts: dict[str, frozenset[Vertex]] = {}
    parts["S1"] = _column(m, 0) | _column(m, n - 1)
    parts["S2"] = frozenset({(0, 1), (1, 1), (2, 1), (0, n - 2), (1, n - 2), (2, n - 2)})

    core: frozenset[Vertex] = frozenset()
    if k % 2 == 0:
        for t in range(1, k - 2, 2):
            core |= pattern_a(t, PatternVariant.BASE, k)
            core |= _column(m, 3 * t) | _column(m, 3 * t + 3)
    else:
        for t in range(1, k - 3, 2):
            core |= pattern_a(t, PatternVariant.PRIME, k)
            core |= _column(m, 3 * t) | _column(m, 3 * t + 3)
        core |= pattern_a(None, PatternVariant.DOUBLE_PRIME, k)
        core |= _column(m, 3 * k - 6)
    parts["S3"] = core

    r = n - 3 * k
    if r == 0:
        edge = frozenset({(0, n - 3), (1, n - 3), (2, n - 3)}) | _column(m, n - 4)
    elif r == 1:
        edge = frozenset({(2, n - 5), (0, n - 3), (1, n - 3)}) | _column(m, n - 4)
    else:
        edge = (frozenset({(2, n - 6), (0, n - 4), (1, n - 4)})
                | _column(m, n - 5) | _column(m, n - 3))
    parts["S4"] = edge
    return parts


def appendix_code_vertices(m: int, n: int) -> frozenset[Vertex]:
    if m < 3 or not 3 <= n <= 6:
        raise UnsupportedParametersError(
            f"small-case path codes cover m >= 3 and 3 <= n <= 6, got ({m}, {n})"
        )
    rows012 = lambda j: frozenset((r, j) for r in range(3))
    if m == 3:
        if n in (3, 4):
            return frozenset((i, j) for i in range(m) for j in range(n))
        if n == 5:
            return _column(m, 0) | _column(m, 1) | _column(m, 3) | _column(m, 4)
        return (_column(m, 0) | _column(m, 1) | _column(m, 4) | _column(m, 5)
                | frozenset({(2, 2), (2, 3)}))
    if n == 3:
        return _column(m, 0) | _column(m, 2) | rows012(1)
    if n == 4:
        return _column(m, 0) | _column(m, 3) | rows012(1) | rows012(2)
    if m in (4, 5):
        if n == 5:
            tail = frozenset((r, 3) for r in (m - 3, m - 2, m - 1))
            return _column(m, 0) | _column(m, 4) | rows012(1) | tail
        mid = frozenset((i, j) for i in range(3, m) for j in (2, 3))
        return _column(m, 0) | _column(m, 5) | rows012(1) | rows012(4) | mid
    if n == 5:
        tail = frozenset((i, 3) for i in range(3, m))
        return _column(m, 0) | _column(m, 4) | rows012(1) | tail
    return _column(m, 0) | _column(m, 5) | _column(m, 2) | rows012(1) | rows012(4)


def cycle_code_parts(m: int, n: int) -> tuple[dict[str, frozenset[Vertex]], ConstructionFamily]:
    if m < 3 or n < 3:
        raise UnsupportedParametersError(
            f"the cycle assembly needs m >= 3 and n >= 3, got ({m}, {n})"
        )
    k = n // 3
    r = n - 3 * k
    parts: dict[str, frozenset[Vertex]] = {}

    if k == 1:
        if r == 1:
            # Nothing smaller works on a 4-cycle of columns: dropping any
            # vertex leaves (i, j+2) indistinguishable inside the column-j
            # intersection, so the full vertex set is the unique code.
            parts["full"] = frozenset((i, j) for i in range(m) for j in range(n))
            return parts, ConstructionFamily.CYCLE_FALLBACK
        parts["Bdprime"] = pattern_b(None, PatternVariant.DOUBLE_PRIME, k, n)
        parts[f"C{3 * k - 2}"] = _column(m, 3 * k - 2)
        if r == 2:
            parts["Bprime"] = pattern_b(None, PatternVariant.PRIME, k, n)
            parts[f"C{3 * k + 1}"] = _column(m, 3 * k + 1)
        return parts, ConstructionFamily.CYCLE_FALLBACK

    block_indices = range(0, k - 1, 2) if k % 2 == 0 else range(0, k - 2, 2)
    for t in block_indices:
        parts[f"B{t}"] = pattern_b(t, PatternVariant.BASE, k, n)
        parts[f"C{3 * t + 1}"] = _column(m, 3 * t + 1)
        parts[f"C{3 * t + 4}"] = _column(m, 3 * t + 4)
    if k % 2 == 0:
        if r == 1:
            parts[f"C{3 * k}"] = _column(m, 3 * k)
            # Raw table defect: row 0 of the appended column would have the
            # single codeword neighbor (1, 3k-1).  One extra vertex restores
            # two support rows for every vertex of that column.
            parts["patch"] = frozenset({(2, 3 * k - 1)})
        elif r == 2:
            parts["Bprime"] = pattern_b(None, PatternVariant.PRIME, k, n)
            parts[f"C{3 * k + 1}"] = _column(m, 3 * k + 1)
    else:
        parts["Bdprime"] = pattern_b(None, PatternVariant.DOUBLE_PRIME, k, n)
        parts[f"C{3 * k - 2}"] = _column(m, 3 * k - 2)
        if r == 1:
            parts[f"C{3 * k}"] = _column(m, 3 * k)
        elif r == 2:
            parts["Bprime"] = pattern_b(None, PatternVariant.PRIME, k, n)
            parts[f"C{3 * k + 1}"] = _column(m, 3 * k + 1)
    return parts, ConstructionFamily.CYCLE_GENERAL


def construct_vertices(m: int, n: int, topology: Topology | str) -> frozenset[Vertex]:
    """Codeword set only, without building the graph.

    Lets callers evaluate construction sizes and densities at scales where
    materializing all neighborhoods would be wasteful.
    """
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    if topology is Topology.PATH:
        if 3 <= n <= 6:
            return appendix_code_vertices(m, n)
        parts = path_code_parts(m, n)
        out: frozenset[Vertex] = frozenset()
        for part in parts.values():
            out |= part
        return out
    parts, _ = cycle_code_parts(m, n)
    out = frozenset()
    for part in parts.values():
        out |= part
    return out


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def _finalize(graph: ProductGraph, parts: dict[str, frozenset[Vertex]],
              family: ConstructionFamily) -> tuple[CodeSet, ConstructionPlan]:
    vertex_parts: dict[str, VertexSet] = {}
    union = graph.empty_set()
    total = 0
    for name, part in parts.items():
        vs = graph.vertex_set(part)
        if (union & vs).bits:
            raise AssertionError(f"construction parts overlap at {name}")
        union = union | vs
        total += len(vs)
        vertex_parts[name] = vs
    k = graph.n // 3
    plan = ConstructionPlan(
        family=family,
        m=graph.m,
        n=graph.n,
        k=k,
        parity_case="even" if k % 2 == 0 else "odd",
        residue_case=graph.n - 3 * k,
        parts=vertex_parts,
        predicted_size=total,
    )
    assert total == len(union)
    return CodeSet(graph, union), plan


def construct_path_code(m: int, n: int) -> tuple[CodeSet, ConstructionPlan]:
    """General path code for m >= 3, n >= 7."""
    parts = path_code_parts(m, n)
    graph = build_product_graph(m, n, Topology.PATH)
    return _finalize(graph, parts, ConstructionFamily.PATH_GENERAL)


def construct_appendix_code(m: int, n: int) -> tuple[CodeSet, ConstructionPlan]:
    """Small-case path code for m >= 3 and 3 <= n <= 6; optimal size."""
    vertices = appendix_code_vertices(m, n)
    graph = build_product_graph(m, n, Topology.PATH)
    columns = sorted({j for _, j in vertices if all((i, j) in vertices for i in range(m))})
    parts: dict[str, frozenset[Vertex]] = {}
    used: frozenset[Vertex] = frozenset()
    for j in columns:
        parts[f"C{j}"] = _column(m, j)
        used |= parts[f"C{j}"]
    extra = vertices - used
    if extra:
        parts["extra"] = extra
    return _finalize(graph, parts, ConstructionFamily.APPENDIX_SMALL)


def construct_cycle_code(m: int, n: int) -> tuple[CodeSet, ConstructionPlan]:
    """Cycle code for m >= 3, n >= 3.

    n in {3, 4, 5} produces the documented fallback assemblies and the plan
    is tagged accordingly; no size formula is claimed for them.
    """
    parts, family = cycle_code_parts(m, n)
    graph = build_product_graph(m, n, Topology.CYCLE)
    return _finalize(graph, parts, family)


def construct(m: int, n: int, topology: Topology | str) -> tuple[CodeSet, ConstructionPlan]:
    """Dispatch to the right construction for (m, n, topology)."""
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    if m < 3:
        raise UnsupportedParametersError(f"constructions need m >= 3, got m={m}")
    if n < 3:
        raise UnsupportedParametersError(f"constructions need n >= 3, got n={n}")
    if topology is Topology.PATH:
        if n <= 6:
            return construct_appendix_code(m, n)
        return construct_path_code(m, n)
    return construct_cycle_code(m, n)


def predicted_path_size(m: int, n: int) -> int:
    """Closed-form size of the general path code (n >= 7)."""
    k = n // 3
    base = (k + 1) * (m + 3)
    return base + (m if n - 3 * k == 2 else 0)
