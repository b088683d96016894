"""Code-property checks for vertex subsets of the product graphs.

Three nested properties are decided exactly from the definitions:

* dominating set: every vertex has a codeword in its closed neighborhood;
* identifying code: dominating, and the traces ``N[v] & S`` are pairwise
  distinct;
* self-identifying code: every vertex v is the *only* vertex lying in all
  closed neighborhoods of its codeword neighbors, i.e.
  ``intersection(N[c] for c in N[v] & S) == {v}``.

The self-identifying property has an equivalent pairwise form: for every
ordered pair of distinct vertices ``(u, v)``, ``(N[u] & S) - N[v]`` is
nonempty.  Both forms are implemented independently and their agreement is
exercised exhaustively in the test suite.

On top of the exact checks, this module provides the structural conditions a
self-identifying code forces on columns of the product (the "necessary"
audits) and a cheap local criterion that certifies a set *is* self-identifying
without running the definition (the "sufficient" checks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import ProductGraph, Topology, Vertex, VertexSet


class TopologyMismatchError(ValueError):
    """A path-only or cycle-only operation was applied to the other topology."""


@dataclass(frozen=True)
class CodeSet:
    """A candidate code: a vertex subset over a specific product graph."""

    graph: ProductGraph
    members: VertexSet

    def __post_init__(self):
        if (self.members.m, self.members.n) != (self.graph.m, self.graph.n):
            raise ValueError("member set does not match the graph dimensions")

    @classmethod
    def from_vertices(cls, graph: ProductGraph, vertices) -> "CodeSet":
        return cls(graph, graph.vertex_set(vertices))

    @classmethod
    def from_bits(cls, graph: ProductGraph, bits: int) -> "CodeSet":
        return cls(graph, VertexSet(graph.m, graph.n, bits))

    @property
    def bits(self) -> int:
        return self.members.bits

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, vertex: Vertex) -> bool:
        return vertex in self.members

    def vertices(self) -> list[Vertex]:
        return self.members.vertices()


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single condition check with a deterministic witness.

    The witness is the lexicographically first violation in canonical vertex
    order (empty when the condition holds).
    """

    holds: bool
    witness: tuple[Vertex, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


_OK = CheckResult(True)


def _first_vertex(graph: ProductGraph, bits: int) -> Vertex:
    return graph.vertex_at((bits & -bits).bit_length() - 1)


# ---------------------------------------------------------------------------
# exact definitional checks
# ---------------------------------------------------------------------------

def is_dominating(code: CodeSet) -> CheckResult:
    """Every vertex must see a codeword in its closed neighborhood."""
    g, s = code.graph, code.bits
    for idx in range(g.num_vertices):
        if not g.closed_bits[idx] & s:
            return CheckResult(False, (g.vertex_at(idx),), "vertex has no codeword in its closed neighborhood")
    return _OK


def is_identifying(code: CodeSet) -> CheckResult:
    """Dominating and all closed-neighborhood traces pairwise distinct."""
    dom = is_dominating(code)
    if not dom:
        return dom
    g, s = code.graph, code.bits
    for u in range(g.num_vertices):
        tu = g.closed_bits[u] & s
        for v in range(u + 1, g.num_vertices):
            if tu == g.closed_bits[v] & s:
                return CheckResult(
                    False,
                    (g.vertex_at(u), g.vertex_at(v)),
                    "two vertices have the same codeword trace",
                )
    return _OK


def is_self_identifying_def1(code: CodeSet) -> CheckResult:
    """Intersection form: codeword neighborhoods pin each vertex down exactly.

    The intersection over an empty codeword family is the whole vertex set,
    so an undominated vertex fails here as well.
    """
    g, s = code.graph, code.bits
    for idx in range(g.num_vertices):
        family = g.closed_bits[idx] & s
        inter = g.universe
        rest = family
        while rest:
            low = rest & -rest
            inter &= g.closed_bits[low.bit_length() - 1]
            rest ^= low
        target = 1 << idx
        if inter != target:
            extra = inter & ~target
            reason = "vertex has no codeword neighbor" if not family else \
                "another vertex lies in every codeword neighborhood"
            # inter always contains idx when the family is nonempty
            return CheckResult(False, (g.vertex_at(idx), _first_vertex(g, extra)), reason)
    return _OK


def is_self_identifying_def2(code: CodeSet) -> CheckResult:
    """Pairwise form: (N[u] & S) - N[v] nonempty for all ordered pairs u != v."""
    g, s = code.graph, code.bits
    for u in range(g.num_vertices):
        tu = g.closed_bits[u] & s
        if not tu:
            v = 1 if u == 0 else 0
            return CheckResult(False, (g.vertex_at(u), g.vertex_at(v)), "vertex has no codeword neighbor")
        for v in range(g.num_vertices):
            if v != u and not tu & ~g.closed_bits[v]:
                return CheckResult(
                    False,
                    (g.vertex_at(u), g.vertex_at(v)),
                    "all codeword neighbors of the first vertex also see the second",
                )
    return _OK


def check_degree_condition(code: CodeSet) -> CheckResult:
    """Every vertex needs at least two codewords among its open neighbors.

    Necessary for a self-identifying code on a connected graph; on graphs
    with isolated vertices it is not (those satisfy the definition with the
    vertex itself as sole witness).
    """
    g, s = code.graph, code.bits
    for idx in range(g.num_vertices):
        if (g.open_bits[idx] & s).bit_count() < 2:
            return CheckResult(False, (g.vertex_at(idx),), "fewer than two codewords among open neighbors")
    return _OK


# ---------------------------------------------------------------------------
# sufficient local criteria
# ---------------------------------------------------------------------------

def _require_topology(code: CodeSet, topology: Topology, op: str) -> None:
    if code.graph.topology is not topology:
        raise TopologyMismatchError(f"{op} applies to {topology.value} graphs only")


def _local_vertex_ok(g: ProductGraph, s: int, i: int, j: int, left: int, right: int) -> tuple[bool, str]:
    """Local condition at (i, j) given the two adjacent column masks.

    Codeword: codewords in the adjacent columns must span two rows other
    than i.  Non-codeword: every other row must contribute an adjacent-column
    codeword and both adjacent columns must hold one outside row i.
    """
    adjacent = (left | right) & ~g.row_bits[i]
    family = s & adjacent
    if s >> (i * g.n + j) & 1:
        rows = 0
        for r in range(g.m):
            if r != i and family & g.row_bits[r]:
                rows += 1
                if rows == 2:
                    return True, ""
        return False, "codeword lacks two support rows in the adjacent columns"
    if not family & left or not family & right:
        return False, "non-codeword lacks an adjacent-column codeword on one side"
    for r in range(g.m):
        if r != i and not family & g.row_bits[r]:
            return False, "non-codeword has an uncovered row in the adjacent columns"
    return True, ""


def check_sufficient_path(code: CodeSet) -> CheckResult:
    """Local criterion guaranteeing a self-identifying code on K_m x P_n.

    Requires full boundary columns, at least three codewords in each column
    next to the boundary, and the per-vertex local condition on internal
    columns.  The criterion is one-sided: it can reject sets that are in fact
    self-identifying, but whenever it accepts, the exact definition holds
    (a property the test suite enforces on random sets).
    """
    _require_topology(code, Topology.PATH, "check_sufficient_path")
    g, s = code.graph, code.bits
    n = g.n
    if n < 3:
        raise TopologyMismatchError("the path criterion needs n >= 3")
    for j in (0, n - 1):
        missing = g.col_bits[j] & ~s
        if missing:
            return CheckResult(False, (_first_vertex(g, missing),), "boundary column not fully included")
    for j in (1, n - 2):
        if (s & g.col_bits[j]).bit_count() < 3:
            return CheckResult(False, (_first_vertex(g, g.col_bits[j]),),
                               "column next to the boundary has fewer than three codewords")
    for i in range(g.m):
        for j in range(1, n - 1):
            ok, reason = _local_vertex_ok(g, s, i, j, g.col_bits[j - 1], g.col_bits[j + 1])
            if not ok:
                return CheckResult(False, ((i, j),), reason)
    return _OK


def check_sufficient_cycle(code: CodeSet) -> CheckResult:
    """Local criterion guaranteeing a self-identifying code on K_m x C_n.

    For n >= 5 every column is internal and the per-vertex local condition
    applies everywhere.  For n in {3, 4} columns at distance two coincide or
    become adjacent, the local reasoning breaks down, and the check falls
    back to the exact definition.
    """
    _require_topology(code, Topology.CYCLE, "check_sufficient_cycle")
    g, s = code.graph, code.bits
    n = g.n
    if n < 5:
        return is_self_identifying_def1(code)
    for i in range(g.m):
        for j in range(n):
            ok, reason = _local_vertex_ok(g, s, i, j, g.col_bits[(j - 1) % n], g.col_bits[(j + 1) % n])
            if not ok:
                return CheckResult(False, ((i, j),), reason)
    return _OK


# ---------------------------------------------------------------------------
# necessary-condition audits
# ---------------------------------------------------------------------------

def _audit_boundary_columns(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    for j in (0, g.n - 1):
        missing = g.col_bits[j] & ~s
        if missing:
            return CheckResult(False, (_first_vertex(g, missing),), "boundary column vertex missing")
    return _OK


def _audit_near_boundary(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    for j in (1, g.n - 2):
        if (s & g.col_bits[j]).bit_count() < 3:
            return CheckResult(False, (_first_vertex(g, g.col_bits[j]),),
                               f"fewer than three codewords in column {j}")
    return _OK


def _audit_internal_noncodeword(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    n = g.n
    for i in range(g.m):
        for j in range(2, n - 2):
            if s >> (i * n + j) & 1:
                continue
            sides = (g.col_bits[j - 1] | g.col_bits[j + 1]) & s
            for r in range(g.m):
                if r != i and not sides & g.row_bits[r]:
                    return CheckResult(False, ((i, j), (r, j)),
                                       "row contributes no codeword beside an internal non-codeword")
            if not s & g.col_bits[j - 1] or not s & g.col_bits[j + 1]:
                return CheckResult(False, ((i, j),),
                                   "internal non-codeword with an empty adjacent column")
    return _OK


def _audit_column_states(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    m, n = g.m, g.n
    for j in range(2, n - 2):
        count = (s & g.col_bits[j]).bit_count()
        sides = (g.col_bits[j - 1] | g.col_bits[j + 1]) & s
        side_count = sides.bit_count()
        witness = (_first_vertex(g, g.col_bits[j]),)
        if count == 0:
            if 3 <= j <= n - 4:
                uncovered = (g.col_bits[j - 1] | g.col_bits[j + 1]) & ~s
                if uncovered:
                    return CheckResult(False, (_first_vertex(g, uncovered),),
                                       "columns beside an empty column must be fully included")
        elif count == 1:
            need = m if j in (2, n - 3) else m + 1
            # at j == 2 or n-3 both clauses can apply; take the stronger one
            if 3 <= j <= n - 4:
                need = m + 1
            if side_count < need:
                return CheckResult(False, witness,
                                   f"adjacent columns of a single-codeword column hold {side_count} < {need}")
        elif count <= m - 2:
            if side_count < m:
                return CheckResult(False, witness,
                                   f"adjacent columns hold {side_count} < {m}")
            for r in range(m):
                if not sides & g.row_bits[r]:
                    return CheckResult(False, ((r, j),),
                                       "row missing from the adjacent columns of a mid-filled column")
        elif count == m - 1:
            if side_count < m - 1:
                return CheckResult(False, witness,
                                   f"adjacent columns hold {side_count} < {m - 1}")
        else:  # full column
            if side_count < 3:
                return CheckResult(False, witness,
                                   f"adjacent columns of a full column hold {side_count} < 3")
    return _OK


def _audit_triple_column_path(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    m, n = g.m, g.n
    if n == 5:
        total = ((g.col_bits[1] | g.col_bits[2] | g.col_bits[3]) & s).bit_count()
        if total < m:
            return CheckResult(False, (_first_vertex(g, g.col_bits[2]),),
                               f"columns 1..3 hold {total} < {m}")
        return _OK
    for j in range(2, n - 2):
        need = m + 2 if (n >= 7 and 3 <= j <= n - 4) else m + 1
        total = ((g.col_bits[j - 1] | g.col_bits[j] | g.col_bits[j + 1]) & s).bit_count()
        if total < need:
            return CheckResult(False, (_first_vertex(g, g.col_bits[j]),),
                               f"columns {j - 1}..{j + 1} hold {total} < {need}")
    return _OK


def _audit_triple_column_cycle(code: CodeSet) -> CheckResult:
    g, s = code.graph, code.bits
    m, n = g.m, g.n
    for j in range(n):
        triple = g.col_bits[(j - 1) % n] | g.col_bits[j] | g.col_bits[(j + 1) % n]
        total = (triple & s).bit_count()
        if total < m + 2:
            return CheckResult(False, (_first_vertex(g, g.col_bits[j]),),
                               f"cyclic triple around column {j} holds {total} < {m + 2}")
    return _OK


# ---------------------------------------------------------------------------
# aggregated reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Per-condition outcomes plus the headline code-property flags."""

    is_dominating: bool
    is_identifying: bool
    is_self_identifying: bool
    degree_condition_holds: bool
    conditions: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def violations(self) -> list[tuple[str, tuple[Vertex, ...]]]:
        return [(name, res.witness) for name, res in self.conditions.items() if not res.holds]

    def all_hold(self) -> bool:
        return all(res.holds for res in self.conditions.values())

    def to_json(self) -> dict:
        return {
            name: {"holds": res.holds, "witnesses": [list(v) for v in res.witness]}
            for name, res in self.conditions.items()
        }


def verify_code(code: CodeSet) -> VerificationReport:
    """Run the four headline checks and collect them into a report."""
    dom = is_dominating(code)
    ident = is_identifying(code)
    sid = is_self_identifying_def1(code)
    deg = check_degree_condition(code)
    conditions = {
        "dominating": dom,
        "identifying": ident,
        "self_identifying": sid,
        "degree_condition": deg,
    }
    return VerificationReport(dom.holds, ident.holds, sid.holds, deg.holds, conditions)


def audit_necessary_path(code: CodeSet) -> VerificationReport:
    """Report the column conditions a path self-identifying code must obey.

    Conditions outside their stated n-range are skipped.  The audit never
    raises on an invalid code; it reports each outcome so callers can probe
    the contrapositive direction as well.
    """
    _require_topology(code, Topology.PATH, "audit_necessary_path")
    report = verify_code(code)
    n = code.graph.n
    report.conditions["boundary_columns"] = _audit_boundary_columns(code)
    if n >= 3:
        report.conditions["near_boundary"] = _audit_near_boundary(code)
    if n >= 5:
        report.conditions["internal_noncodeword"] = _audit_internal_noncodeword(code)
        report.conditions["column_states"] = _audit_column_states(code)
        report.conditions["triple_column"] = _audit_triple_column_path(code)
    return report


def audit_necessary_cycle(code: CodeSet) -> VerificationReport:
    """Report the cyclic triple-column condition for cycle codes."""
    _require_topology(code, Topology.CYCLE, "audit_necessary_cycle")
    report = verify_code(code)
    report.conditions["triple_column_cyclic"] = _audit_triple_column_cycle(code)
    return report
