"""Certified minimum identifying / self-identifying codes on small instances.

Two independent routes are provided:

* :func:`exhaustive_minimum` enumerates every subset (vectorized over bitmask
  arrays) and is the ground-truth oracle for graphs of up to 20 vertices;
* :func:`solve_min_sid` / :func:`solve_min_id` run an iterative-deepening
  branch-and-bound that decides columns left to right and checks each vertex
  once its whole neighborhood is decided.  The first size level that admits a
  code is the optimum, and it is certified because all smaller levels were
  exhausted.

The branch-and-bound prunes with structural facts about self-identifying
codes in these products, each applied only where it is proven to hold:

* forced boundary: on paths with m, n >= 3 both end columns belong to every
  self-identifying code, so they are pre-fixed;
* column-count bounds: disjoint column groups carry known minimum codeword
  counts (m + 3 on a boundary pair, m + 2 on internal or cyclic triples),
  giving an admissible lower bound on any completion;
* degree condition: every vertex of a connected graph needs two codewords
  among its open neighbors, so a vertex whose decided-plus-undecided
  neighborhood cannot reach two is a dead end.

All three are accelerators: with every rule disabled the search returns the
same certified optimum, only slower (the test suite toggles them).
Infeasibility (no code exists at all, e.g. K_2 x P_n has none) is detected up
front from the neighborhood structure and reported distinctly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .graphs import (
    ProductGraph,
    Topology,
    automorphism_generators,
    _permute_mask,
)
from .verification import CodeSet, is_identifying, is_self_identifying_def1


class PruneRule(str, Enum):
    FORCED_BOUNDARY = "forced_boundary"
    TRIPLE_COLUMN = "triple_column"
    DEGREE_CONDITION = "degree_condition"


ALL_PRUNING: frozenset[PruneRule] = frozenset(PruneRule)


class SolveStatus(Enum):
    CERTIFIED = "certified"
    BUDGET_EXCEEDED = "budget_exceeded"
    INFEASIBLE = "infeasible"


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveBudget:
    """Node/time limits plus the switchboard for pruning and symmetry."""

    max_nodes: int = 100_000_000
    max_seconds: float = 300.0
    allow_symmetry: bool = True
    pruning: frozenset[PruneRule] = ALL_PRUNING

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")
        object.__setattr__(self, "pruning", frozenset(PruneRule(r) for r in self.pruning))


@dataclass
class SolveResult:
    status: SolveStatus
    optimum: int | None
    witness: CodeSet | None
    certified: bool
    nodes_explored: int
    prunes_by_rule: dict[str, int] = field(default_factory=dict)

    @property
    def infeasible(self) -> bool:
        return self.status is SolveStatus.INFEASIBLE


# ---------------------------------------------------------------------------
# feasibility
# ---------------------------------------------------------------------------

def sid_feasible(graph: ProductGraph) -> bool:
    """A self-identifying code exists iff no closed neighborhood contains
    another one (the full vertex set is then itself a code)."""
    closed = graph.closed_bits
    for u in range(graph.num_vertices):
        cu = closed[u]
        for v in range(graph.num_vertices):
            if u != v and not cu & ~closed[v]:
                return False
    return True


def id_feasible(graph: ProductGraph) -> bool:
    """An identifying code exists iff the graph is twin-free."""
    return len(set(graph.closed_bits)) == graph.num_vertices


# ---------------------------------------------------------------------------
# exhaustive oracle (vectorized over all subsets)
# ---------------------------------------------------------------------------

_ORACLE_MAX_VERTICES = 20


def _popcount_u32(values: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values)
    v = values.astype(np.uint32)  # pragma: no cover - numpy < 2 fallback
    v = v - ((v >> 1) & np.uint32(0x55555555))
    v = (v & np.uint32(0x33333333)) + ((v >> 2) & np.uint32(0x33333333))
    return (((v + (v >> 4)) & np.uint32(0x0F0F0F0F)) * np.uint32(0x01010101)) >> 24


def _conflict_pairs(graph: ProductGraph) -> list[tuple[int, int]]:
    closed = graph.closed_bits
    nv = graph.num_vertices
    return [(u, v) for u in range(nv) for v in range(nv) if u != v and closed[u] & closed[v]]


def valid_subset_array(graph: ProductGraph, masks: np.ndarray, kind: str = "sid") -> np.ndarray:
    """Vectorized validity of many candidate subsets at once.

    Pairs with disjoint closed neighborhoods reduce to domination under both
    code properties, so only overlapping pairs are tested explicitly.
    """
    closed = graph.closed_bits
    mk = masks.dtype.type
    valid = np.ones(masks.shape, dtype=bool)
    for u in range(graph.num_vertices):
        valid &= (masks & mk(closed[u])) != 0
    if kind == "sid":
        for u, v in _conflict_pairs(graph):
            valid &= (masks & mk(closed[u] & ~closed[v])) != 0
    elif kind == "id":
        for u, v in _conflict_pairs(graph):
            if u < v:
                valid &= (masks & mk(closed[u] ^ closed[v])) != 0
    else:
        raise ValueError(f"unknown code kind {kind!r}")
    return valid


def exhaustive_minimum(graph: ProductGraph, kind: str = "sid") -> tuple[int | None, list[int]]:
    """Optimum and *all* optimal subsets by checking every one of the 2^V.

    The ground-truth oracle: no pruning, no search; capped at 20 vertices.
    """
    nv = graph.num_vertices
    if nv > _ORACLE_MAX_VERTICES:
        raise ValueError(f"exhaustive enumeration is capped at {_ORACLE_MAX_VERTICES} vertices, got {nv}")
    masks = np.arange(1 << nv, dtype=np.uint32)
    valid = valid_subset_array(graph, masks, kind)
    if not valid.any():
        return None, []
    counts = np.where(valid, _popcount_u32(masks), np.uint32(nv + 1))
    best = int(counts.min())
    return best, [int(x) for x in masks[counts == best]]


# ---------------------------------------------------------------------------
# branch and bound over per-column membership patterns
# ---------------------------------------------------------------------------

def _lex_candidate_order(m: int) -> list[int]:
    # visit column patterns so that depth-first search walks membership
    # strings in lexicographic order (low rows excluded first)
    return sorted(range(1 << m), key=lambda p: tuple(p >> i & 1 for i in range(m)))


def _initial_segments(m: int) -> list[int]:
    return [(1 << c) - 1 for c in range(m + 1)]


def _column_groups(graph: ProductGraph, kind: str) -> list[tuple[tuple[int, ...], int]]:
    """Disjoint column groups with proven minimum codeword counts (SID only).

    Paths: the two boundary pairs hold >= m + 3 each (full boundary column
    plus three near-boundary codewords); for n >= 7 each internal triple
    centred at j in {3, 6, ...} <= n - 4 holds >= m + 2.  Cycles: every
    disjoint triple of consecutive columns holds >= m + 2.
    """
    m, n = graph.m, graph.n
    if kind != "sid" or m < 3 or n < 3:
        return []
    if graph.topology is Topology.CYCLE:
        return [((3 * t, 3 * t + 1, 3 * t + 2), m + 2) for t in range(n // 3)]
    if n == 3:
        return [((0,), m), ((1,), 3), ((2,), m)]
    groups: list[tuple[tuple[int, ...], int]] = [((0, 1), m + 3), ((n - 2, n - 1), m + 3)]
    j = 3
    while n >= 7 and j <= n - 4:
        groups.append(((j - 1, j, j + 1), m + 2))
        j += 3
    return groups


class _OutOfBudget(Exception):
    pass


class _ColumnSearch:
    """Depth-first search over column patterns at a fixed size level."""

    def __init__(self, graph: ProductGraph, kind: str, budget: SolveBudget):
        self.graph = graph
        self.kind = kind
        self.budget = budget
        self.nodes = 0
        self.prunes = {rule.value: 0 for rule in budget.pruning}
        self._deadline = time.monotonic() + budget.max_seconds

        m, n = graph.m, graph.n
        self.m, self.n = m, n
        self.full_pattern = (1 << m) - 1
        self.patterns = _lex_candidate_order(m)
        self.pattern_counts = [p.bit_count() for p in range(1 << m)]
        self.pattern_masks = [
            [sum(1 << (i * n + j) for i in range(m) if p >> i & 1) for p in range(1 << m)]
            for j in range(n)
        ]
        # columns 0..j as one mask, and its complement
        prefix = []
        acc = 0
        for j in range(n):
            acc |= graph.col_bits[j]
            prefix.append(acc)
        self.unassigned_after = [graph.universe & ~p for p in prefix]

        # a vertex is checked exactly once, at the column that completes its
        # closed neighborhood
        self.finalize_at: list[list[int]] = [[] for _ in range(n)]
        fincol = {}
        for idx in range(graph.num_vertices):
            j = idx % n
            if graph.topology is Topology.PATH:
                fin = min(n - 1, j + 1)
            else:
                fin = n - 1 if j in (0, n - 1) else j + 1
            self.finalize_at[fin].append(idx)
            fincol[idx] = fin

        self.conflicts: list[list[int]] = [[] for _ in range(graph.num_vertices)]
        for u, v in _conflict_pairs(graph):
            self.conflicts[u].append(v)
        self.pairs_at: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        if kind == "id":
            for u, v in _conflict_pairs(graph):
                if u < v:
                    self.pairs_at[max(fincol[u], fincol[v])].append((u, v))

        self.forced_columns: frozenset[int] = frozenset()
        if (
            kind == "sid"
            and PruneRule.FORCED_BOUNDARY in budget.pruning
            and graph.topology is Topology.PATH
            and m >= 3
            and n >= 3
        ):
            self.forced_columns = frozenset({0, n - 1})
            self.prunes[PruneRule.FORCED_BOUNDARY.value] = 2

        self.groups = _column_groups(graph, kind) if PruneRule.TRIPLE_COLUMN in budget.pruning else []
        self.group_of_column: list[int | None] = [None] * n
        for gi, (cols, _req) in enumerate(self.groups):
            for c in cols:
                self.group_of_column[c] = gi
        self.group_sizes = [len(cols) * m for cols, _req in self.groups]

        self.degree_rule = (
            kind == "sid" and PruneRule.DEGREE_CONDITION in budget.pruning and m >= 3
        )
        # after column j is decided, these vertices have a constrained
        # potential degree worth a look-ahead (their own and the next column)
        self.degree_check_at: list[list[int]] = [[] for _ in range(n)]
        if self.degree_rule:
            for j in range(n):
                cols = [j] if j == n - 1 else [j, j + 1]
                self.degree_check_at[j] = [i * n + c for c in cols for i in range(m)]

        self.first_branch_column = next(
            (j for j in range(n) if j not in self.forced_columns), None
        )

    # -- bookkeeping ---------------------------------------------------------

    def static_lower_bound(self) -> int:
        g = self.graph
        max_deg = max((mask.bit_count() for mask in g.open_bits), default=0)
        bound = max(1, -(g.num_vertices // -(max_deg + 1)))
        bound = max(bound, sum(req for _, req in self.groups))
        bound = max(bound, self.m * len(self.forced_columns))
        return bound

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if not self.nodes % 2048 and time.monotonic() > self._deadline:
            raise _OutOfBudget

    def _candidates(self, j: int) -> list[int]:
        if j in self.forced_columns:
            return [self.full_pattern]
        if self.budget.allow_symmetry and j == self.first_branch_column:
            # Row relabellings are automorphisms, so any solution can be
            # permuted to have an initial row segment in its first undecided
            # column; searching only those keeps at least one optimum per
            # orbit.
            return _initial_segments(self.m)
        return self.patterns

    # -- the search ------------------------------------------------------------

    def search(self, level: int, collect: list[int] | None = None) -> int | None:
        """Return a code of size <= level (which is then exactly ``level`` if
        all smaller levels were exhausted before), or None.

        With ``collect`` given, append every solution of size ``level`` and
        keep going instead of stopping at the first one.
        """
        g = self.graph
        closed = g.closed_bits
        open_ = g.open_bits
        n = self.n
        sid = self.kind == "sid"
        counts = self.pattern_counts
        group_in = [0] * len(self.groups)
        group_und = list(self.group_sizes)
        start_deficit = sum(req for _, req in self.groups)
        triple = PruneRule.TRIPLE_COLUMN.value
        degree = PruneRule.DEGREE_CONDITION.value
        result: list[int | None] = [None]

        def finalize_ok(j: int, s_in: int) -> bool:
            for u in self.finalize_at[j]:
                trace = closed[u] & s_in
                if not trace:
                    return False
                if sid:
                    for v in self.conflicts[u]:
                        if not trace & ~closed[v]:
                            return False
            if not sid:
                for u, v in self.pairs_at[j]:
                    if closed[u] & s_in == closed[v] & s_in:
                        return False
            return True

        def dfs(j: int, s_in: int, count: int, deficit: int) -> bool:
            """Returns True when the search should unwind (solution found)."""
            if j == n:
                if count < 1:
                    return False
                if collect is None:
                    result[0] = s_in
                    return True
                if count == level:
                    collect.append(s_in)
                return False
            gi = self.group_of_column[j]
            for pattern in self._candidates(j):
                c = counts[pattern]
                if count + c > level:
                    continue
                self._tick()
                new_deficit = deficit
                if gi is not None:
                    _cols, req = self.groups[gi]
                    old_short = max(0, req - group_in[gi])
                    group_in[gi] += c
                    group_und[gi] -= self.m
                    new_deficit = deficit - old_short + max(0, req - group_in[gi])
                    if group_in[gi] + group_und[gi] < req:
                        self.prunes[triple] += 1
                        group_in[gi] -= c
                        group_und[gi] += self.m
                        continue
                ok = True
                if count + c + new_deficit > level:
                    ok = False
                    if self.groups:
                        self.prunes[triple] += 1
                s_new = s_in | self.pattern_masks[j][pattern]
                if ok:
                    ok = finalize_ok(j, s_new)
                if ok and self.degree_rule:
                    avail = s_new | self.unassigned_after[j]
                    for u in self.degree_check_at[j]:
                        if (open_[u] & avail).bit_count() < 2:
                            self.prunes[degree] += 1
                            ok = False
                            break
                done = ok and dfs(j + 1, s_new, count + c, new_deficit)
                if gi is not None:
                    group_in[gi] -= c
                    group_und[gi] += self.m
                if done:
                    return True
            return False

        dfs(0, 0, 0, start_deficit)
        return result[0]


def _initial_witness_bits(graph: ProductGraph) -> int:
    """A cheap valid code to anchor the deepening: the explicit construction
    when available, the full vertex set otherwise."""
    if graph.m >= 3 and graph.n >= 3:
        from .constructions import construct

        code, _plan = construct(graph.m, graph.n, graph.topology)
        return code.bits
    return graph.universe


def _solve(graph: ProductGraph, kind: str, budget: SolveBudget | None) -> SolveResult:
    budget = budget or SolveBudget()
    feasible = sid_feasible(graph) if kind == "sid" else id_feasible(graph)
    zero = {rule.value: 0 for rule in budget.pruning}
    if not feasible:
        return SolveResult(SolveStatus.INFEASIBLE, None, None, True, 0, zero)

    search = _ColumnSearch(graph, kind, budget)
    best_bits = _initial_witness_bits(graph)
    best = best_bits.bit_count()
    level_floor = search.static_lower_bound()

    certified = True
    if best > level_floor:
        try:
            for level in range(level_floor, best):
                found = search.search(level)
                if found is not None:
                    best_bits, best = found, found.bit_count()
                    break
        except _OutOfBudget:
            certified = False

    witness = CodeSet.from_bits(graph, best_bits)
    verdict = is_self_identifying_def1(witness) if kind == "sid" else is_identifying(witness)
    if not verdict.holds:  # pragma: no cover - invariant
        raise AssertionError("search produced an invalid witness")
    status = SolveStatus.CERTIFIED if certified else SolveStatus.BUDGET_EXCEEDED
    return SolveResult(status, best, witness, certified, search.nodes, dict(search.prunes))


def solve_min_sid(graph: ProductGraph, budget: SolveBudget | None = None) -> SolveResult:
    """Certified minimum self-identifying code size (with witness)."""
    return _solve(graph, "sid", budget)


def solve_min_id(graph: ProductGraph, budget: SolveBudget | None = None) -> SolveResult:
    """Certified minimum identifying code size (with witness)."""
    return _solve(graph, "id", budget)


# ---------------------------------------------------------------------------
# enumeration of all optima
# ---------------------------------------------------------------------------

_GROUP_CAP = 200_000


def automorphism_group(graph: ProductGraph) -> list[tuple[int, ...]]:
    """Closure of the verified generators (row permutations x column
    reversal / rotations); capped to keep enumeration at desk scale."""
    generators = automorphism_generators(graph)
    identity = tuple(range(graph.num_vertices))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for perm in frontier:
            for gen in generators:
                composed = tuple(gen[p] for p in perm)
                if composed not in seen:
                    seen.add(composed)
                    nxt.append(composed)
                    if len(seen) > _GROUP_CAP:
                        raise ValueError("automorphism group too large to enumerate")
        frontier = nxt
    return sorted(seen)


def enumerate_optimal_codes(graph: ProductGraph, budget: SolveBudget | None = None) -> list[CodeSet]:
    """All minimum self-identifying codes; orbit representatives only when
    the budget allows symmetry reduction.

    Small graphs are enumerated by the exhaustive oracle; larger ones rerun
    the level search at the certified optimum, collecting every solution.
    """
    budget = budget or SolveBudget()
    if graph.num_vertices <= _ORACLE_MAX_VERTICES:
        optimum, masks = exhaustive_minimum(graph, "sid")
        if optimum is None:
            return []
    else:
        result = solve_min_sid(graph, budget)
        if result.status is SolveStatus.INFEASIBLE:
            return []
        if not result.certified:
            raise BudgetExceededError(f"could not certify the optimum on {graph.describe()}")
        search = _ColumnSearch(graph, "sid", budget)
        masks = []
        try:
            search.search(result.optimum, collect=masks)
        except _OutOfBudget:
            raise BudgetExceededError(f"enumeration budget exceeded on {graph.describe()}") from None

    if budget.allow_symmetry:
        group = automorphism_group(graph)
        # The canonical form (minimum automorphic image) is itself an optimal
        # code, so use it as the orbit representative.
        masks = sorted({min(_permute_mask(mask, perm) for perm in group) for mask in masks})
    else:
        masks = sorted(set(masks))

    codes = [CodeSet.from_bits(graph, bits) for bits in masks]
    for code in codes:
        if not is_self_identifying_def1(code).holds:  # pragma: no cover - invariant
            raise AssertionError("enumerated an invalid optimum")
    return codes
