"""Closed-form bounds, exact small-case values, and density profiles.

All bound arithmetic is exact (integers and fractions); floating point only
appears when rows are rendered for CSV output.

For paths with 3 <= n <= 6 the exact optimum is known, so both bounds
collapse to it instead of extrapolating the general formulas outside their
n >= 7 range.  For cycles the formulas cover all n >= 3.

A note on the density limits: at fixed m the lower/upper bound densities tend
to (m + 2) / (3m) and (m + 3) / (3m) as n grows; both tend to 1/3 only as m
grows as well.  ``fixed_m_density_limits`` exposes the fixed-m limits so
reports can state that gap explicitly instead of conflating the two regimes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructions import construct_vertices
from .graphs import Topology


class BudgetExceededError(RuntimeError):
    """An exact comparison was requested but the search ran out of budget."""


def exact_small_value(m: int, n: int) -> int | None:
    """Exact minimum size of a path code for 3 <= n <= 6, m >= 3; else None."""
    if m < 3 or not 3 <= n <= 6:
        return None
    if m == 3:
        return {3: 9, 4: 12, 5: 12, 6: 14}[n]
    if n == 3:
        return 2 * m + 3
    if n == 4:
        return 2 * m + 6
    if n == 5:
        return 2 * m + 6 if m in (4, 5) else 3 * m
    return 4 * m if m in (4, 5) else 3 * m + 6


def _validate(m: int, n: int, topology: Topology) -> Topology:
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    if m < 3:
        raise ValueError(f"bounds are stated for m >= 3, got m={m}")
    if n < 3:
        raise ValueError(f"bounds are stated for n >= 3, got n={n}")
    return topology


def lower_bound(m: int, n: int, topology: Topology | str) -> int:
    topology = _validate(m, n, topology)
    if topology is Topology.PATH:
        if n <= 6:
            return exact_small_value(m, n)
        return -((n + 1) // -3) * (m + 2) - 2
    return (n // 3) * (m + 2)


def upper_bound(m: int, n: int, topology: Topology | str) -> int:
    topology = _validate(m, n, topology)
    if topology is Topology.PATH:
        if n <= 6:
            return exact_small_value(m, n)
        return -((n + 1) // -3) * (m + 3) + m
    return -(n // -3) * (m + 3) + 3


@dataclass(frozen=True)
class BoundsRecord:
    m: int
    n: int
    topology: Topology
    lower: int
    upper: int
    exact: int | None
    source: dict[str, str]
    density_lower: Fraction
    density_upper: Fraction


def bounds_record(m: int, n: int, topology: Topology | str) -> BoundsRecord:
    topology = _validate(m, n, topology)
    lo = lower_bound(m, n, topology)
    hi = upper_bound(m, n, topology)
    exact = exact_small_value(m, n) if topology is Topology.PATH else None
    if topology is Topology.PATH:
        tag = "small-case-exact" if n <= 6 else "path-general"
    else:
        tag = "cycle-general"
    src = {"lower": tag, "upper": tag}
    if exact is not None:
        src["exact"] = "small-case-exact"
    total = m * n
    return BoundsRecord(
        m, n, topology, lo, hi, exact, src,
        Fraction(lo, total), Fraction(hi, total),
    )


def fixed_m_density_limits(m: int) -> tuple[Fraction, Fraction]:
    """Large-n limits of the bound densities at fixed m."""
    return Fraction(m + 2, 3 * m), Fraction(m + 3, 3 * m)


@dataclass(frozen=True)
class DensityRow:
    n: int
    density_lower: Fraction
    density_construction: Fraction
    density_upper: Fraction


def density_profile(m: int, n_max: int, topology: Topology | str) -> list[DensityRow]:
    """Exact-rational densities of bound and construction sizes up to n_max."""
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    n_min = 7 if topology is Topology.PATH else 3
    if m < 3 or n_max < n_min:
        raise ValueError(f"density profile needs m >= 3 and n_max >= {n_min}")
    rows = []
    for n in range(n_min, n_max + 1):
        total = m * n
        size = len(construct_vertices(m, n, topology))
        rows.append(DensityRow(
            n,
            Fraction(lower_bound(m, n, topology), total),
            Fraction(size, total),
            Fraction(upper_bound(m, n, topology), total),
        ))
    return rows


def sweep_rows(m_values, n_values, topology: Topology | str) -> list[dict]:
    """One dict per (m, n) in the given order; the CSV writer consumes this."""
    if isinstance(topology, str):
        topology = Topology.from_string(topology)
    rows = []
    for m in m_values:
        for n in n_values:
            rec = bounds_record(m, n, topology)
            size = len(construct_vertices(m, n, topology))
            total = m * n
            rows.append({
                "m": m,
                "n": n,
                "topology": topology.value,
                "lower": rec.lower,
                "construction": size,
                "upper": rec.upper,
                "exact": rec.exact,
                "density_lower": rec.density_lower,
                "density_construction": Fraction(size, total),
                "density_upper": rec.density_upper,
            })
    return rows


def compare_gamma_id(m: int, n: int, topology: Topology | str, budget=None) -> tuple[int, int]:
    """Certified (identifying, self-identifying) optima on one small instance.

    Raises BudgetExceededError when either search cannot be certified within
    the budget, and ValueError when no self-identifying code exists at all.
    """
    from .graphs import build_product_graph
    from .solver import SolveStatus, solve_min_id, solve_min_sid

    graph = build_product_graph(m, n, topology)
    rid = solve_min_id(graph, budget)
    rsid = solve_min_sid(graph, budget)
    for res, label in ((rid, "identifying"), (rsid, "self-identifying")):
        if res.status is SolveStatus.BUDGET_EXCEEDED:
            raise BudgetExceededError(f"{label} search on {graph.describe()} exceeded its budget")
        if res.status is SolveStatus.INFEASIBLE:
            raise ValueError(f"{graph.describe()} admits no {label} code")
    assert rid.optimum <= rsid.optimum
    return rid.optimum, rsid.optimum
