"""Self-identifying codes in K_m x P_n and K_m x C_n direct products.

A self-identifying code is a dominating set S such that every vertex v is the
unique element of the intersection of the closed neighborhoods of its
codeword neighbors.  This package builds the product graphs, decides the
code properties exactly, emits explicit codes with known sizes, evaluates
closed-form bounds and densities, and certifies minimum code sizes on small
instances by exhaustive enumeration and branch-and-bound.
"""

from .bounds import (
    BoundsRecord,
    DensityRow,
    bounds_record,
    compare_gamma_id,
    density_profile,
    exact_small_value,
    fixed_m_density_limits,
    lower_bound,
    sweep_rows,
    upper_bound,
)
from .constructions import (
    ConstructionFamily,
    ConstructionPlan,
    PatternVariant,
    UnsupportedParametersError,
    construct,
    construct_appendix_code,
    construct_cycle_code,
    construct_path_code,
    construct_vertices,
    pattern_a,
    pattern_b,
    predicted_path_size,
)
from .graphs import (
    DimensionError,
    ProductGraph,
    Topology,
    Vertex,
    VertexSet,
    automorphism_generators,
    build_product_graph,
)
from .solver import (
    ALL_PRUNING,
    BudgetExceededError,
    PruneRule,
    SolveBudget,
    SolveResult,
    SolveStatus,
    enumerate_optimal_codes,
    exhaustive_minimum,
    id_feasible,
    sid_feasible,
    solve_min_id,
    solve_min_sid,
)
from .verification import (
    CheckResult,
    CodeSet,
    TopologyMismatchError,
    VerificationReport,
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

__version__ = "0.1.0"

__all__ = [
    "ALL_PRUNING",
    "BoundsRecord",
    "BudgetExceededError",
    "CheckResult",
    "CodeSet",
    "ConstructionFamily",
    "ConstructionPlan",
    "DensityRow",
    "DimensionError",
    "PatternVariant",
    "ProductGraph",
    "PruneRule",
    "SolveBudget",
    "SolveResult",
    "SolveStatus",
    "Topology",
    "TopologyMismatchError",
    "UnsupportedParametersError",
    "VerificationReport",
    "Vertex",
    "VertexSet",
    "audit_necessary_cycle",
    "audit_necessary_path",
    "automorphism_generators",
    "bounds_record",
    "build_product_graph",
    "check_degree_condition",
    "check_sufficient_cycle",
    "check_sufficient_path",
    "compare_gamma_id",
    "construct",
    "construct_appendix_code",
    "construct_cycle_code",
    "construct_path_code",
    "construct_vertices",
    "density_profile",
    "enumerate_optimal_codes",
    "exact_small_value",
    "exhaustive_minimum",
    "fixed_m_density_limits",
    "id_feasible",
    "is_dominating",
    "is_identifying",
    "is_self_identifying_def1",
    "is_self_identifying_def2",
    "lower_bound",
    "pattern_a",
    "pattern_b",
    "predicted_path_size",
    "sid_feasible",
    "solve_min_id",
    "solve_min_sid",
    "sweep_rows",
    "upper_bound",
    "verify_code",
]
