"""Rigidity of k-uniform hypergraphs and completability of symmetric tensors.

The package decides local and global rigidity of hypergraph measurement maps
by exact and randomized linear algebra, and applies the same machinery to
the finite/unique-completability question for partially observed symmetric
tensors of bounded symmetric rank.
"""

from .engine import (
    ContactLocusReport,
    EngineConfig,
    EngineError,
    LocalRigidityReport,
    PackingReport,
    PointConfig,
    RigidityReport,
    SecantReport,
    adjacency_matrix,
    build_alpha_jacobian,
    contact_locus,
    generic_rank,
    global_rigidity_prod,
    global_verdict_corollary,
    is_infinitesimally_rigid_at,
    is_locally_rigid,
    jacobian,
    measurement,
    packing_check,
    sample_point_config,
    secant_dimension,
)
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    MultisetEdge,
    Shadow,
    complete_hypergraph,
    load_hypergraph,
    multiplicity,
    replace,
    sign_of,
    support,
)
from .linalg import (
    ExactMatrix,
    KernelBasis,
    LinalgError,
    kernel_intersection,
    left_kernel_basis,
    rank,
    right_kernel_basis,
)
from .polymap import (
    BadPrimeError,
    EvalDomain,
    PolyMap,
    PolyMapError,
    PolyParseError,
    h_prod,
    inner_product,
    parse_poly,
    sq_euclid,
    sum_copies,
)
from .tensor import (
    CompletabilityReport,
    CompletionResult,
    PartialSymmetricTensor,
    TensorError,
    analyze_completability,
    fit_completion,
    load_tensor,
    parse_tensor,
    pattern_to_hypergraph,
)

__version__ = "0.1.0"

__all__ = [
    "BadPrimeError",
    "CompletabilityReport",
    "CompletionResult",
    "ContactLocusReport",
    "EngineConfig",
    "EngineError",
    "EvalDomain",
    "ExactMatrix",
    "Hypergraph",
    "HypergraphError",
    "KernelBasis",
    "LinalgError",
    "LocalRigidityReport",
    "MultisetEdge",
    "PackingReport",
    "PartialSymmetricTensor",
    "PointConfig",
    "PolyMap",
    "PolyMapError",
    "PolyParseError",
    "RigidityReport",
    "SecantReport",
    "Shadow",
    "TensorError",
    "adjacency_matrix",
    "analyze_completability",
    "build_alpha_jacobian",
    "complete_hypergraph",
    "contact_locus",
    "fit_completion",
    "generic_rank",
    "global_rigidity_prod",
    "global_verdict_corollary",
    "h_prod",
    "inner_product",
    "is_infinitesimally_rigid_at",
    "is_locally_rigid",
    "jacobian",
    "kernel_intersection",
    "left_kernel_basis",
    "load_hypergraph",
    "load_tensor",
    "measurement",
    "multiplicity",
    "packing_check",
    "parse_poly",
    "parse_tensor",
    "pattern_to_hypergraph",
    "rank",
    "replace",
    "right_kernel_basis",
    "sample_point_config",
    "secant_dimension",
    "sign_of",
    "sq_euclid",
    "sum_copies",
    "support",
]
