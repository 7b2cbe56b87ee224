"""Generalized roundness and p-negative type of finite metric spaces."""

from .errors import RoundnessError
from .graphs import Graph, gen_family, load_edge_list, load_solid, parse_edge_list, path_metric
from .hamming import (
    ClassificationResult,
    CubeSubset,
    CubeVertex,
    SignVector,
    classify_subset,
    cube_distance_matrix,
    eigen_identity_check,
    factor_matrix,
    factorization_check,
    hamming_distance,
    lifted_vertex_matrix,
    null_dimension_check,
    path_embedding_witness,
    scan_subsets,
    sign_matrix,
    sign_vector,
    subset_metric,
    tree_embedding_search,
)
from .metric import (
    FiniteMetricSpace,
    HyperplaneBasis,
    NegativeTypeWitness,
    PowerMatrix,
    build_metric_space,
    has_row_permutation_property,
    hyperplane_basis,
    power_matrix,
    quadratic_form,
)
from .negtype import (
    GrInequalityResult,
    KernelCoincidenceReport,
    NegTypeVerdict,
    RoundnessResult,
    check_negative_type,
    generalized_roundness,
    gr_inequality_check,
    kernel_coincidence_check,
    negtype_form_matrix,
    normalized_determinant,
)
from .spectral import (
    SpectralData,
    det_exact,
    determinant,
    eigensym,
    kernel_basis_exact,
    null_space,
    rank_exact,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "CubeSubset",
    "CubeVertex",
    "FiniteMetricSpace",
    "Graph",
    "GrInequalityResult",
    "HyperplaneBasis",
    "KernelCoincidenceReport",
    "NegTypeVerdict",
    "NegativeTypeWitness",
    "PowerMatrix",
    "RoundnessError",
    "RoundnessResult",
    "SignVector",
    "SpectralData",
    "build_metric_space",
    "check_negative_type",
    "classify_subset",
    "cube_distance_matrix",
    "det_exact",
    "determinant",
    "eigen_identity_check",
    "eigensym",
    "factor_matrix",
    "factorization_check",
    "gen_family",
    "generalized_roundness",
    "gr_inequality_check",
    "hamming_distance",
    "has_row_permutation_property",
    "hyperplane_basis",
    "kernel_basis_exact",
    "kernel_coincidence_check",
    "lifted_vertex_matrix",
    "load_edge_list",
    "load_solid",
    "negtype_form_matrix",
    "normalized_determinant",
    "null_dimension_check",
    "null_space",
    "parse_edge_list",
    "path_embedding_witness",
    "path_metric",
    "power_matrix",
    "quadratic_form",
    "rank_exact",
    "scan_subsets",
    "sign_matrix",
    "sign_vector",
    "subset_metric",
    "tree_embedding_search",
]
