"""Topology of random clique complexes: exact homology, discrete Morse
matchings, structural certificates, and seeded Monte Carlo sweeps."""

from .analytic import (
    RegimeSpec,
    dimension_estimate,
    expected_bad_pairs,
    expected_faces,
    expected_faces_second_moment,
    threshold_probe,
)
from .complexes import (
    ComplexTooLargeError,
    SimplicialComplex,
    build_clique_complex,
    from_facets,
    load_fixture,
    maximal_faces,
    read_facet_list,
    strongly_connected_components,
    write_facet_list,
)
from .detectors import (
    CertificateError,
    DensityInfo,
    RetractionMap,
    SphereCertificate,
    VanishingVerdict,
    build_retraction,
    check_certificate,
    density_exponent,
    find_sphere_certificate,
    octahedral_skeleton,
    vanishing_certificate,
    verify_retraction,
)
from .graphs import (
    Graph,
    common_neighbor_all,
    connected_components,
    generate_gnp,
    induced_subgraph,
    k_core,
    read_edge_list,
    write_edge_list,
)
from .harness import (
    MeshulamReport,
    SummaryRow,
    SweepConfig,
    SweepResult,
    TrialRecord,
    emit,
    meshulam_suite,
    run_sweep,
    run_trial,
    summarize,
)
from .homology import (
    CROSSCHECK_PRIME,
    DEFAULT_PRIME,
    CoefficientSpec,
    HomologySummary,
    IntegerHomology,
    SizeGuardError,
    betti_crosscheck,
    boundary_matrix,
    euler_check,
    integer_homology,
    is_probable_prime,
    morse_inequality_check,
    rank_boundary,
    reduced_betti,
    smith_normal_form,
)
from .morse import (
    DiscreteVectorField,
    MalformedFieldError,
    RepairReport,
    adjacent_kface_pairs,
    critical_count,
    lex_critical_faces,
    lex_gradient_field,
    random_matching_field,
    verify_acyclic,
)
from .rng import DrawCursor, RandomSource, hash64, mix64

__all__ = [
    "CROSSCHECK_PRIME",
    "DEFAULT_PRIME",
    "CertificateError",
    "CoefficientSpec",
    "ComplexTooLargeError",
    "DensityInfo",
    "DiscreteVectorField",
    "DrawCursor",
    "Graph",
    "HomologySummary",
    "IntegerHomology",
    "MalformedFieldError",
    "MeshulamReport",
    "RandomSource",
    "RegimeSpec",
    "RepairReport",
    "RetractionMap",
    "SimplicialComplex",
    "SizeGuardError",
    "SphereCertificate",
    "SummaryRow",
    "SweepConfig",
    "SweepResult",
    "TrialRecord",
    "VanishingVerdict",
    "adjacent_kface_pairs",
    "betti_crosscheck",
    "boundary_matrix",
    "build_clique_complex",
    "build_retraction",
    "check_certificate",
    "common_neighbor_all",
    "connected_components",
    "critical_count",
    "density_exponent",
    "dimension_estimate",
    "emit",
    "euler_check",
    "expected_bad_pairs",
    "expected_faces",
    "expected_faces_second_moment",
    "find_sphere_certificate",
    "from_facets",
    "generate_gnp",
    "hash64",
    "induced_subgraph",
    "integer_homology",
    "is_probable_prime",
    "k_core",
    "lex_critical_faces",
    "lex_gradient_field",
    "load_fixture",
    "maximal_faces",
    "meshulam_suite",
    "mix64",
    "morse_inequality_check",
    "octahedral_skeleton",
    "random_matching_field",
    "rank_boundary",
    "read_edge_list",
    "read_facet_list",
    "reduced_betti",
    "run_sweep",
    "run_trial",
    "smith_normal_form",
    "strongly_connected_components",
    "summarize",
    "threshold_probe",
    "vanishing_certificate",
    "verify_acyclic",
    "verify_retraction",
    "write_edge_list",
    "write_facet_list",
]
__version__ = "0.1.0"
