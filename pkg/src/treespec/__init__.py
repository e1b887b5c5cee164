"""Exact spectral analysis of trees: eigenvalue location, integrality, subdivided edges."""

from .eigen import (
    DiagValue,
    Inertia,
    PoleError,
    RationalFunction,
    SpectrumReport,
    char_poly,
    count_eigs_interval,
    d_symbolic,
    d_symbolic_all,
    derivative_check,
    jt_evaluate,
    spectrum_report,
)
from .enumeration import TreeStream, enumerate_free_trees, enumerate_with_subdivided_edge
from .poly import (
    IntPolynomial,
    integer_roots,
    squarefree_part,
    sturm_count_distinct,
)
from .tree import (
    RootedTree,
    SubdividedEdge,
    Tree,
    TreeError,
    build_figure_tree,
    canonical_code,
    find_subdivided_edges,
    longest_subdivided_edge_length,
    parse_tree,
    root_at,
)
from .verify import (
    SignTrace,
    VerificationReport,
    search_integral_trees,
    theta_boundary_counts,
    trace_sign_dynamics,
    verify_theorem,
)

__version__ = "0.1.0"
