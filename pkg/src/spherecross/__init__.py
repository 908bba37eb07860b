"""Crossed-product invariants of sphere-product diffeomorphisms.

The library computes, in exact arithmetic, the K-theory of C*-crossed
products and the periodic cyclic cohomology (with its degree structure) of
smooth crossed products attached to factor-wise diffeomorphisms of products
of spheres, together with a floating-point harness for the underlying
dynamics on S^3 x S^6 x S^8. The motivating instance is a pair of
diffeomorphisms whose C*-invariants agree while the smooth degree data do
not; see `spherecross.fixtures` for the published reference values.
"""

__version__ = "0.1.0"

from .intlinalg import (
    AbelianGroup,
    IntMatrix,
    SnfDecomposition,
    cokernel,
    determinant,
    direct_sum,
    field_ker_coker_dims,
    kernel_rank,
    rank,
    rational_rank,
    smith_normal_form,
)
from .manifold import (
    DescriptorError,
    DiffeoDescriptor,
    GradedAbelianGroup,
    GradedEndomorphism,
    SphereProductManifold,
    induced_graded_map,
    k_theory_of_space,
    kunneth_homology,
)
from .invariants import (
    VERDICT_DISTINGUISHED,
    VERDICT_INDISTINGUISHABLE,
    CrossedProductKTheory,
    DiffeoInvariants,
    GradingStructure,
    InternalInvariantError,
    InvariantComparison,
    PeriodicCyclicCohomology,
    compare_invariants,
    compute_invariants,
    grading_structure,
    hp,
    pv_k_theory,
)
from .dynamics import (
    TOLERANCES,
    BirkhoffRun,
    DegreeEstimate,
    DensityResult,
    DynamicsMap,
    ProductPoint,
    Tolerances,
    apply_map,
    birkhoff_averages,
    estimate_degree,
    orbit,
    orbit_density_check,
)
from .fixtures import (
    FixtureRow,
    PublishedInstance,
    compare_with_published,
    named_descriptor,
    published_for,
)

__all__ = [
    "AbelianGroup", "IntMatrix", "SnfDecomposition", "cokernel",
    "determinant", "direct_sum", "field_ker_coker_dims", "kernel_rank",
    "rank", "rational_rank", "smith_normal_form",
    "DescriptorError", "DiffeoDescriptor", "GradedAbelianGroup",
    "GradedEndomorphism", "SphereProductManifold", "induced_graded_map",
    "k_theory_of_space", "kunneth_homology",
    "VERDICT_DISTINGUISHED", "VERDICT_INDISTINGUISHABLE",
    "CrossedProductKTheory", "DiffeoInvariants", "GradingStructure",
    "InternalInvariantError", "InvariantComparison",
    "PeriodicCyclicCohomology", "compare_invariants", "compute_invariants",
    "grading_structure", "hp", "pv_k_theory",
    "TOLERANCES", "BirkhoffRun", "DegreeEstimate", "DensityResult",
    "DynamicsMap", "ProductPoint", "Tolerances", "apply_map",
    "birkhoff_averages", "estimate_degree", "orbit", "orbit_density_check",
    "FixtureRow", "PublishedInstance", "compare_with_published",
    "named_descriptor", "published_for",
]
