"""metalg: exact-arithmetic workbench for finite metagroup algebras.

Everything runs over the rationals or a prime field, with no tolerances:
metagroup table verification and Cayley-Dickson doubling, metagroup
algebras and their enveloping algebras, separating idempotents and
splitting maps, twisted first and second cohomology, radical computation
with the constructive complement decomposition, and conjugacy of
complements.  See the demos/ scripts for guided tours and the CLI
(`metalg`) for batch use.
"""

__version__ = "0.1.0"

from .fields import GF, QQ, parse_field
from .metagroup import (
    AxiomViolation,
    MalformedTable,
    MetagroupTable,
    NotAssociative,
    associator,
    cayley_dickson_double,
    center_and_psi,
    cyclic_group,
    direct_product,
    doubling_chain,
    from_group,
    klein_four,
    octonion_units,
    sedenion_units,
    signed_pair,
    verify_metagroup,
)
from .algebra import (
    ActionLawViolation,
    BadEmbedding,
    Bimodule,
    EnvelopingAlgebra,
    GradedAlgebra,
    NotAnIdeal,
    PsiEmbedding,
    build_bimodule,
    build_metagroup_algebra,
    default_embedding,
    enveloping_algebra,
    has_nontrivial_twist,
    ideal_bimodule_over_quotient,
    kappa,
    mu,
    multiply,
    opposite_algebra,
    quotient_algebra,
    quotient_bimodule,
    regular_bimodule,
    structure_algebra,
    sub_bimodule,
    subspace_product,
)
from .cohomology import (
    CohomologyResult,
    NotInDomain,
    NotSeparable,
    SeparabilityCertificate,
    SplittingMap,
    chi,
    chi_inverse,
    delta1,
    delta2,
    derivations,
    get_enveloping,
    get_kernel_mu,
    get_regular_bimodule,
    h1,
    h2,
    hom_over_enveloping,
    inner_derivations,
    separating_idempotent,
    splitting_homomorphism,
)
from .decomposition import (
    ConjugacyResult,
    DecompositionResult,
    DimensionBound,
    MethodDisagreement,
    NotComplement,
    NotInner,
    NotNilpotent,
    NotSquareZero,
    Obstructed,
    RadicalResult,
    conjugate_complements,
    nilpotent_inverse,
    obstruction_cocycle,
    radical,
    solve_coboundary,
    wedderburn_decompose,
)
from .linalg import SparseSystem, Subspace, complement_and_projections, kernel_basis, solve
