"""projaut: exact classification of projective-space automorphisms.

Birational normal forms of automorphisms of P^n, multiplicative relation
lattices of their eigenvalues, symmetric-power pullback decompositions,
cone certificates of invariant ideals, and an exact monomial-map degree
oracle for the growth trichotomy.  All arithmetic is exact (big integers
and rationals); floats appear only in reported spectral-radius estimates.
"""

__version__ = "0.1.0"

from .cone import ConeCertificate, cone_structure, strip_monomial_factors
from .eigenvalues import (
    Eigenvalue,
    FactoredRational,
    RootOfUnity,
    eigen_mul_pow,
    factor_rational,
    is_root_of_unity,
    parse_eigenvalue,
)
from .errors import DomainError, InputError
from .intmatrix import (
    IntMatrix,
    LatticeBasis,
    complete_to_unimodular,
    det,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from .monomial_maps import (
    HomogeneousMonomialMap,
    compose,
    degree_sequence,
    empirical_growth,
    homogenize,
    identity_map,
    predicted_growth,
)
from .normal_form import (
    CASE_FINITE_ORDER,
    CASE_M1,
    CASE_M2,
    NormalFormResult,
    classify_automorphism,
    finite_order_of,
    monomial_conjugate_diagonal,
)
from .polynomials import MultiIndex, PolynomialQ, monomials_of_degree
from .relations import (
    IndependencePartition,
    RelationLattice,
    independence_partition,
    is_multiplicatively_independent,
    relation_lattice,
)
from .spectral import (
    GrowthClass,
    QuasiUnipotentResult,
    SpectralData,
    finite_order_bound,
    growth_class,
    jordan_data_rational,
    normalize_spectral,
    quasi_unipotent_test,
    spectral_radius_estimate,
)
from .sym_power import (
    ChainDecomposition,
    WeightComponent,
    invariant_subspace_test,
    m1_invariant_structure,
    m2_irreducible_chain,
    pullback_components,
    pullback_poly,
    shift_equation_solve,
    weight_decomposition,
)

__all__ = [
    "__version__",
    "CASE_FINITE_ORDER",
    "CASE_M1",
    "CASE_M2",
    "ChainDecomposition",
    "ConeCertificate",
    "DomainError",
    "Eigenvalue",
    "FactoredRational",
    "GrowthClass",
    "HomogeneousMonomialMap",
    "IndependencePartition",
    "InputError",
    "IntMatrix",
    "LatticeBasis",
    "MultiIndex",
    "NormalFormResult",
    "PolynomialQ",
    "QuasiUnipotentResult",
    "RelationLattice",
    "RootOfUnity",
    "SpectralData",
    "WeightComponent",
    "classify_automorphism",
    "complete_to_unimodular",
    "compose",
    "cone_structure",
    "degree_sequence",
    "det",
    "eigen_mul_pow",
    "empirical_growth",
    "factor_rational",
    "finite_order_bound",
    "finite_order_of",
    "growth_class",
    "hermite_normal_form",
    "homogenize",
    "identity_map",
    "independence_partition",
    "invariant_subspace_test",
    "is_multiplicatively_independent",
    "is_root_of_unity",
    "jordan_data_rational",
    "kernel_basis",
    "m1_invariant_structure",
    "m2_irreducible_chain",
    "monomial_conjugate_diagonal",
    "monomials_of_degree",
    "normalize_spectral",
    "parse_eigenvalue",
    "predicted_growth",
    "pullback_components",
    "pullback_poly",
    "quasi_unipotent_test",
    "relation_lattice",
    "shift_equation_solve",
    "smith_normal_form",
    "spectral_radius_estimate",
    "strip_monomial_factors",
    "weight_decomposition",
]
