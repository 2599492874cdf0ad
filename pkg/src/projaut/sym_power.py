"""Pullback of normal-form automorphisms on spaces of degree-d forms.

The pullback substitutes the transpose of the inducing matrix, so forms
of degree d carry the d-th symmetric power of the action.  For the
diagonal (m1) normal form this is a character action: each monomial is
scaled by the product of the eigenvalues raised to its exponents, and
degree-d monomials partition into weight components by character value.
For the m2 normal form the extra unipotent block acts by the
substitution x1 -> x0 + x1, and invariant subspaces carry nilpotent
Jordan chains of f* - id.

Diagonal scalars are kept symbolic (exact Eigenvalue values); all linear
algebra happens over Q even when eigenvalue moduli are irrational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import qlinalg
from .eigenvalues import Eigenvalue, eigen_mul_pow, is_root_of_unity
from .errors import DomainError
from .numutil import lcm_all
from .polynomials import (
    MultiIndex,
    PolynomialQ,
    mi_degree,
    monomials_of_degree,
    poly_to_vector,
    vector_to_poly,
)
from .relations import is_multiplicatively_independent
from .spectral import SpectralData


@dataclass(frozen=True)
class WeightComponent:
    """Monomials sharing one character: the exponent vector over the
    independent eigenvalues plus a torsion character index."""

    character: tuple[int, ...]
    basis: tuple[MultiIndex, ...]


@dataclass(frozen=True)
class ChainDecomposition:
    """A single Jordan chain of the nilpotent part of the pullback.

    `chain[0]` is killed by f* - id, and (f^iterate)* chain[i] =
    chain[i] + chain[i-1] holds exactly.  Chain entries are polynomials
    in the torsion-block variables; `q` is the common monomial in the
    independent variables divided out of the input generators.  The
    whole chain is rescaled so that `base_poly` (= chain[0]) is monic in
    graded-lex order.
    """

    chain_top: PolynomialQ
    chain: tuple[PolynomialQ, ...]
    q: MultiIndex
    base_poly: PolynomialQ
    iterate: int


@dataclass(frozen=True)
class NormalFormInfo:
    kind: str  # "m1" | "m2"
    k: int  # torsion count in the normal-form indexing
    values: tuple[Eigenvalue, ...]  # eigenvalue per coordinate

    @property
    def n_vars(self) -> int:
        return len(self.values)

    def head_vars(self) -> tuple[int, ...]:
        return tuple(range(self.k + 1))

    def tail_vars(self) -> tuple[int, ...]:
        return tuple(range(self.k + 1, self.n_vars))


def normal_form_info(spectral: SpectralData) -> NormalFormInfo:
    """Validate that spectral data is an m1 or m2 normal form and locate
    the torsion/independent split."""
    if not spectral.normalized:
        raise DomainError("normal-form operations need normalized spectral data")
    sizes = [size for _, size in spectral.blocks]
    values = spectral.eigentuple()
    if all(s == 1 for s in sizes):
        kind = "m1"
        rest = values[1:]
        start = 1
    elif sizes[0] == 2 and all(s == 1 for s in sizes[1:]) and spectral.blocks[0][0].is_one():
        kind = "m2"
        rest = values[2:]
        start = 2
    else:
        raise DomainError("spectral data is not an m1/m2 normal form (block shape)")
    torsion_count = 0
    for v in rest:
        if is_root_of_unity(v) is None:
            break
        torsion_count += 1
    tail = list(rest[torsion_count:])
    for v in tail:
        if is_root_of_unity(v) is not None:
            raise DomainError("normal form must list torsion eigenvalues first")
    if tail and not is_multiplicatively_independent(tail):
        raise DomainError("trailing eigenvalues are not multiplicatively independent")
    k = torsion_count + (start - 1)
    return NormalFormInfo(kind, k, values)


def _character(values: tuple[Eigenvalue, ...], alpha: MultiIndex, power: int = 1) -> Eigenvalue:
    return eigen_mul_pow(list(values), [e * power for e in alpha])


def _monomial_images(info: NormalFormInfo, alpha: MultiIndex, power: int) -> list[tuple[MultiIndex, Fraction]]:
    # rational part of the pullback of x^alpha: expansion of the
    # substitution x1 -> power*x0 + x1 in the m2 case, identity otherwise
    if info.kind == "m1" or alpha[1] == 0:
        return [(alpha, Fraction(1))]
    a0, a1 = alpha[0], alpha[1]
    rest = alpha[2:]
    out = []
    for j in range(a1 + 1):
        beta = (a0 + j, a1 - j) + rest
        out.append((beta, Fraction(comb(a1, j) * power**j)))
    return out


def pullback_components(
    spectral: SpectralData, poly: PolynomialQ, power: int = 1
) -> list[tuple[Eigenvalue, PolynomialQ]]:
    """Pullback of `poly` under the `power`-th iterate, grouped into
    exact eigenvalue-scaled rational parts (one per character value)."""
    info = normal_form_info(spectral)
    if poly.n_vars != info.n_vars:
        raise DomainError("variable-count mismatch between polynomial and spectral data")
    if not poly.is_homogeneous():
        raise DomainError("pullback expects a homogeneous polynomial")
    groups: dict[Eigenvalue, dict[MultiIndex, Fraction]] = {}
    for alpha, coeff in poly.terms:
        scale = _character(info.values, alpha, power)
        bucket = groups.setdefault(scale, {})
        for beta, factor in _monomial_images(info, alpha, power):
            bucket[beta] = bucket.get(beta, Fraction(0)) + coeff * factor
    out = []
    for scale in sorted(groups, key=lambda e: e.sort_key()):
        part = PolynomialQ.make(poly.n_vars, groups[scale])
        if not part.is_zero():
            out.append((scale, part))
    return out


def pullback_poly(spectral: SpectralData, poly: PolynomialQ, power: int = 1) -> PolynomialQ:
    """Pullback with rational output.  Raises when some character value
    is an irrational scalar; use pullback_components for those."""
    out = PolynomialQ.zero(poly.n_vars)
    for scale, part in pullback_components(spectral, poly, power):
        if not scale.is_rational():
            raise DomainError(
                f"pullback scales a component by the irrational value {scale}; "
                "use pullback_components for the symbolic form"
            )
        out = out.add(part.scale(scale.as_fraction()))
    return out


def _class_partition(info: NormalFormInfo, monomials: list[MultiIndex]) -> dict[Eigenvalue, list[MultiIndex]]:
    classes: dict[Eigenvalue, list[MultiIndex]] = {}
    for mi in monomials:
        classes.setdefault(_character(info.values, mi), []).append(mi)
    return classes


def _character_presentation(info: NormalFormInfo, representative: MultiIndex) -> tuple[int, ...]:
    tail = tuple(representative[i] for i in info.tail_vars())
    head_start = 1 if info.kind == "m1" else 2
    torsion_orders = [info.values[i].torsion.order for i in range(head_start, info.k + 1)]
    n_lcm = lcm_all(torsion_orders) if torsion_orders else 1
    residue = 0
    for i in range(head_start, info.k + 1):
        t = info.values[i].torsion
        residue += representative[i] * t.exp * (n_lcm // t.order)
    return tail + (residue % n_lcm,)


def weight_decomposition(spectral: SpectralData, degree: int) -> list[WeightComponent]:
    """Partition the degree-d monomial basis by character.  Components
    are ordered by their character tuple; their union is the whole
    monomial basis and each one is pullback-invariant."""
    info = normal_form_info(spectral)
    if info.kind != "m1":
        raise DomainError("weight decomposition applies to the diagonal (m1) normal form")
    if degree < 1:
        raise DomainError("degree must be positive")
    classes = _class_partition(info, monomials_of_degree(info.n_vars, degree))
    components = []
    for _, monomials in classes.items():
        rep = monomials[0]
        tails = {tuple(mi[i] for i in info.tail_vars()) for mi in monomials}
        if len(tails) != 1:  # impossible over an independent tail
            raise DomainError("internal error: one character mixes tail exponents")
        components.append(
            WeightComponent(_character_presentation(info, rep), tuple(sorted(monomials, reverse=True)))
        )
    components.sort(key=lambda c: c.character)
    return components


def _validate_subspace(info: NormalFormInfo, subspace: list[PolynomialQ]) -> int:
    if not subspace:
        raise DomainError("empty generator list")
    degrees = set()
    for p in subspace:
        if p.n_vars != info.n_vars:
            raise DomainError("variable-count mismatch in generators")
        if p.is_zero():
            continue
        if not p.is_homogeneous():
            raise DomainError(f"generator {p} is not homogeneous")
        degrees.add(p.degree())
    if not degrees:
        raise DomainError("all generators are zero")
    if len(degrees) != 1:
        raise DomainError("generators must be homogeneous of one common degree")
    return degrees.pop()


def _subspace_basis(
    subspace: list[PolynomialQ], monomials: list[MultiIndex], index: dict[MultiIndex, int]
) -> list[list[Fraction]]:
    vectors = [poly_to_vector(p, index) for p in subspace if not p.is_zero()]
    basis, _ = qlinalg.rref(vectors)
    return basis


def _unipotent_image(poly: PolynomialQ) -> PolynomialQ:
    # the substitution x1 -> x0 + x1 alone, with no character scaling
    acc: dict[MultiIndex, Fraction] = {}
    for alpha, coeff in poly.terms:
        a0, a1 = alpha[0], alpha[1]
        for j in range(a1 + 1):
            beta = (a0 + j, a1 - j) + alpha[2:]
            acc[beta] = acc.get(beta, Fraction(0)) + coeff * comb(a1, j)
    return PolynomialQ.make(poly.n_vars, acc)


def invariant_subspace_test(spectral: SpectralData, subspace: list[PolynomialQ]) -> bool:
    """Exact invariance test over Q.

    A subspace is stable under the diagonal part iff it splits as the
    direct sum of its intersections with the weight components (the
    components are coordinate subspaces, so the dimension count
    sum_C dim(W /\\ V_C) == dim W decides this rationally even for
    irrational eigenvalue scalars).  The m2 case additionally requires
    stability under the rational substitution x1 -> x0 + x1.
    """
    info = normal_form_info(spectral)
    degree = _validate_subspace(info, subspace)
    monomials = monomials_of_degree(info.n_vars, degree)
    index = {mi: i for i, mi in enumerate(monomials)}
    basis = _subspace_basis(subspace, monomials, index)
    if not basis:
        return True
    dim = len(basis)
    classes = _class_partition(info, monomials)
    split_dim = 0
    for _, class_monomials in classes.items():
        outside = [i for mi, i in index.items() if mi not in set(class_monomials)]
        restricted = [[row[i] for i in outside] for row in basis]
        split_dim += dim - qlinalg.rank(restricted)
    if split_dim != dim:
        return False
    if info.kind == "m2":
        for row in basis:
            image = _unipotent_image(vector_to_poly(row, monomials, info.n_vars))
            if not qlinalg.in_row_span(basis, poly_to_vector(image, index)):
                return False
    return True


def _class_intersections(
    info: NormalFormInfo,
    basis: list[list[Fraction]],
    monomials: list[MultiIndex],
    index: dict[MultiIndex, int],
) -> list[tuple[Eigenvalue, list[MultiIndex], list[list[Fraction]]]]:
    """For each character class: (character, class monomials, basis of
    W /\\ V_class expressed over the full monomial basis)."""
    classes = _class_partition(info, monomials)
    out = []
    for key in sorted(classes, key=lambda e: e.sort_key()):
        class_monomials = classes[key]
        member = set(class_monomials)
        outside = [i for mi, i in index.items() if mi not in member]
        restricted = [[row[i] for i in outside] for row in basis]
        coeffs = qlinalg.nullspace(list(map(list, zip(*restricted))) if restricted and restricted[0] else [], len(basis))
        rows = []
        for c in coeffs:
            vec = [sum(ci * row[j] for ci, row in zip(c, basis)) for j in range(len(monomials))]
            if any(vec):
                rows.append(vec)
        reduced, _ = qlinalg.rref(rows)
        if reduced:
            out.append((key, class_monomials, reduced))
    return out


def m1_invariant_structure(
    spectral: SpectralData, subspace: list[PolynomialQ]
) -> list[tuple[PolynomialQ, MultiIndex]]:
    """Split an invariant subspace of the diagonal normal form into
    products P * Q with P in the torsion-block variables x0..xk and Q a
    monomial in the independent variables.  The returned products span
    the subspace exactly."""
    info = normal_form_info(spectral)
    if info.kind != "m1":
        raise DomainError("m1_invariant_structure applies to the diagonal normal form")
    if not invariant_subspace_test(spectral, subspace):
        raise DomainError("subspace is not invariant under the pullback")
    degree = _validate_subspace(info, subspace)
    monomials = monomials_of_degree(info.n_vars, degree)
    index = {mi: i for i, mi in enumerate(monomials)}
    basis = _subspace_basis(subspace, monomials, index)
    tail_vars = info.tail_vars()
    out: list[tuple[PolynomialQ, MultiIndex]] = []
    for _, class_monomials, rows in _class_intersections(info, basis, monomials, index):
        rep = class_monomials[0]
        q = tuple(rep[i] if i in tail_vars else 0 for i in range(info.n_vars))
        for row in rows:
            poly = vector_to_poly(row, monomials, info.n_vars)
            head = poly.div_monomial(q)
            if head.support_vars() - set(info.head_vars()):
                raise DomainError("internal error: head factor uses independent variables")
            out.append((head, q))
    return out


def _operator_matrix(
    images: list[list[Fraction]], basis: list[list[Fraction]]
) -> list[list[Fraction]]:
    rows = []
    for img in images:
        coords = qlinalg.coords_in_basis(basis, img)
        if coords is None:
            raise DomainError("subspace is not invariant under the pullback")
        rows.append(coords)
    return rows


def _vec_apply(vec: list[Fraction], op_rows: list[list[Fraction]]) -> list[Fraction]:
    # coordinates transform by right multiplication: basis row i maps to
    # sum_j op_rows[i][j] * basis row j
    size = len(op_rows)
    return [sum(vec[i] * op_rows[i][j] for i in range(size)) for j in range(size)]


def _nilpotent_chains(op_rows: list[list[Fraction]]) -> list[list[list[Fraction]]]:
    """Jordan chains of a nilpotent operator given in coordinates.

    Returns chains as coordinate vectors ordered bottom-first
    [N^{s-1} h, ..., N h, h].
    """
    dim = len(op_rows)
    if dim == 0:
        return []
    powers = [qlinalg.mat_identity(dim)]
    while not qlinalg.mat_is_zero(powers[-1]):
        powers.append(qlinalg.mat_mul(powers[-1], op_rows))
        if len(powers) > dim + 1:
            raise DomainError("operator is not nilpotent")
    s_max = len(powers) - 1
    kernels = []
    for j in range(s_max + 1):
        # left kernel of N^j: vectors v with v @ N^j = 0
        kernels.append(qlinalg.nullspace(list(map(list, zip(*powers[j]))), dim))
    # choose H_j with ker N^j = ker N^{j-1} (+) H_j (+) N(H_{j+1}) (+) ...
    carried: list[list[Fraction]] = []  # images of higher chain tops at this level
    tops_by_len: dict[int, list[list[Fraction]]] = {}
    for j in range(s_max, 0, -1):
        blocking, _ = qlinalg.rref(kernels[j - 1] + carried)
        new_tops = []
        for cand in kernels[j]:
            if not qlinalg.in_row_span(blocking, cand):
                new_tops.append(cand)
                blocking, _ = qlinalg.rref(blocking + [cand])
        tops_by_len[j] = new_tops
        carried = [_vec_apply(v, op_rows) for v in carried + new_tops]
    chains = []
    for j in sorted(tops_by_len, reverse=True):
        for top in tops_by_len[j]:
            chain = [top]
            for _ in range(j - 1):
                chain.append(_vec_apply(chain[-1], op_rows))
            chains.append(list(reversed(chain)))
    return chains


def m2_irreducible_chain(spectral: SpectralData, subspace: list[PolynomialQ]) -> ChainDecomposition:
    """Extract the single Jordan chain of f* - id on an invariant
    subspace of the m2 normal form.

    Torsion eigenvalues are handled by passing to the iterate
    f^(lcm of torsion orders); the returned chain satisfies the chain
    law for that iterate exactly.  The generators must share one
    character (monomial `q` in the independent variables and one torsion
    character); anything else decomposes and is reported as reducible.
    """
    info = normal_form_info(spectral)
    if info.kind != "m2":
        raise DomainError("m2_irreducible_chain applies to the m2 normal form")
    degree = _validate_subspace(info, subspace)
    monomial_support = {mi for p in subspace for mi, _ in p.terms}
    if not monomial_support:
        raise DomainError("zero subspace has no chain")
    characters = {_character(info.values, mi) for mi in monomial_support}
    tails = {tuple(mi[i] for i in info.tail_vars()) for mi in monomial_support}
    if len(characters) > 1 or len(tails) > 1:
        raise DomainError("reducible: generators span more than one character class")
    tail = tails.pop()
    q: MultiIndex = tuple(
        tail[info.tail_vars().index(i)] if i in info.tail_vars() else 0 for i in range(info.n_vars)
    )
    heads = [p.div_monomial(q) for p in subspace if not p.is_zero()]
    iterate = lcm_all(info.values[i].torsion.order for i in range(2, info.k + 1)) if info.k >= 2 else 1
    head_degree = degree - mi_degree(q)
    monomials = monomials_of_degree(info.n_vars, head_degree)
    index = {mi: i for i, mi in enumerate(monomials)}
    basis = _subspace_basis(heads, monomials, index)
    images = []
    for row in basis:
        poly = vector_to_poly(row, monomials, info.n_vars)
        image = pullback_poly(spectral, poly, power=iterate).sub(poly)
        images.append(poly_to_vector(image, index))
    nilpotent = _operator_matrix(images, basis)
    chains = _nilpotent_chains(nilpotent)
    if len(chains) != 1:
        sizes = sorted((len(c) for c in chains), reverse=True)
        raise DomainError(f"reducible: nilpotent part has Jordan blocks of sizes {sizes}")
    coord_chain = chains[0]
    polys = []
    for coords in coord_chain:
        vec = [sum(c * row[j] for c, row in zip(coords, basis)) for j in range(len(monomials))]
        polys.append(vector_to_poly(vec, monomials, info.n_vars))
    lead = polys[0].leading()[1]
    polys = [p.scale(1 / lead) for p in polys]
    if 1 in polys[0].support_vars():
        raise DomainError("internal error: chain bottom depends on x1")
    return ChainDecomposition(
        chain_top=polys[-1], chain=tuple(polys), q=q, base_poly=polys[0], iterate=iterate
    )


def shift_equation_solve(
    coefficients: list[PolynomialQ], shift: PolynomialQ
) -> tuple[PolynomialQ, PolynomialQ] | None:
    """Solve P(x + r) = P(x) + Q for P a univariate polynomial in x over
    a multivariate polynomial ring.

    `coefficients[i]` is the coefficient of x^i.  When the difference
    P(x + r) - P(x) is constant in x this forces deg P <= 1 and returns
    (Q', alpha) with P = Q' x + alpha, so that the difference is r * Q'.
    Returns None otherwise.
    """
    if shift.is_zero():
        raise DomainError("shift must be a nonzero ring element")
    coeffs = list(coefficients)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise DomainError("empty coefficient list")
    n_vars = shift.n_vars
    for c in coeffs:
        if c.n_vars != n_vars:
            raise DomainError("coefficient ring mismatch")
    shift_powers = [PolynomialQ.constant(n_vars, 1)]
    for _ in range(len(coeffs)):
        shift_powers.append(shift_powers[-1].mul(shift))
    # coefficient of x^i in P(x + r)
    for i in range(1, len(coeffs)):
        shifted = PolynomialQ.zero(n_vars)
        for j in range(i, len(coeffs)):
            shifted = shifted.add(coeffs[j].mul(shift_powers[j - i]).scale(comb(j, i)))
        if not shifted.sub(coeffs[i]).is_zero():
            return None
    q_prime = coeffs[1] if len(coeffs) > 1 else PolynomialQ.zero(n_vars)
    return q_prime, coeffs[0]
