"""Cone certificates for invariant subspaces of normal-form automorphisms.

An invariant subvariety cut out by an invariant space of degree-d forms
is a cone: its equations can be rewritten in the torsion-block variables
alone, times monomials in the independent variables.  This module
extracts that certificate.  The geometric hypotheses behind the cone
statement (irreducibility, not lying in a coordinate hyperplane) are not
decidable from generators without Groebner machinery, so they are
recorded as caller-asserted and the syntactic symptoms (a variable
dividing every generator) are reported as warnings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import qlinalg
from .errors import DomainError
from .normal_form import CASE_M1, CASE_M2, NormalFormResult
from .numutil import lcm_all
from .polynomials import (
    MultiIndex,
    PolynomialQ,
    mi_degree,
    monomials_of_degree,
    poly_to_vector,
    vector_to_poly,
)
from .sym_power import (
    _class_intersections,
    _nilpotent_chains,
    _operator_matrix,
    _subspace_basis,
    _validate_subspace,
    invariant_subspace_test,
    m1_invariant_structure,
    normal_form_info,
    pullback_poly,
)

ASSUMED_HYPOTHESES = (
    "variety is irreducible (caller-asserted)",
    "variety lies in no coordinate hyperplane (caller-asserted)",
)


@dataclass(frozen=True)
class ConeCertificate:
    vertex_vanishing: tuple[int, ...]  # the vertex is the common zero locus of these variables
    base_vanishing: tuple[int, ...]  # the base lives in the zero locus of these
    stripped_generators: tuple[PolynomialQ, ...]
    monomial_factors: tuple[MultiIndex, ...]
    generators: tuple[PolynomialQ, ...]  # stripped * factor, the certified cone equations
    warnings: tuple[str, ...]
    assumed: tuple[str, ...] = ASSUMED_HYPOTHESES


def strip_monomial_factors(
    subspace: list[PolynomialQ],
) -> tuple[list[MultiIndex], list[PolynomialQ], set[int]]:
    """Per generator, the largest monomial dividing all its terms and the
    quotient.  `common_vars` collects the variables dividing every
    generator, a necessary symptom of hyperplane containment."""
    if not subspace:
        raise DomainError("no generators")
    factors: list[MultiIndex] = []
    stripped: list[PolynomialQ] = []
    common: set[int] | None = None
    for p in subspace:
        if p.is_zero():
            raise DomainError("zero generator")
        if not p.is_homogeneous():
            raise DomainError("generators must be homogeneous")
        g = p.gcd_monomial()
        factors.append(g)
        stripped.append(p.div_monomial(g))
        support = {i for i, e in enumerate(g) if e}
        common = support if common is None else common & support
    return factors, stripped, common or set()


def _strip_warnings(subspace: list[PolynomialQ]) -> list[str]:
    _, stripped, common = strip_monomial_factors(subspace)
    warnings = [
        f"variable x{i} divides every generator (possible containment in {{x{i} = 0}})"
        for i in sorted(common)
    ]
    for original, s in zip(subspace, stripped):
        if s.degree() == 0:
            warnings.append(f"generator {original} is a monomial")
    return warnings


def _m2_template_generators(info, chain_rows, monomials, index) -> list[PolynomialQ]:
    """Rewrite one Jordan-chain summand in template form: find x1-free
    polynomials P_0..P_m with the summand spanned by
    x0^(m-j) * sum_{i<=j} x1^(j-i) P_i for j = 0..m.

    Such a rewriting does not always exist; when the exact linear solve
    finds none the variety meets a coordinate hyperplane degenerately
    and a DomainError is raised.
    """
    n_vars = info.n_vars
    space_rows, pivots = qlinalg.rref(chain_rows)
    pivot_set = set(pivots)
    m = len(space_rows) - 1
    degree = mi_degree(monomials[0])
    if degree < m:
        raise DomainError("chain is longer than the degree allows a template for")
    tail_vars = set(info.tail_vars())
    blocks: list[list[MultiIndex]] = []
    offsets = [0]
    for i in range(m + 1):
        block = [
            mi
            for mi in monomials_of_degree(info.n_vars, degree - m + i)
            if mi[1] == 0 and all(mi[v] == 0 for v in tail_vars)
        ]
        blocks.append(block)
        offsets.append(offsets[-1] + len(block))
    total_unknowns = offsets[-1]

    def residual(col: list[Fraction], coord: int) -> Fraction:
        # component of col at coord after projecting onto span(space_rows)
        val = col[coord]
        for srow, p in zip(space_rows, pivots):
            val -= col[p] * srow[coord]
        return val

    constraints: list[list[Fraction]] = []
    for j in range(m + 1):
        cols: list[list[Fraction]] = []
        for i in range(m + 1):
            for mi in blocks[i]:
                vec = [Fraction(0)] * len(monomials)
                if i <= j:
                    shifted = list(mi)
                    shifted[0] += m - j
                    shifted[1] += j - i
                    vec[index[tuple(shifted)]] = Fraction(1)
                cols.append(vec)
        for coord in range(len(monomials)):
            if coord in pivot_set:
                continue
            row = [residual(col, coord) for col in cols]
            if any(row):
                constraints.append(row)
    solutions = (
        qlinalg.nullspace(constraints, total_unknowns)
        if constraints
        else qlinalg.mat_identity(total_unknowns)
    )
    chosen = next((sol for sol in solutions if any(sol[offsets[0] : offsets[1]])), None)
    if chosen is None:
        raise DomainError(
            "no template rewriting with nonzero bottom polynomial exists; "
            "the cut-out variety lies degenerately in a coordinate hyperplane"
        )
    out = []
    for i in range(m + 1):
        terms = [(mi, c) for mi, c in zip(blocks[i], chosen[offsets[i] : offsets[i + 1]]) if c]
        out.append(PolynomialQ.make(n_vars, terms))
    return out


def cone_structure(
    result: NormalFormResult, subspace: list[PolynomialQ], degree: int
) -> ConeCertificate:
    """Cone certificate of the variety cut out by an invariant subspace.

    m1: vertex {x0 = .. = xk = 0}, base inside {x_{k+1} = .. = xn = 0},
    generators split as P(x0..xk) * Q(independent monomial).
    m2: vertex {x0 = x2 = .. = xk = 0}, base inside
    {x1 = x_{k+1} = .. = xn = 0}, generators are the x1-free template
    polynomials of each irreducible chain summand.
    """
    if result.case not in (CASE_M1, CASE_M2):
        raise DomainError("cone structure applies to the m1/m2 cases only")
    spectral = result.target
    info = normal_form_info(spectral)
    actual_degree = _validate_subspace(info, subspace)
    if degree != actual_degree:
        raise DomainError(f"generators have degree {actual_degree}, not {degree}")
    if not invariant_subspace_test(spectral, subspace):
        raise DomainError("subspace is not invariant under the pullback")
    k, n = info.k, info.n_vars - 1
    warnings = _strip_warnings(subspace)
    if result.case == CASE_M1:
        vertex = tuple(range(k + 1))
        base = tuple(range(k + 1, n + 1))
        pairs = m1_invariant_structure(spectral, subspace)
        stripped = tuple(p for p, _ in pairs)
        factors = tuple(q for _, q in pairs)
    else:
        vertex = (0,) + tuple(range(2, k + 1))
        base = (1,) + tuple(range(k + 1, n + 1))
        monomials = monomials_of_degree(info.n_vars, actual_degree)
        index = {mi: i for i, mi in enumerate(monomials)}
        basis = _subspace_basis(subspace, monomials, index)
        iterate = lcm_all(info.values[i].torsion.order for i in range(2, info.k + 1)) if k >= 2 else 1
        stripped_list: list[PolynomialQ] = []
        factor_list: list[MultiIndex] = []
        for _, class_monomials, rows in _class_intersections(info, basis, monomials, index):
            rep = class_monomials[0]
            q = tuple(rep[i] if i in info.tail_vars() else 0 for i in range(info.n_vars))
            head_monomials = monomials_of_degree(info.n_vars, actual_degree - mi_degree(q))
            head_index = {mi: i for i, mi in enumerate(head_monomials)}
            head_rows = [
                poly_to_vector(vector_to_poly(row, monomials, info.n_vars).div_monomial(q), head_index)
                for row in rows
            ]
            basis_rows, _ = qlinalg.rref(head_rows)
            images = []
            for row in basis_rows:
                poly = vector_to_poly(row, head_monomials, info.n_vars)
                image = pullback_poly(spectral, poly, power=iterate).sub(poly)
                images.append(poly_to_vector(image, head_index))
            nilpotent = _operator_matrix(images, basis_rows)
            for chain in _nilpotent_chains(nilpotent):
                chain_rows = [
                    [
                        sum(c * brow[j] for c, brow in zip(coords, basis_rows))
                        for j in range(len(head_monomials))
                    ]
                    for coords in chain
                ]
                for p in _m2_template_generators(info, chain_rows, head_monomials, head_index):
                    if p.is_zero():
                        continue
                    stripped_list.append(p)
                    factor_list.append(q)
        stripped = tuple(stripped_list)
        factors = tuple(factor_list)
    allowed = set(vertex)
    for p in stripped:
        if p.support_vars() - allowed:
            raise DomainError("internal error: stripped generator uses base variables")
    generators = tuple(p.mul_monomial(q) for p, q in zip(stripped, factors))
    return ConeCertificate(vertex, base, stripped, factors, generators, tuple(warnings))
