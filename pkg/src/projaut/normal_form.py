"""Birational normal forms of projective-space automorphisms.

An infinite-order automorphism of P^n is birationally conjugate to one
induced by either a diagonal matrix diag(1, l_1..l_k torsion,
l_{k+1}..l_n independent) — the m1 case — or the same with one unipotent
2-block in the first two coordinates — the m2 case.  For semisimple
input the conjugation is realized constructively by a monomial map
y -> y^A on the torus chart {x0 != 0}; in the m2 case only the target is
produced (the conjugating map needs non-monomial coordinate changes and
is outside this package), which the result records machine-readably.
"""

from __future__ import annotations

from dataclasses import dataclass

from .eigenvalues import Eigenvalue, eigen_mul_pow, is_root_of_unity
from .errors import DomainError
from .intmatrix import IntMatrix, det
from .numutil import lcm_all
from .relations import independence_partition
from .spectral import SpectralData

CASE_FINITE_ORDER = "finite-order"
CASE_M1 = "m1"
CASE_M2 = "m2"


@dataclass(frozen=True)
class NormalFormResult:
    case: str
    target: SpectralData
    k: int | None = None
    order: int | None = None
    conjugator: IntMatrix | None = None
    # "monomial": conjugator realizes the conjugation on the torus chart;
    # "deferred": target certified, explicit conjugation not constructed;
    # "none-needed": finite order, no normal-form reduction performed.
    conjugacy: str = "none-needed"


def monomial_conjugate_diagonal(values: list[Eigenvalue], a: IntMatrix) -> list[Eigenvalue]:
    """Eigenvalues of the diagonal automorphism conjugated by the
    monomial map y -> y^A on the torus chart: l'_i = prod l_j^{A_ij}."""
    if a.rows != a.cols or a.rows != len(values):
        raise DomainError("conjugation matrix must be square of matching size")
    if abs(det(a)) != 1:
        raise DomainError("conjugation matrix must be unimodular")
    return [eigen_mul_pow(values, list(row)) for row in a.data]


def finite_order_of(spectral: SpectralData) -> int | None:
    """Exact order when every eigenvalue is torsion and every block is
    trivial; None otherwise (a unipotent block has infinite order)."""
    if not spectral.normalized:
        raise DomainError("finite_order_of requires normalized spectral data")
    if not spectral.is_semisimple():
        return None
    orders = []
    for ev, _ in spectral.blocks:
        order = is_root_of_unity(ev)
        if order is None:
            return None
        orders.append(order)
    return lcm_all(orders)


def classify_automorphism(spectral: SpectralData) -> NormalFormResult:
    """Classify a normalized automorphism as finite order / m1 / m2 and
    produce the normal-form target (with a monomial conjugation
    certificate in the semisimple case)."""
    if not spectral.normalized:
        raise DomainError("classification requires normalized spectral data")
    if spectral.is_semisimple():
        order = finite_order_of(spectral)
        if order is not None:
            return NormalFormResult(CASE_FINITE_ORDER, spectral, order=order)
        values = list(spectral.eigentuple())
        if not values[0].is_one():
            raise DomainError("normalized data must contain the eigenvalue 1")
        part = independence_partition(values[1:])
        target = SpectralData(
            ((Eigenvalue.one(), 1),) + tuple((v, 1) for v in part.transformed),
            normalized=True,
        )
        return NormalFormResult(
            CASE_M1, target, k=part.k_torsion, conjugator=part.conjugator, conjugacy="monomial"
        )
    # m2: pick the first maximal-size block, rescale its eigenvalue to 1,
    # flatten it to one 2-block plus diagonal 1s, everything else to
    # diagonal entries, then order the diagonal torsion-first.
    max_size = max(size for _, size in spectral.blocks)
    idx = next(i for i, (_, size) in enumerate(spectral.blocks) if size == max_size)
    scale = spectral.blocks[idx][0].inverse()
    mus: list[Eigenvalue] = []
    for i, (ev, size) in enumerate(spectral.blocks):
        rescaled = ev.mul(scale)
        copies = size - 2 if i == idx else size
        mus.extend([rescaled] * copies)
    if mus:
        part = independence_partition(mus)
        diag = part.transformed
        k = 1 + part.k_torsion
    else:
        diag = ()
        k = 1
    target = SpectralData(((Eigenvalue.one(), 2),) + tuple((v, 1) for v in diag), normalized=True)
    return NormalFormResult(CASE_M2, target, k=k, conjugacy="deferred")
