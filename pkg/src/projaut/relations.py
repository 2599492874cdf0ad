"""Multiplicative relation lattices and torsion/independent partitions.

For a tuple of eigenvalues the exact relation lattice is
{m : prod(v_i ** m_i) == 1} and the up-to-torsion lattice relaxes the
right-hand side to any root of unity.  The latter is the kernel of the
prime-exponent matrix of the magnitudes, hence saturated; the former is
cut out of it by one congruence on the torsion parts, solved by lifting
Z/N to Z with an auxiliary column.
"""

from __future__ import annotations

from dataclasses import dataclass

from .eigenvalues import Eigenvalue, eigen_mul_pow, is_root_of_unity
from .errors import DomainError
from .intmatrix import IntMatrix, LatticeBasis, complete_to_unimodular, hermite_normal_form, kernel_basis
from .numutil import lcm_all


@dataclass(frozen=True)
class RelationLattice:
    values: tuple[Eigenvalue, ...]
    exact: LatticeBasis
    up_to_torsion: LatticeBasis


@dataclass(frozen=True)
class IndependencePartition:
    values: tuple[Eigenvalue, ...]
    k_torsion: int
    conjugator: IntMatrix
    transformed: tuple[Eigenvalue, ...]


def _magnitude_exponent_matrix(values) -> IntMatrix:
    primes = sorted({p for v in values for p, _ in v.magnitude.factors})
    rows = [[v.magnitude.as_dict().get(p, 0) for v in values] for p in primes]
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, len(values))


def relation_lattice(values: list[Eigenvalue]) -> RelationLattice:
    if not values:
        raise DomainError("relation lattice of an empty tuple")
    k = len(values)
    up = kernel_basis(_magnitude_exponent_matrix(values))
    n_lcm = lcm_all(v.torsion.order for v in values)
    if n_lcm == 1 or up.rank == 0:
        exact = up
    else:
        # torsion residue of each basis vector inside Z/N
        residues = []
        for row in up.basis.data:
            t = sum(m * v.torsion.exp * (n_lcm // v.torsion.order) for m, v in zip(row, values))
            residues.append(t % n_lcm)
        congruence = IntMatrix.from_rows([residues + [n_lcm]])
        solution = kernel_basis(congruence)  # basis of {(c, s) : c . residues + s N = 0}
        coeff_rows = [row[: up.rank] for row in solution.basis.data]
        exact_rows = IntMatrix.from_rows(coeff_rows).mul(up.basis) if coeff_rows else IntMatrix.zero(0, k)
        canon, _ = hermite_normal_form(exact_rows)
        nonzero = [row for row in canon.data if any(row)]
        exact = LatticeBasis(k, IntMatrix.from_rows(nonzero) if nonzero else IntMatrix.zero(0, k))
    return RelationLattice(tuple(values), exact, up)


def is_multiplicatively_independent(values: list[Eigenvalue]) -> bool:
    return relation_lattice(values).exact.rank == 0


def independence_partition(values: list[Eigenvalue]) -> IndependencePartition:
    """Unimodular change of exponents sending the tuple to (torsion...,
    multiplicatively independent...).

    The first k_torsion rows of the conjugator are the canonical HNF
    basis of the up-to-torsion lattice; the remaining rows are the
    deterministic unimodular completion.
    """
    rel = relation_lattice(values)
    conjugator = complete_to_unimodular(rel.up_to_torsion.basis) if rel.up_to_torsion.rank else IntMatrix.identity(len(values))
    transformed = tuple(eigen_mul_pow(list(values), list(row)) for row in conjugator.data)
    part = IndependencePartition(tuple(values), rel.up_to_torsion.rank, conjugator, transformed)
    for v in transformed[: part.k_torsion]:
        if is_root_of_unity(v) is None:  # cannot happen: rows lie in the lattice
            raise DomainError("internal error: head of partition is not torsion")
    return part
