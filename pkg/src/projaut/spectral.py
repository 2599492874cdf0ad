"""Jordan data of rational matrices and the growth trichotomy.

`SpectralData` records the Jordan type of a projective automorphism as
(eigenvalue, block size) pairs with the first eigenvalue rescaled to 1.
`growth_class` reads off whether powers of the operator grow
exponentially (spectral radius > 1), polynomially (a Jordan block of
size >= 2 on the unit circle), or stay bounded.  `quasi_unipotent_test`
decides the same trichotomy for an integer matrix without factoring its
characteristic polynomial, by powering past the bound lcm{m : phi(m) <= r}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import qlinalg
from .eigenvalues import Eigenvalue, from_fraction
from .errors import DomainError
from .intmatrix import IntMatrix, det
from .numutil import divisors, totient_order_bound

Block = tuple[Eigenvalue, int]


@dataclass(frozen=True)
class SpectralData:
    """Jordan type: ((eigenvalue, block size), ...), first eigenvalue 1
    when `normalized` is set.  Block order is meaningful: coordinates of
    the underlying matrix are assigned to blocks in sequence."""

    blocks: tuple[Block, ...]
    normalized: bool = False

    def __post_init__(self):
        if not self.blocks:
            raise DomainError("spectral data needs at least one block")
        for _, size in self.blocks:
            if size < 1:
                raise DomainError("block sizes must be positive")
        if self.normalized and not self.blocks[0][0].is_one():
            raise DomainError("normalized spectral data must start with eigenvalue 1")

    @property
    def dim(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def n(self) -> int:
        """Dimension of the projective space the automorphism acts on."""
        return self.dim - 1

    def eigentuple(self) -> tuple[Eigenvalue, ...]:
        """Eigenvalue per coordinate, blocks flattened in order."""
        return tuple(ev for ev, size in self.blocks for _ in range(size))

    def is_semisimple(self) -> bool:
        return all(size == 1 for _, size in self.blocks)


def normalize_spectral(blocks: list[Block]) -> SpectralData:
    """Projective rescaling: divide by the eigenvalue of minimal
    (modulus, torsion order) and sort blocks canonically, eigenvalue 1
    first."""
    pivot = min((ev for ev, _ in blocks), key=lambda e: e.sort_key())
    inv = pivot.inverse()
    rescaled = [(ev.mul(inv), size) for ev, size in blocks]
    rescaled.sort(key=lambda b: (b[0].sort_key(), b[1]))
    return SpectralData(tuple(rescaled), normalized=True)


@dataclass(frozen=True)
class GrowthClass:
    tag: str  # "exponential" | "polynomial" | "bounded"
    rate: Fraction | float | None = None
    degree: int | None = None
    exact: bool = True

    def __post_init__(self):
        if self.tag == "exponential":
            if self.rate is None or not self.rate > 1:
                raise DomainError("exponential rate must exceed 1")
        elif self.tag == "polynomial":
            if self.degree is None or self.degree < 1:
                raise DomainError("polynomial degree must be >= 1")
        elif self.tag != "bounded":
            raise DomainError(f"unknown growth tag {self.tag!r}")

    @staticmethod
    def exponential(rate, exact: bool = True) -> "GrowthClass":
        return GrowthClass("exponential", rate=rate, exact=exact)

    @staticmethod
    def polynomial(degree: int) -> "GrowthClass":
        return GrowthClass("polynomial", degree=degree)

    @staticmethod
    def bounded() -> "GrowthClass":
        return GrowthClass("bounded")

    def __str__(self) -> str:
        if self.tag == "exponential":
            if self.exact:
                return f"Exponential({self.rate})"
            return f"Exponential(~{float(self.rate):.6f})"
        if self.tag == "polynomial":
            return f"Polynomial({self.degree})"
        return "Bounded"


def _frac_matrix(m) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DomainError("matrix must be square")
    return rows


def _kernel_dimension(m: list[list[Fraction]]) -> int:
    return len(m) - qlinalg.rank(m)


def jordan_data_rational(matrix) -> SpectralData:
    """Jordan data of a square rational matrix whose characteristic
    polynomial splits over Q.

    Block sizes come from kernel dimensions of (M - lambda I)^j; the
    result is projectively normalized.  A non-split spectrum raises a
    DomainError naming the offending factor; a singular matrix cannot
    induce a projective automorphism and is rejected.
    """
    m = _frac_matrix(matrix)
    n = len(m)
    if n == 0:
        raise DomainError("empty matrix")
    poly = qlinalg.charpoly(m)
    roots, residue = qlinalg.rational_roots(poly)
    if len(residue) > 1:
        raise DomainError(
            "irrational spectrum: characteristic polynomial has non-split factor "
            + qlinalg.poly_str(residue)
        )
    if Fraction(0) in roots:
        raise DomainError("singular matrix does not induce a projective automorphism")
    blocks: list[Block] = []
    for lam in sorted(roots):
        mult = roots[lam]
        shifted = [[m[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        kernel_dims = [0]
        power = qlinalg.mat_identity(n)
        while kernel_dims[-1] < mult:
            power = qlinalg.mat_mul(power, shifted)
            kernel_dims.append(_kernel_dimension(power))
        # blocks of size >= j: kernel_dims[j] - kernel_dims[j-1]
        counts = [kernel_dims[j] - kernel_dims[j - 1] for j in range(1, len(kernel_dims))]
        ev = from_fraction(lam)
        for size in range(len(counts), 0, -1):
            n_blocks = counts[size - 1] - (counts[size] if size < len(counts) else 0)
            blocks.extend((ev, size) for _ in range(n_blocks))
    return normalize_spectral(blocks)


def growth_class(spectral: SpectralData) -> GrowthClass:
    """Growth of operator-norm powers read from normalized Jordan data."""
    if not spectral.normalized:
        raise DomainError("growth classification requires normalized spectral data")
    rho = max(ev.modulus() for ev, _ in spectral.blocks)
    if rho > 1:
        return GrowthClass.exponential(rho, exact=True)
    unit_sizes = [size for ev, size in spectral.blocks if ev.modulus() == 1]
    s_max = max(unit_sizes)
    if s_max >= 2:
        return GrowthClass.polynomial(s_max - 1)
    return GrowthClass.bounded()


@dataclass(frozen=True)
class QuasiUnipotentResult:
    kind: str  # "finite-order" | "quasi-unipotent-infinite" | "off-unit-circle"
    order: int | None = None

    def __str__(self) -> str:
        if self.kind == "finite-order":
            return f"FiniteOrder({self.order})"
        if self.kind == "quasi-unipotent-infinite":
            return "QuasiUnipotentInfinite"
        return "HasEigenvalueOffUnitCircle"


def quasi_unipotent_test(a: IntMatrix) -> QuasiUnipotentResult:
    """Trichotomy for an invertible integer matrix: finite order /
    infinite-order quasi-unipotent / some eigenvalue off the unit circle.

    Sound because an r x r integer matrix with all eigenvalues roots of
    unity only involves orders m with phi(m) <= r, so A**bound kills the
    semisimple torsion part.
    """
    if a.rows != a.cols:
        raise DomainError("matrix must be square")
    if det(a) == 0:
        raise DomainError("matrix is singular over Q")
    r = a.rows
    bound = totient_order_bound(r)
    powered = a.pow(bound)
    identity = IntMatrix.identity(r)
    if powered == identity:
        for d in divisors(bound):
            if a.pow(d) == identity:
                return QuasiUnipotentResult("finite-order", d)
        raise DomainError("internal error: order divides the bound but was not found")
    if powered.sub(identity).pow(r).is_zero():
        return QuasiUnipotentResult("quasi-unipotent-infinite")
    return QuasiUnipotentResult("off-unit-circle")


def finite_order_bound(r: int) -> int:
    """lcm{m : phi(m) <= r}; any finite-order r x r integer matrix has
    order dividing this."""
    return totient_order_bound(r)


def spectral_radius_estimate(a: IntMatrix) -> float:
    """Float spectral radius of an integer matrix, via exact root
    isolation.

    |lambda|^2 of a dominant eigenvalue is always a real eigenvalue of
    A (x) A, so the largest real root of that characteristic polynomial
    is the squared spectral radius even when the dominant eigenvalues of
    A itself are complex.
    """
    m = [[Fraction(x) for x in row] for row in a.data]
    direct = qlinalg.largest_real_root(qlinalg.charpoly(m))
    squared = qlinalg.largest_real_root(qlinalg.charpoly(qlinalg.kron(m, m)))
    if squared is None:
        raise DomainError("internal error: Kronecker square lost its real spectrum")
    rho = float(squared) ** 0.5
    if direct is not None and float(direct) > rho:
        rho = float(direct)
    return rho


def spectral_from_integer_matrix(a: IntMatrix) -> SpectralData:
    return jordan_data_rational([[Fraction(x) for x in row] for row in a.data])
