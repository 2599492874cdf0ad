"""Exact dynamics of monomial Cremona self-maps of projective space.

A matrix A in GL_n(Z) defines the torus self-map y -> y^A; homogenizing
and stripping the common monomial factor gives the unique minimal-degree
monomial self-map of P^n extending it.  Degree sequences of iterates are
computed purely with integer exponent arithmetic, providing a
ground-truth oracle for the growth trichotomy: the empirical classifier
reads the degree sequence alone, the predicted classifier reads the
matrix spectrum, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, log

from .errors import DomainError
from .intmatrix import IntMatrix, det
from .numutil import totient_order_bound
from .polynomials import MultiIndex
from .spectral import GrowthClass, quasi_unipotent_test, spectral_radius_estimate


@dataclass(frozen=True)
class HomogeneousMonomialMap:
    """n+1 equal-degree monomials with no common factor, restricting to
    y -> y^torus_matrix on the chart {x0 != 0}."""

    components: tuple[MultiIndex, ...]
    torus_matrix: IntMatrix

    def __post_init__(self):
        n1 = len(self.components)
        if n1 < 2:
            raise DomainError("a map of P^n needs at least two components")
        degrees = {sum(c) for c in self.components}
        if len(degrees) != 1:
            raise DomainError("components must share one total degree")
        for c in self.components:
            if len(c) != n1:
                raise DomainError("component length must be n+1")
            if any(e < 0 for e in c):
                raise DomainError("negative exponent in component")
        for j in range(n1):
            if min(c[j] for c in self.components) != 0:
                raise DomainError("components share a common monomial factor")
        if self.torus_matrix.rows != n1 - 1 or abs(det(self.torus_matrix)) != 1:
            raise DomainError("torus matrix must be unimodular of size n")

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return sum(self.components[0])

    def is_identity(self) -> bool:
        return self.degree == 1 and all(c[i] == 1 for i, c in enumerate(self.components))


def _normalize_exponents(vectors: list[list[int]]) -> tuple[MultiIndex, ...]:
    n1 = len(vectors[0])
    mins = [min(v[j] for v in vectors) for j in range(n1)]
    return tuple(tuple(v[j] - mins[j] for j in range(n1)) for v in vectors)


def homogenize(a: IntMatrix) -> HomogeneousMonomialMap:
    """Minimal homogeneous monomial representative of the torus map
    y -> y^A on P^n, y_i = x_i / x0."""
    if a.rows != a.cols:
        raise DomainError("torus matrix must be square")
    if abs(det(a)) != 1:
        raise DomainError("torus matrix must be unimodular")
    n = a.rows
    vectors = [[0] * (n + 1)]
    for i in range(n):
        row = a.row(i)
        vectors.append([-sum(row)] + list(row))
    return HomogeneousMonomialMap(_normalize_exponents(vectors), a)


def identity_map(n: int) -> HomogeneousMonomialMap:
    comps = tuple(tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(n + 1))
    return HomogeneousMonomialMap(comps, IntMatrix.identity(n))


def compose(f: HomogeneousMonomialMap, g: HomogeneousMonomialMap) -> HomogeneousMonomialMap:
    """f after g, with the common monomial factor stripped."""
    if f.n != g.n:
        raise DomainError("maps act on different projective spaces")
    n1 = f.n + 1
    vectors = []
    for comp in f.components:
        vec = [0] * n1
        for j, e in enumerate(comp):
            if e:
                for l in range(n1):
                    vec[l] += e * g.components[j][l]
        vectors.append(vec)
    return HomogeneousMonomialMap(_normalize_exponents(vectors), f.torus_matrix.mul(g.torus_matrix))


def degree_sequence(a: IntMatrix, n_max: int) -> list[int]:
    """[deg(f), deg(f^2), ..., deg(f^n_max)] by iterated composition,
    cross-checked against direct homogenization of the matrix powers."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    f = homogenize(a)
    current = f
    power = a
    degrees = [f.degree]
    for _ in range(2, n_max + 1):
        current = compose(f, current)
        power = power.mul(a)
        direct = homogenize(power)
        if current != direct:
            raise DomainError("internal error: composition disagrees with direct homogenization")
        degrees.append(current.degree)
    return degrees


def _linear_fit(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least squares y = a + b x; returns (a, b, sse)."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    b = sxy / sxx if sxx else 0.0
    a = my - b * mx
    sse = sum((y - (a + b * x)) ** 2 for x, y in zip(xs, ys))
    return a, b, sse


def empirical_growth(seq: list[int]) -> GrowthClass:
    """Classify a degree sequence by inspection alone.

    Eventual periodicity (a repeated (value, successor) pair) means
    bounded growth.  Otherwise two models are fit on the tail: log(deg)
    linear in N (exponential) versus linear in log(N) (polynomial); the
    better exact fit wins, with the exponential claim additionally
    required to show stable ratios above 1.05.
    """
    if len(seq) < 6:
        raise DomainError("growth classification needs at least 6 terms")
    if any(d < 1 for d in seq):
        raise DomainError("degrees must be positive")
    pairs = list(zip(seq, seq[1:]))
    if len(set(pairs)) < len(pairs):
        return GrowthClass.bounded()
    tail_start = len(seq) // 2
    positions = list(range(tail_start + 1, len(seq) + 1))
    tail = seq[tail_start:]
    logs = [log(d) for d in tail]
    _, slope_exp, sse_exp = _linear_fit([float(p) for p in positions], logs)
    _, slope_poly, sse_poly = _linear_fit([log(p) for p in positions], logs)
    ratios = [b / a for a, b in zip(tail, tail[1:])]
    rate = exp(slope_exp)
    ratios_stable = (
        bool(ratios)
        and min(ratios) > 1.05
        and all(abs(r - rate) <= 0.15 * rate for r in ratios)
    )
    if sse_exp < sse_poly and ratios_stable:
        return GrowthClass.exponential(rate, exact=False)
    degree = max(1, round(slope_poly))
    return GrowthClass.polynomial(degree)


def predicted_growth(a: IntMatrix) -> GrowthClass:
    """Growth class from the matrix spectrum: finite order is bounded,
    infinite-order quasi-unipotent is polynomial of degree (max unit-root
    Jordan block - 1), anything else exponential at the spectral radius
    (float estimate, flagged approximate)."""
    verdict = quasi_unipotent_test(a)
    if verdict.kind == "finite-order":
        return GrowthClass.bounded()
    if verdict.kind == "quasi-unipotent-infinite":
        bound = totient_order_bound(a.rows)
        shifted = a.pow(bound).sub(IntMatrix.identity(a.rows))
        power = shifted
        index = 1
        while not power.is_zero():
            power = power.mul(shifted)
            index += 1
        return GrowthClass.polynomial(index - 1)
    return GrowthClass.exponential(spectral_radius_estimate(a), exact=False)
