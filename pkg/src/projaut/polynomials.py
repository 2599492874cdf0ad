"""Multivariate polynomials with exact rational coefficients.

A monomial is a MultiIndex: a tuple of nonnegative exponents over the
variables x0..xn.  A PolynomialQ maps MultiIndex -> nonzero Fraction;
zero coefficients are never stored, so equality of term dicts is
equality of polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import DomainError

MultiIndex = tuple[int, ...]


def mi_degree(mi: MultiIndex) -> int:
    return sum(mi)


def mi_mul(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def mi_divides(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mi_div(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if not mi_divides(b, a):
        raise DomainError(f"monomial {b} does not divide {a}")
    return tuple(x - y for x, y in zip(a, b))


def mi_str(mi: MultiIndex) -> str:
    parts = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mi) if e]
    return "*".join(parts) if parts else "1"


def monomials_of_degree(n_vars: int, degree: int) -> list[MultiIndex]:
    """All degree-d monomials in n_vars variables, graded-lex descending
    ((d,0,..) first).  len == C(n_vars - 1 + d, d)."""
    out = []
    for combo in combinations_with_replacement(range(n_vars), degree):
        exps = [0] * n_vars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class PolynomialQ:
    n_vars: int
    terms: tuple[tuple[MultiIndex, Fraction], ...] = field(default=())

    @staticmethod
    def make(n_vars: int, terms) -> "PolynomialQ":
        acc: dict[MultiIndex, Fraction] = {}
        for mi, c in dict(terms).items() if isinstance(terms, dict) else terms:
            mi = tuple(int(e) for e in mi)
            if len(mi) != n_vars:
                raise DomainError("multi-index length does not match variable count")
            if any(e < 0 for e in mi):
                raise DomainError("negative exponent in monomial")
            c = Fraction(c)
            if c:
                acc[mi] = acc.get(mi, Fraction(0)) + c
        items = tuple(sorted(((mi, c) for mi, c in acc.items() if c), reverse=True))
        return PolynomialQ(n_vars, items)

    @staticmethod
    def zero(n_vars: int) -> "PolynomialQ":
        return PolynomialQ(n_vars, ())

    @staticmethod
    def monomial(mi: MultiIndex, coeff=1) -> "PolynomialQ":
        return PolynomialQ.make(len(mi), [(tuple(mi), Fraction(coeff))])

    @staticmethod
    def constant(n_vars: int, value) -> "PolynomialQ":
        return PolynomialQ.make(n_vars, [((0,) * n_vars, Fraction(value))])

    def term_dict(self) -> dict[MultiIndex, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mi: MultiIndex) -> Fraction:
        return self.term_dict().get(tuple(mi), Fraction(0))

    def add(self, other: "PolynomialQ") -> "PolynomialQ":
        self._check(other)
        acc = self.term_dict()
        for mi, c in other.terms:
            acc[mi] = acc.get(mi, Fraction(0)) + c
        return PolynomialQ.make(self.n_vars, acc)

    def sub(self, other: "PolynomialQ") -> "PolynomialQ":
        return self.add(other.scale(-1))

    def scale(self, c) -> "PolynomialQ":
        c = Fraction(c)
        if not c:
            return PolynomialQ.zero(self.n_vars)
        return PolynomialQ(self.n_vars, tuple((mi, coeff * c) for mi, coeff in self.terms))

    def mul(self, other: "PolynomialQ") -> "PolynomialQ":
        self._check(other)
        acc: dict[MultiIndex, Fraction] = {}
        for mi1, c1 in self.terms:
            for mi2, c2 in other.terms:
                key = mi_mul(mi1, mi2)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return PolynomialQ.make(self.n_vars, acc)

    def mul_monomial(self, mi: MultiIndex, coeff=1) -> "PolynomialQ":
        return PolynomialQ.make(
            self.n_vars, [(mi_mul(t, tuple(mi)), c * Fraction(coeff)) for t, c in self.terms]
        )

    def div_monomial(self, mi: MultiIndex) -> "PolynomialQ":
        """Exact division by a monomial; raises if any term is not divisible."""
        return PolynomialQ.make(self.n_vars, [(mi_div(t, tuple(mi)), c) for t, c in self.terms])

    def degree(self) -> int:
        if self.is_zero():
            return -1
        return max(mi_degree(mi) for mi, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {mi_degree(mi) for mi, _ in self.terms}
        return len(degrees) <= 1

    def support_vars(self) -> set[int]:
        return {i for mi, _ in self.terms for i, e in enumerate(mi) if e}

    def gcd_monomial(self) -> MultiIndex:
        """Largest monomial dividing every term (the zero exponent vector
        for the zero polynomial)."""
        if self.is_zero():
            return (0,) * self.n_vars
        mins = [min(mi[i] for mi, _ in self.terms) for i in range(self.n_vars)]
        return tuple(mins)

    def leading(self) -> tuple[MultiIndex, Fraction]:
        """Leading term in graded-lex order."""
        if self.is_zero():
            raise DomainError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: (mi_degree(t[0]), t[0]))

    def monic(self) -> "PolynomialQ":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading()[1])

    def _check(self, other: "PolynomialQ") -> None:
        if self.n_vars != other.n_vars:
            raise DomainError("variable-count mismatch")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mi, c in self.terms:
            mono = mi_str(mi)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_to_vector(p: PolynomialQ, index: dict[MultiIndex, int]) -> list[Fraction]:
    vec = [Fraction(0)] * len(index)
    for mi, c in p.terms:
        if mi not in index:
            raise DomainError(f"monomial {mi_str(mi)} outside the expected basis")
        vec[index[mi]] = c
    return vec


def vector_to_poly(vec, monomials: list[MultiIndex], n_vars: int) -> PolynomialQ:
    return PolynomialQ.make(n_vars, [(mi, c) for mi, c in zip(monomials, vec) if c])
