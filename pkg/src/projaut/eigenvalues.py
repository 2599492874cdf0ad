"""Exact eigenvalue arithmetic: roots of unity times positive rationals.

An :class:`Eigenvalue` is a product ``zeta * q`` of a root of unity and a
positive rational stored by prime factorization.  The decomposition is
unique once both parts are normalized, so structural equality is semantic
equality.  Signs are folded into the torsion part as the order-2 root, so
the magnitude is always strictly positive.

All values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .numutil import factorize, lcm


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i * exp/order), stored reduced so order is the exact
    multiplicative order (gcd(exp, order) == 1; identity is (0, 1))."""

    order: int
    exp: int

    @staticmethod
    def make(exp: int, order: int) -> "RootOfUnity":
        if order < 1:
            raise DomainError("root-of-unity order must be positive")
        a = exp % order
        if a == 0:
            return RootOfUnity(1, 0)
        g = gcd(a, order)
        return RootOfUnity(order // g, a // g)

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(1, 0)

    def is_one(self) -> bool:
        return self.order == 1

    def mul(self, other: "RootOfUnity") -> "RootOfUnity":
        n = lcm(self.order, other.order)
        return RootOfUnity.make(self.exp * (n // self.order) + other.exp * (n // other.order), n)

    def pow(self, k: int) -> "RootOfUnity":
        return RootOfUnity.make(self.exp * k, self.order)

    def complex_value(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.exp / self.order)

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        if self.exp == 1:
            return f"zeta({self.order})"
        return f"zeta({self.order})^{self.exp}"


@dataclass(frozen=True)
class FactoredRational:
    """A positive rational as a sorted tuple of (prime, nonzero exponent)."""

    factors: tuple[tuple[int, int], ...]

    @staticmethod
    def make(factors: dict[int, int]) -> "FactoredRational":
        items = tuple(sorted((p, e) for p, e in factors.items() if e != 0))
        for p, _ in items:
            if p < 2:
                raise DomainError(f"not a prime: {p}")
        return FactoredRational(items)

    @staticmethod
    def one() -> "FactoredRational":
        return FactoredRational(())

    @staticmethod
    def from_fraction(q: Fraction) -> "FactoredRational":
        if q <= 0:
            raise DomainError("magnitude must be positive")
        factors = dict(factorize(q.numerator))
        for p, e in factorize(q.denominator).items():
            factors[p] = factors.get(p, 0) - e
        return FactoredRational.make(factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def is_one(self) -> bool:
        return not self.factors

    def mul(self, other: "FactoredRational") -> "FactoredRational":
        out = self.as_dict()
        for p, e in other.factors:
            out[p] = out.get(p, 0) + e
        return FactoredRational.make(out)

    def pow(self, k: int) -> "FactoredRational":
        if k == 0:
            return FactoredRational.one()
        return FactoredRational.make({p: e * k for p, e in self.factors})

    def as_fraction(self) -> Fraction:
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p) ** e
        return out

    def __str__(self) -> str:
        return str(self.as_fraction())


@dataclass(frozen=True)
class Eigenvalue:
    torsion: RootOfUnity
    magnitude: FactoredRational

    @staticmethod
    def one() -> "Eigenvalue":
        return Eigenvalue(RootOfUnity.one(), FactoredRational.one())

    @staticmethod
    def root_of_unity(exp: int, order: int) -> "Eigenvalue":
        return Eigenvalue(RootOfUnity.make(exp, order), FactoredRational.one())

    def is_one(self) -> bool:
        return self.torsion.is_one() and self.magnitude.is_one()

    def mul(self, other: "Eigenvalue") -> "Eigenvalue":
        return Eigenvalue(self.torsion.mul(other.torsion), self.magnitude.mul(other.magnitude))

    def pow(self, k: int) -> "Eigenvalue":
        return Eigenvalue(self.torsion.pow(k), self.magnitude.pow(k))

    def inverse(self) -> "Eigenvalue":
        return self.pow(-1)

    def modulus(self) -> Fraction:
        return self.magnitude.as_fraction()

    def is_rational(self) -> bool:
        return self.torsion.order <= 2

    def as_fraction(self) -> Fraction:
        """Exact rational value; only defined when torsion is +/-1."""
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        sign = -1 if self.torsion.order == 2 else 1
        return sign * self.magnitude.as_fraction()

    def complex_value(self) -> complex:
        return self.torsion.complex_value() * float(self.magnitude.as_fraction())

    def sort_key(self) -> tuple:
        return (self.magnitude.as_fraction(), self.torsion.order, self.torsion.exp)

    def __str__(self) -> str:
        if self.magnitude.is_one():
            return str(self.torsion)
        if self.torsion.is_one():
            return str(self.magnitude)
        if self.torsion.order == 2:
            return f"-{self.magnitude}"
        return f"{self.torsion} * {self.magnitude}"


def factor_rational(numerator: int, denominator: int) -> Eigenvalue:
    """The eigenvalue numerator/denominator in canonical zeta*q form."""
    if numerator == 0 or denominator == 0:
        raise DomainError("zero numerator or denominator")
    q = Fraction(numerator, denominator)
    torsion = RootOfUnity.make(1, 2) if q < 0 else RootOfUnity.one()
    return Eigenvalue(torsion, FactoredRational.from_fraction(abs(q)))


def from_fraction(q: Fraction) -> Eigenvalue:
    return factor_rational(q.numerator, q.denominator)


def eigen_mul_pow(values: list[Eigenvalue], exponents: list[int]) -> Eigenvalue:
    """Normalized product(values[i] ** exponents[i])."""
    if not values or len(values) != len(exponents):
        raise DomainError("values and exponents must have equal nonzero length")
    out = Eigenvalue.one()
    for v, e in zip(values, exponents):
        out = out.mul(v.pow(e))
    return out


def is_root_of_unity(v: Eigenvalue) -> int | None:
    """The multiplicative order when v is torsion, else None."""
    if v.magnitude.is_one():
        return v.torsion.order
    return None


_ZETA_RE = re.compile(r"^zeta\((\d+)\)(?:\^(-?\d+))?$")
_RAT_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_eigenvalue(text: str) -> Eigenvalue:
    """Parse shorthand such as "-3/2", "zeta(6)", "zeta(4)^3 * 5/2"."""
    cleaned = text.replace("−", "-").replace(" ", "")
    if not cleaned:
        raise DomainError("empty eigenvalue string")
    out = Eigenvalue.one()
    if cleaned.startswith("-"):
        out = out.mul(Eigenvalue.root_of_unity(1, 2))
        cleaned = cleaned[1:]
    seen_rational = False
    for part in cleaned.split("*"):
        m = _ZETA_RE.match(part)
        if m:
            order = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) else 1
            out = out.mul(Eigenvalue.root_of_unity(exp, order))
            continue
        m = _RAT_RE.match(part)
        if m:
            if seen_rational:
                raise DomainError(f"more than one rational factor in {text!r}")
            seen_rational = True
            den = int(m.group(2)) if m.group(2) else 1
            out = out.mul(factor_rational(int(m.group(1)), den))
            continue
        raise DomainError(f"cannot parse eigenvalue factor {part!r}")
    return out
