"""Exact linear algebra and univariate polynomial utilities over Q.

Matrices are lists of lists of Fraction; univariate polynomials are
coefficient lists indexed by power (p[i] is the coefficient of x^i).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

Row = list[Fraction]


def frac_rows(rows) -> list[Row]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(rows: list[Row]) -> int:
    return len(rref(rows)[0])


def in_row_span(basis: list[Row], vector: Row) -> bool:
    if not basis:
        return all(x == 0 for x in vector)
    return rank(basis + [vector]) == rank(basis)


def coords_in_basis(basis: list[Row], vector: Row) -> list[Fraction] | None:
    """Coefficients expressing `vector` over `basis` rows, or None."""
    if not basis:
        return [] if all(x == 0 for x in vector) else None
    ncols = len(vector)
    nb = len(basis)
    # solve c^T B = v by Gaussian elimination on the transposed system
    aug = [[basis[j][i] for j in range(nb)] + [vector[i]] for i in range(ncols)]
    reduced, pivots = rref(aug)
    coeffs: list[Fraction] = [Fraction(0)] * nb
    for row, p in zip(reduced, pivots):
        if p == nb:
            return None  # inconsistent
        coeffs[p] = row[nb]
    # non-pivot unknowns stay 0; verify (basis rows are not assumed independent)
    check = [sum(c * basis[j][i] for j, c in enumerate(coeffs)) for i in range(ncols)]
    return coeffs if check == list(vector) else None


def nullspace(rows: list[Row], ncols: int) -> list[Row]:
    """Basis of {x : M @ x = 0}, solutions returned as rows."""
    if not rows:
        return [[Fraction(1 if i == j else 0) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def mat_mul(a: list[Row], b: list[Row]) -> list[Row]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_identity(n: int) -> list[Row]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_sub(a: list[Row], b: list[Row]) -> list[Row]:
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_is_zero(a: list[Row]) -> bool:
    return all(x == 0 for row in a for x in row)


def charpoly(a: list[Row]) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - A) via Faddeev-LeVerrier.

    Returns coefficients p with p[i] the coefficient of x^i, p[n] == 1.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = mat_identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


# ---------------------------------------------------------------------------
# univariate polynomials over Q


def poly_trim(p: list[Fraction]) -> list[Fraction]:
    q = list(p)
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def poly_derivative(p: list[Fraction]) -> list[Fraction]:
    if len(p) <= 1:
        return [Fraction(0)]
    return [i * c for i, c in enumerate(p)][1:]


def poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = poly_trim(num)
    den = poly_trim(den)
    if den == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    rem = list(num)
    dlead = den[-1]
    while len(rem) >= len(den) and poly_trim(rem) != [Fraction(0)]:
        shift = len(rem) - len(den)
        factor = rem[-1] / dlead
        if factor == 0:
            rem.pop()
            continue
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        rem.pop()
    return poly_trim(quot), poly_trim(rem if rem else [Fraction(0)])


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = poly_trim(a), poly_trim(b)
    while b != [Fraction(0)]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def poly_squarefree(p: list[Fraction]) -> list[Fraction]:
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(p, g)
    if poly_trim(r) != [Fraction(0)]:
        raise ArithmeticError("squarefree division left a remainder")
    return q


def poly_str(p: list[Fraction], var: str = "x") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [poly_trim(p), poly_trim(poly_derivative(p))]
    while chain[-1] != [Fraction(0)]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if poly_trim(r) == [Fraction(0)]:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: list[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi]."""
    chain = _sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def largest_real_root(p: list[Fraction], tol: Fraction = Fraction(1, 10**10)) -> Fraction | None:
    """Largest real root of p (any multiplicities), located to width < tol.

    Uses a Sturm chain on the squarefree part, so clustered or
    even-multiplicity roots cannot be missed.  Returns the midpoint of
    the final isolating interval, or None if p has no real root.
    """
    sf = poly_squarefree(poly_trim(p))
    if len(sf) == 1:
        return None
    bound = Fraction(1) + max(abs(c) for c in sf[:-1]) / abs(sf[-1])
    chain = _sturm_chain(sf)
    lo, hi = -bound, bound
    if _sign_changes(chain, lo) - _sign_changes(chain, hi) == 0:
        return None
    # keep the rightmost root inside (lo, hi]
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _sign_changes(chain, mid) - _sign_changes(chain, hi) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def rational_roots(p: list[Fraction]) -> tuple[dict[Fraction, int], list[Fraction]]:
    """All rational roots of p with multiplicities, plus the root-free
    remaining factor (monic).  Uses the rational root theorem on the
    denominator-cleared polynomial and exact deflation."""
    from math import gcd

    from .numutil import divisors

    work = poly_trim(p)
    if work == [Fraction(0)]:
        raise DomainError("zero polynomial has every root")
    roots: dict[Fraction, int] = {}
    # strip roots at 0 first
    while work[0] == 0 and len(work) > 1:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        work = work[1:]
    while len(work) > 1:
        denlcm = 1
        for c in work:
            denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
        ints = [int(c * denlcm) for c in work]
        lead, const = ints[-1], ints[0]
        found = None
        for q in divisors(abs(lead)):
            for pnum in divisors(abs(const)):
                for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                    if poly_eval(work, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        # deflate by (x - found) until it no longer divides
        while True:
            quot, rem = poly_divmod(work, [-found, Fraction(1)])
            if poly_trim(rem) != [Fraction(0)]:
                break
            roots[found] = roots.get(found, 0) + 1
            work = quot
            if len(work) == 1:
                break
    if len(work) > 1 and work[-1] != 1:
        work = [c / work[-1] for c in work]
    return roots, work


def kron(a: list[Row], b: list[Row]) -> list[Row]:
    """Kronecker product (used to expose |lambda|^2 as a real eigenvalue)."""
    na, nb = len(a), len(b)
    return [
        [a[i][j] * b[k][l] for j in range(na) for l in range(nb)]
        for i in range(na)
        for k in range(nb)
    ]
