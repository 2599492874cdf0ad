"""Exact integer-matrix normal forms and lattice operations.

Everything runs on arbitrary-precision Python integers: Hermite and Smith
normal forms with transformation matrices, saturated kernel bases, and
unimodular completion of saturated row sets.  The row-style Hermite form
used here (positive pivots, entries above a pivot reduced into
[0, pivot)) is canonical, so lattice equality is testable by HNF
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .numutil import xgcd


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows_list) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows_list)
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        for row in data:
            if len(row) != ncols:
                raise DomainError("ragged matrix rows")
        return IntMatrix(nrows, ncols, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("matrix dimension mismatch")
        ot = other.transpose().data
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.data),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("matrix dimension mismatch")
        return IntMatrix(
            self.rows, self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("matrix dimension mismatch")
        return IntMatrix(
            self.rows, self.cols,
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def neg(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def pow(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise DomainError("only square matrices can be powered")
        if k < 0:
            inv = inverse_unimodular(self)
            return inv.pow(-k)
        out = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out.mul(base)
            base = base.mul(base)
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.data for a in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DomainError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(r) for r in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and abs(det(a)) == 1


def inverse_unimodular(a: IntMatrix) -> "IntMatrix":
    """Inverse of a unimodular integer matrix (exact, integer output)."""
    if not is_unimodular(a):
        raise DomainError("matrix is not unimodular")
    n = a.rows
    aug = [[Fraction(a.data[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise DomainError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in out])


def rank(a: IntMatrix) -> int:
    """Rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in a.data]
    r = 0
    for col in range(a.cols):
        piv = next((i for i in range(r, a.rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, a.rows):
            if m[i][col]:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


@dataclass(frozen=True)
class LatticeBasis:
    """Rows of `basis` are independent vectors spanning a sublattice of Z^ambient_dim."""

    ambient_dim: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows and self.basis.cols != self.ambient_dim:
            raise DomainError("basis width does not match ambient dimension")
        if rank(self.basis) != self.basis.rows:
            raise DomainError("basis rows are linearly dependent")

    @property
    def rank(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple[int, ...]]:
        return list(self.basis.data)


def _row_combine(m: list[list[int]], u: list[list[int]], r: int, i: int, c: int) -> None:
    # Zero m[i][c] against pivot m[r][c] with one unimodular 2x2 row op.
    a, b = m[r][c], m[i][c]
    if b == 0:
        return
    if a == 0:
        m[r], m[i] = m[i], m[r]
        u[r], u[i] = u[i], u[r]
        return
    if b % a == 0:
        q = b // a
        m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        return
    g, x, y = xgcd(a, b)
    ag, bg = a // g, b // g
    m[r], m[i] = (
        [x * p + y * q for p, q in zip(m[r], m[i])],
        [-bg * p + ag * q for p, q in zip(m[r], m[i])],
    )
    u[r], u[i] = (
        [x * p + y * q for p, q in zip(u[r], u[i])],
        [-bg * p + ag * q for p, q in zip(u[r], u[i])],
    )


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns (H, U) with U unimodular and U @ A == H.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), pivot columns strictly increase, zero rows sink to the
    bottom.  This form is unique, hence usable for lattice equality.
    """
    m = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, a.rows):
            _row_combine(m, u, r, i, c)
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == a.rows:
            break
    return IntMatrix.from_rows(m) if a.rows else a, IntMatrix.from_rows(u) if a.rows else IntMatrix.identity(0)


def _snf_diagonalize(m, u, v):
    rows, cols = len(m), len(m[0]) if m else 0
    t = 0
    while True:
        # locate a nonzero entry in the trailing block
        pos = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0:
                    if pos is None or abs(m[i][j]) < abs(m[pos[0]][pos[1]]):
                        pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            m[t], m[i0] = m[i0], m[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in m:
                row[t], row[j0] = row[j0], row[t]
            for row in v:
                row[t], row[j0] = row[j0], row[t]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    _row_combine(m, u, t, i, t)
                    dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    a, b = m[t][t], m[t][j]
                    if b % a == 0:
                        q = b // a
                        for row in m:
                            row[j] -= q * row[t]
                        for vr in v:
                            vr[j] -= q * vr[t]
                    else:
                        g, x, y = xgcd(a, b)
                        ag, bg = a // g, b // g
                        for row in m:
                            pt, pj = row[t], row[j]
                            row[t], row[j] = x * pt + y * pj, -bg * pt + ag * pj
                        for vr in v:
                            qt, qj = vr[t], vr[j]
                            vr[t], vr[j] = x * qt + y * qj, -bg * qt + ag * qj
                        dirty = True
        t += 1
        if t == min(rows, cols):
            break


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Returns (D, U, V): U, V unimodular, U @ A @ V == D diagonal with
    nonnegative entries d1 | d2 | ..."""
    rows, cols = a.rows, a.cols
    m = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    _snf_diagonalize(m, u, v)
    k = min(rows, cols)
    # enforce the divisibility chain with 2x2 fixes diag(a,b) -> diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            aa, bb = m[i][i], m[i + 1][i + 1]
            if aa == 0 and bb != 0:
                m[i][i], m[i + 1][i + 1] = bb, 0
                u[i], u[i + 1] = u[i + 1], u[i]
                for row in v:
                    row[i], row[i + 1] = row[i + 1], row[i]
                changed = True
                continue
            if aa != 0 and bb % aa != 0:
                # col_{i} += col_{i+1}; then re-diagonalize the 2x2 corner
                for row in m:
                    row[i] += row[i + 1]
                for vr in v:
                    vr[i] += vr[i + 1]
                _snf_diagonalize(m, u, v)
                changed = True
    for i in range(k):
        if m[i][i] < 0:
            for j in range(cols):
                m[i][j] = -m[i][j]
            u[i] = [-x for x in u[i]]
    return (
        IntMatrix.from_rows(m) if rows else a,
        IntMatrix.from_rows(u) if rows else IntMatrix.identity(0),
        IntMatrix.from_rows(v) if cols else IntMatrix.identity(0),
    )


def kernel_basis(a: IntMatrix) -> LatticeBasis:
    """Basis of the saturated integer kernel {m in Z^cols : A @ m = 0}.

    Row-reduce [A^T | I]; the identity blocks of rows whose A^T part
    vanished span the full kernel lattice.  The result is returned in
    canonical HNF.
    """
    n, m = a.cols, a.rows
    stacked = IntMatrix.from_rows(
        [list(a.column(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    ) if n else IntMatrix.zero(0, m)
    h, _ = hermite_normal_form(stacked)
    kernel_rows = [row[m:] for row in h.data if all(x == 0 for x in row[:m])]
    if not kernel_rows:
        return LatticeBasis(n, IntMatrix.zero(0, n))
    canon, _ = hermite_normal_form(IntMatrix.from_rows(kernel_rows))
    return LatticeBasis(n, canon)


def complete_to_unimodular(rows: IntMatrix) -> IntMatrix:
    """Extend r saturated independent rows of Z^n to an n x n matrix with
    |det| = 1 whose first r rows equal the input.

    Saturation (Z^n / rowspan torsion-free) is required; the offending
    Smith invariant is reported otherwise.
    """
    r, n = rows.rows, rows.cols
    if r == 0:
        return IntMatrix.identity(n)
    if r > n:
        raise DomainError("more rows than ambient dimension")
    d, _, v = smith_normal_form(rows)
    invariants = [d.data[i][i] for i in range(r)]
    for i, di in enumerate(invariants):
        if di == 0:
            raise DomainError("rows are linearly dependent (Smith invariant 0)")
        if di != 1:
            raise DomainError(f"rows do not span a saturated lattice (Smith invariant d{i + 1} = {di})")
    v_inv = inverse_unimodular(v)
    completion = [list(row) for row in rows.data] + [list(v_inv.data[i]) for i in range(r, n)]
    out = IntMatrix.from_rows(completion)
    if not is_unimodular(out):  # guaranteed by construction
        raise DomainError("internal error: completion is not unimodular")
    return out
