import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projaut import (
    DomainError,
    IntMatrix,
    complete_to_unimodular,
    det,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from projaut.intmatrix import inverse_unimodular, rank

M = IntMatrix.from_rows


def hnf_of_rows(rows):
    if not rows:
        return ()
    h, _ = hermite_normal_form(M(rows))
    return tuple(row for row in h.data if any(row))


class TestHermite:
    def test_worked_example(self):
        a = M([[2, 4], [6, 8]])
        h, u = hermite_normal_form(a)
        assert h == M([[2, 0], [0, 4]])
        assert u.mul(a) == h
        assert abs(det(u)) == 1

    def test_identity_fixed(self):
        a = IntMatrix.identity(3)
        h, u = hermite_normal_form(a)
        assert h == a
        assert u == a

    def test_zero_row(self):
        a = M([[0, 0]])
        h, u = hermite_normal_form(a)
        assert h == a
        assert u == IntMatrix.identity(1)

    def test_canonical_shape(self):
        rng = random.Random(3)
        for _ in range(100):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            a = M([[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)])
            h, u = hermite_normal_form(a)
            assert u.mul(a) == h
            assert abs(det(u)) == 1
            pivot_cols = []
            for row in h.data:
                nz = [j for j, x in enumerate(row) if x]
                if not nz:
                    continue
                p = nz[0]
                assert row[p] > 0
                pivot_cols.append(p)
            assert pivot_cols == sorted(pivot_cols)
            for r, p in enumerate(pivot_cols):
                for i in range(r):
                    assert 0 <= h.data[i][p] < h.data[r][p]


class TestSmith:
    def test_worked_example(self):
        # d1 = gcd of entries, d1*d2 = |det|
        a = M([[2, 4], [6, 8]])
        d, u, v = smith_normal_form(a)
        assert d == M([[2, 0], [0, 4]])
        assert u.mul(a).mul(v) == d
        assert abs(det(u)) == 1 and abs(det(v)) == 1

    def test_identity(self):
        a = IntMatrix.identity(2)
        d, _, _ = smith_normal_form(a)
        assert d == a

    def test_single_entry(self):
        d, _, _ = smith_normal_form(M([[6]]))
        assert d == M([[6]])

    def test_random_reconstruction_and_chain(self):
        rng = random.Random(5)
        for _ in range(100):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            a = M([[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)])
            d, u, v = smith_normal_form(a)
            assert u.mul(a).mul(v) == d
            assert abs(det(u)) == 1 and abs(det(v)) == 1
            diag = [d.data[i][i] for i in range(min(rows, cols))]
            for i in range(rows):
                for j in range(cols):
                    if i != j:
                        assert d.data[i][j] == 0
            for x, y in zip(diag, diag[1:]):
                assert x >= 0 and y >= 0
                if x != 0:
                    assert y % x == 0
                else:
                    assert y == 0


class TestKernel:
    def test_worked_example_vs_box_search(self):
        a = M([[1, 2, 3]])
        basis = kernel_basis(a)
        # independent oracle: every kernel vector in the box [-6,6]^3
        box = [
            (x, y, z)
            for x, y, z in product(range(-6, 7), repeat=3)
            if x + 2 * y + 3 * z == 0
        ]
        assert hnf_of_rows(list(basis.basis.data)) == hnf_of_rows(box)
        assert hnf_of_rows(list(basis.basis.data)) == hnf_of_rows([(2, -1, 0), (3, 0, -1)])

    def test_identity_has_trivial_kernel(self):
        assert kernel_basis(IntMatrix.identity(3)).rank == 0

    def test_zero_matrix_full_kernel(self):
        basis = kernel_basis(IntMatrix.zero(1, 3))
        assert basis.basis == IntMatrix.identity(3)

    def test_random_kernels_saturated(self):
        rng = random.Random(9)
        for _ in range(100):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            a = M([[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)])
            basis = kernel_basis(a)
            for vec in basis.vectors():
                assert all(sum(r[j] * vec[j] for j in range(cols)) == 0 for r in a.data)
            assert basis.rank + rank(a) == cols
            if basis.rank:
                d, _, _ = smith_normal_form(basis.basis)
                assert all(d.data[i][i] == 1 for i in range(basis.rank))


class TestCompleteToUnimodular:
    def test_worked_example(self):
        rows = M([[2, 1]])
        c = complete_to_unimodular(rows)
        assert c.data[0] == (2, 1)
        assert abs(det(c)) == 1

    def test_standard_basis(self):
        assert complete_to_unimodular(IntMatrix.identity(4)) == IntMatrix.identity(4)

    def test_unsaturated_rejected(self):
        with pytest.raises(DomainError, match="Smith invariant"):
            complete_to_unimodular(M([[2, 0]]))

    def test_dependent_rejected(self):
        with pytest.raises(DomainError):
            complete_to_unimodular(M([[1, 2], [2, 4]]))

    def test_random_saturated_inputs(self):
        rng = random.Random(17)
        done = 0
        while done < 60:
            r = rng.randint(1, 3)
            n = rng.randint(r, 4)
            a = M([[rng.randint(-4, 4) for _ in range(n)] for _ in range(r)])
            d, _, _ = smith_normal_form(a)
            if any(d.data[i][i] != 1 for i in range(r)):
                continue
            c = complete_to_unimodular(a)
            assert c.data[:r] == a.data
            assert abs(det(c)) == 1
            done += 1


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6),
        min_size=1,
        max_size=6,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_hnf_snf_reconstruct(rows):
    a = M(rows)
    h, u = hermite_normal_form(a)
    assert u.mul(a) == h and abs(det(u)) == 1
    d, p, q = smith_normal_form(a)
    assert p.mul(a).mul(q) == d and abs(det(p)) == 1 and abs(det(q)) == 1


def test_hnf_is_canonical_for_the_row_lattice():
    # row lattices agree iff HNFs agree: multiplying by a random unimodular
    # matrix on the left never changes the HNF
    rng = random.Random(37)
    for _ in range(60):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = M([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
        for _ in range(8):
            i, j = rng.randrange(rows), rng.randrange(rows)
            if i != j:
                c = rng.randint(-3, 3)
                u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        shuffled = M(u).mul(a)
        assert hermite_normal_form(a)[0] == hermite_normal_form(shuffled)[0]


def test_big_entry_swell_stays_exact():
    # HNF intermediate swell is real; make sure nothing truncates
    rng = random.Random(131)
    for _ in range(10):
        a = M([[rng.randint(-(10**12), 10**12) for _ in range(5)] for _ in range(5)])
        h, u = hermite_normal_form(a)
        assert u.mul(a) == h and abs(det(u)) == 1
        d, p, q = smith_normal_form(a)
        assert p.mul(a).mul(q) == d


def test_inverse_unimodular():
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(1, 4)
        # random unimodular via row operations on the identity
        a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(8):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-3, 3)
                a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        m = M(a)
        assert m.mul(inverse_unimodular(m)) == IntMatrix.identity(n)
