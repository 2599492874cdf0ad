"""Shared oracle helpers for the test suite.

Everything here is deliberately independent of the library internals it
checks: box searches enumerate exponent vectors directly on prime
exponent/torsion data, and lattice membership reduces against a Hermite
basis by hand.
"""

from fractions import Fraction
from itertools import product

from projaut import Eigenvalue, PolynomialQ, factor_rational, pullback_poly
from projaut.eigenvalues import FactoredRational, RootOfUnity
from projaut.numutil import lcm_all
from projaut.spectral import SpectralData

one = Eigenvalue.one()


def random_zeta_q(rng, primes=(2, 3, 5), max_order=6, max_exp=2):
    order = rng.randint(1, max_order)
    torsion = RootOfUnity.make(rng.randrange(order), order)
    mag = {}
    for p in primes:
        e = rng.randint(-max_exp, max_exp)
        if e and rng.random() < 0.8:
            mag[p] = e
    return Eigenvalue(torsion, FactoredRational.make(mag))


def _component_vectors(values, primes):
    """(prime exponent vector + torsion residue, modulus) per value."""
    n = lcm_all(v.torsion.order for v in values)
    vecs = []
    for v in values:
        mag = v.magnitude.as_dict()
        vecs.append(tuple(mag.get(p, 0) for p in primes) + (v.torsion.exp * (n // v.torsion.order),))
    return vecs, n


def box_relations(values, radius, primes=(2, 3, 5)):
    """All nonzero m in [-radius, radius]^k with prod(values**m) == 1,
    found by meet-in-the-middle over exact integer component vectors."""
    k = len(values)
    vecs, n = _component_vectors(values, primes)
    width = len(primes)
    left_n = k // 2
    rng_box = range(-radius, radius + 1)
    left: dict[tuple, list[tuple]] = {}
    for combo in product(rng_box, repeat=left_n):
        acc = [0] * width
        tors = 0
        for m, vec in zip(combo, vecs[:left_n]):
            for i in range(width):
                acc[i] += m * vec[i]
            tors += m * vec[width]
        key = tuple(acc) + (tors % n,)
        left.setdefault(key, []).append(combo)
    found = []
    for combo in product(rng_box, repeat=k - left_n):
        acc = [0] * width
        tors = 0
        for m, vec in zip(combo, vecs[left_n:]):
            for i in range(width):
                acc[i] += m * vec[i]
            tors += m * vec[width]
        key = tuple(-a for a in acc) + ((-tors) % n,)
        for left_combo in left.get(key, ()):
            m_full = left_combo + combo
            if any(m_full):
                found.append(m_full)
    return found


def box_has_relation(values, radius, primes=(2, 3, 5, 7)):
    """True iff some nonzero exponent vector in the box is an exact relation."""
    vecs, n = _component_vectors(values, primes)
    width = len(primes)
    for combo in product(range(-radius, radius + 1), repeat=len(values)):
        if not any(combo):
            continue
        acc = [0] * width
        tors = 0
        for m, vec in zip(combo, vecs):
            for i in range(width):
                acc[i] += m * vec[i]
            tors += m * vec[width]
        if not any(acc) and tors % n == 0:
            return True
    return False


def hermite_contains(hnf_rows, vector):
    """Membership of an integer vector in the lattice spanned by
    canonical-HNF rows, by direct reduction against the pivots."""
    v = list(vector)
    for row in hnf_rows:
        pivot = next((j for j, x in enumerate(row) if x), None)
        if pivot is None:
            continue
        if v[pivot] % row[pivot] != 0:
            return False
        q = v[pivot] // row[pivot]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def m2_form(*mus):
    return SpectralData(((one, 2),) + tuple((v, 1) for v in mus), normalized=True)


def random_chain_subspace(rng, max_n=3, max_degree=4):
    """An invariant single-chain subspace of an m2 normal form, built by
    iterating f* - id on a random cyclic vector of exact x1-degree m,
    with a random monomial in the independent variables."""
    n = rng.randint(1, max_n)
    n_vars = n + 1
    k = rng.randint(1, n)
    head_vars = [0] + list(range(2, k + 1))
    tail = list(range(k + 1, n_vars))
    mus = []
    for i in range(2, n_vars):
        mus.append(one if i <= k else factor_rational((2, 3, 5)[(i - k - 1) % 3], 1))
    s = m2_form(*mus)
    q_deg = rng.randint(0, 1) if tail else 0
    q = [0] * n_vars
    for _ in range(q_deg):
        q[rng.choice(tail)] += 1
    m = rng.randint(0, min(2, max_degree - 1 - q_deg))
    min_base = 1 if (m == 0 and q_deg == 0) else 0
    base_deg = rng.randint(min_base, max_degree - m - q_deg)
    d_head = m + base_deg
    terms = {}
    for i in range(m + 1):
        deg_i = d_head - (m - i)
        for _ in range(rng.randint(1, 2)):
            exps = [0] * n_vars
            exps[1] = m - i
            for _ in range(deg_i):
                exps[rng.choice(head_vars)] += 1
            coeff = rng.randint(-3, 3)
            key = tuple(a + b for a, b in zip(exps, q))
            if coeff:
                terms[key] = terms.get(key, Fraction(0)) + coeff
    top = PolynomialQ.make(n_vars, terms)
    if all(mi[1] < m for mi in top.term_dict()):
        exps = [0] * n_vars
        exps[1] = m
        for _ in range(d_head - m):
            exps[rng.choice(head_vars)] += 1
        top = top.add(PolynomialQ.monomial(tuple(a + b for a, b in zip(exps, q))))
    gens = [top]
    current = top
    for _ in range(m):
        current = pullback_poly(s, current).sub(current)
        gens.append(current)
    return s, gens, m + 1
