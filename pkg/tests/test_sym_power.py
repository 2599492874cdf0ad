import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from helpers import random_chain_subspace

from projaut import (
    DomainError,
    Eigenvalue,
    PolynomialQ,
    SpectralData,
    factor_rational,
    invariant_subspace_test,
    m1_invariant_structure,
    m2_irreducible_chain,
    monomials_of_degree,
    pullback_components,
    pullback_poly,
    shift_equation_solve,
    weight_decomposition,
)

one = Eigenvalue.one()
P = PolynomialQ


def ev(n, d=1):
    return factor_rational(n, d)


def zeta(exp, order):
    return Eigenvalue.root_of_unity(exp, order)


def diag(*values):
    return SpectralData(tuple((v, 1) for v in values), normalized=True)


def m2_form(*mus):
    return SpectralData(((one, 2),) + tuple((v, 1) for v in mus), normalized=True)


def mono(*exps):
    return P.monomial(tuple(exps))


class TestPullback:
    def test_m2_substitution(self):
        out = pullback_poly(m2_form(), mono(0, 2))
        assert out == P.make(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_m1_character_action(self):
        s = diag(one, ev(2))
        out = pullback_poly(s, mono(1, 1))
        assert out == mono(1, 1).scale(2)

    def test_m2_fixed_product(self):
        s = m2_form(one)
        assert pullback_poly(s, mono(1, 0, 1)) == mono(1, 0, 1)

    def test_irrational_scalar_raises_but_components_work(self):
        s = diag(one, zeta(1, 3).mul(ev(2)))
        with pytest.raises(DomainError):
            pullback_poly(s, mono(0, 1))
        comps = pullback_components(s, mono(0, 1))
        assert len(comps) == 1
        scale, part = comps[0]
        assert scale == zeta(1, 3).mul(ev(2))
        assert part == mono(0, 1)

    def test_variable_mismatch(self):
        with pytest.raises(DomainError):
            pullback_poly(m2_form(), mono(1, 0, 0))

    def test_multiplicative(self):
        rng = random.Random(61)
        s = m2_form(ev(-1), ev(2))
        for _ in range(40):
            f = random_poly(rng, 4, rng.randint(1, 3))
            g = random_poly(rng, 4, rng.randint(1, 3))
            if f.is_zero() or g.is_zero():
                continue
            assert pullback_poly(s, f.mul(g)) == pullback_poly(s, f).mul(pullback_poly(s, g))

    def test_iterate_power(self):
        s = m2_form(zeta(1, 2))
        p = mono(0, 1, 0)
        twice = pullback_poly(s, pullback_poly(s, p))
        assert twice == pullback_poly(s, p, power=2)


def random_poly(rng, n_vars, degree):
    monos = monomials_of_degree(n_vars, degree)
    terms = {mi: Fraction(rng.randint(-3, 3)) for mi in monos if rng.random() < 0.5}
    return P.make(n_vars, terms)


class TestWeightDecomposition:
    def test_one_torsion_direction(self):
        s = diag(one, one, ev(2))
        comps = weight_decomposition(s, 2)
        bases = [set(c.basis) for c in comps]
        assert {frozenset(b) for b in bases} == {
            frozenset({(2, 0, 0), (1, 1, 0), (0, 2, 0)}),
            frozenset({(1, 0, 1), (0, 1, 1)}),
            frozenset({(0, 0, 2)}),
        }
        assert [c.character for c in comps] == [(0, 0), (1, 0), (2, 0)]

    def test_fully_independent_singletons(self):
        s = diag(one, ev(2), ev(3))
        comps = weight_decomposition(s, 2)
        assert len(comps) == 6
        assert all(len(c.basis) == 1 for c in comps)

    def test_p1_degree_1(self):
        s = diag(one, ev(2))
        comps = weight_decomposition(s, 1)
        assert [list(c.basis) for c in comps] == [[(1, 0)], [(0, 1)]]

    def test_partition_counts(self):
        for n in range(1, 4):
            for d in range(1, 5):
                values = [one] + [ev(p) for p in (2, 3, 5)[:n]]
                comps = weight_decomposition(diag(*values), d)
                total = sum(len(c.basis) for c in comps)
                assert total == comb(n + d, d)
                seen = set()
                for c in comps:
                    for mi in c.basis:
                        assert mi not in seen
                        seen.add(mi)

    def test_components_invariant(self):
        s = diag(one, zeta(1, 3), ev(2))
        for d in (1, 2, 3):
            for c in weight_decomposition(s, d):
                gens = [P.monomial(mi) for mi in c.basis]
                assert invariant_subspace_test(s, gens)

    def test_torsion_bearing_independent_tail(self):
        # head torsion -1, independent tail zeta3 * 2: classes split by
        # (tail exponent, head character) and nothing collapses
        lam = zeta(1, 3).mul(ev(2))
        s = diag(one, ev(-1), lam)
        comps = weight_decomposition(s, 2)
        assert [(c.character, c.basis) for c in comps] == [
            ((0, 0), ((2, 0, 0), (0, 2, 0))),
            ((0, 1), ((1, 1, 0),)),
            ((1, 0), ((1, 0, 1),)),
            ((1, 1), ((0, 1, 1),)),
            ((2, 0), ((0, 0, 2),)),
        ]
        assert invariant_subspace_test(s, [P.monomial((2, 0, 0)), P.monomial((0, 2, 0))])
        assert not invariant_subspace_test(
            s, [P.make(3, {(2, 0, 0): 1, (1, 1, 0): 1})]
        )


class TestInvariantSubspace:
    def test_scaled_pair(self):
        s = diag(one, one, ev(2))
        assert invariant_subspace_test(s, [mono(1, 0, 1), mono(0, 1, 1)])

    def test_mixed_characters_fail(self):
        s = diag(one, one, ev(2))
        w = [P.make(3, {(1, 0, 0): 1, (0, 0, 1): 1})]
        assert not invariant_subspace_test(s, w)

    def test_m2_symmetric_square(self):
        w = [mono(2, 0), mono(1, 1), mono(0, 2)]
        assert invariant_subspace_test(m2_form(), w)

    def test_m2_needs_unipotent_closure(self):
        assert not invariant_subspace_test(m2_form(), [mono(0, 2)])
        assert invariant_subspace_test(m2_form(), [mono(2, 0)])

    def test_mixed_degrees_rejected(self):
        with pytest.raises(DomainError):
            invariant_subspace_test(m2_form(), [mono(1, 0), mono(2, 0)])

    def test_decomposition_criterion_exhaustive(self):
        # with a fully independent tail and no torsion, a subspace is
        # invariant iff it is spanned by full weight components; monomial
        # subsets realize exactly the component-sum subspaces
        s = diag(one, ev(2), ev(3))
        d = 2
        monos = monomials_of_degree(3, d)
        comps = weight_decomposition(s, d)
        comp_sets = [frozenset(c.basis) for c in comps]
        for r in range(1, len(monos) + 1):
            for subset in combinations(monos, r):
                w = [P.monomial(mi) for mi in subset]
                expected = frozenset(subset) in {
                    frozenset().union(*sel) if sel else frozenset()
                    for k in range(len(comp_sets) + 1)
                    for sel in combinations(comp_sets, k)
                }
                assert invariant_subspace_test(s, w) == expected

    def test_random_coefficient_only_if(self):
        # a generic line through two singleton components is never invariant
        rng = random.Random(67)
        s = diag(one, ev(2), ev(3))
        for _ in range(30):
            w = [random_poly(rng, 3, 2)]
            if w[0].is_zero():
                continue
            comps = weight_decomposition(s, 2)
            projections = project_onto_components(w[0], comps)
            nontrivial = [p for p in projections if not p.is_zero()]
            assert invariant_subspace_test(s, w) == (len(nontrivial) == 1)


def project_onto_components(poly, comps):
    out = []
    for c in comps:
        keep = {mi: coeff for mi, coeff in poly.terms if mi in set(c.basis)}
        out.append(P.make(poly.n_vars, keep))
    return out


class TestM1Structure:
    def test_shared_tail_monomial(self):
        s = diag(one, one, ev(2))
        pairs = m1_invariant_structure(s, [mono(1, 0, 1), mono(0, 1, 1)])
        assert sorted((str(p), q) for p, q in pairs) == [
            ("x0", (0, 0, 1)),
            ("x1", (0, 0, 1)),
        ]

    def test_pure_tail_power(self):
        s = diag(one, one, ev(2))
        pairs = m1_invariant_structure(s, [mono(0, 0, 2)])
        assert [(str(p), q) for p, q in pairs] == [("1", (0, 0, 2))]

    def test_head_polynomial(self):
        s = diag(one, one, ev(2))
        w = [P.make(3, {(2, 0, 0): 1, (0, 2, 0): -1})]
        pairs = m1_invariant_structure(s, w)
        assert [(str(p), q) for p, q in pairs] == [("x0^2 - x1^2", (0, 0, 0))]

    def test_products_span_subspace(self):
        rng = random.Random(71)
        s = diag(one, zeta(1, 2), ev(2), ev(3))
        for _ in range(25):
            d = rng.randint(1, 3)
            comps = weight_decomposition(s, d)
            picked = [c for c in comps if rng.random() < 0.5] or comps[:1]
            gens = []
            for c in picked:
                coeffs = {mi: Fraction(rng.randint(-2, 2)) for mi in c.basis}
                p = P.make(4, coeffs)
                if not p.is_zero():
                    gens.append(p)
            if not gens:
                continue
            pairs = m1_invariant_structure(s, gens)
            products = [p.mul_monomial(q) for p, q in pairs]
            assert spans_same(products, gens, 4, d)

    def test_not_invariant_rejected(self):
        s = diag(one, ev(2), ev(3))
        with pytest.raises(DomainError):
            m1_invariant_structure(s, [P.make(3, {(1, 0, 0): 1, (0, 0, 1): 1})])


def spans_same(ws, vs, n_vars, degree):
    from projaut.polynomials import poly_to_vector
    from projaut.qlinalg import rank

    monos = monomials_of_degree(n_vars, degree)
    index = {mi: i for i, mi in enumerate(monos)}
    rows_w = [poly_to_vector(p, index) for p in ws]
    rows_v = [poly_to_vector(p, index) for p in vs]
    return rank(rows_w) == rank(rows_v) == rank(rows_w + rows_v)


class TestM2Chain:
    def test_symmetric_square_chain(self):
        w = [mono(2, 0), mono(1, 1), mono(0, 2)]
        chain = m2_irreducible_chain(m2_form(), w)
        assert len(chain.chain) == 3
        assert chain.base_poly == mono(2, 0)
        assert chain.iterate == 1
        s = m2_form()
        for i, p in enumerate(chain.chain):
            image = pullback_poly(s, p, power=chain.iterate)
            if i == 0:
                assert image == p
            else:
                assert image == p.add(chain.chain[i - 1])
        assert 1 not in chain.base_poly.support_vars()

    def test_trivial_chain(self):
        chain = m2_irreducible_chain(m2_form(), [mono(1, 0)])
        assert len(chain.chain) == 1
        assert chain.base_poly == mono(1, 0)

    def test_reducible_two_blocks(self):
        with pytest.raises(DomainError, match="reducible"):
            m2_irreducible_chain(m2_form(one), [mono(1, 0, 0), mono(0, 0, 1)])

    def test_tail_monomial_recovered(self):
        s = m2_form(ev(2))
        w = [mono(1, 0, 2), mono(0, 1, 2)]
        chain = m2_irreducible_chain(s, w)
        assert chain.q == (0, 0, 2)
        assert chain.base_poly == mono(1, 0, 0)

    def test_torsion_handled_by_iterate(self):
        # head torsion of order 2: x2 scales by -1; generators odd in x2
        s = m2_form(ev(-1))
        w = [mono(1, 0, 1), mono(0, 1, 1)]
        assert invariant_subspace_test(s, w)
        chain = m2_irreducible_chain(s, w)
        assert chain.iterate == 2
        for i, p in enumerate(chain.chain):
            image = pullback_poly(s, p, power=chain.iterate)
            if i == 0:
                assert image == p
            else:
                assert image == p.add(chain.chain[i - 1])

    def test_order_three_torsion_iterate(self):
        s = m2_form(zeta(1, 3))
        w = [mono(0, 1, 1), mono(1, 0, 1)]
        assert invariant_subspace_test(s, w)
        chain = m2_irreducible_chain(s, w)
        assert chain.iterate == 3
        assert chain.base_poly == mono(1, 0, 1)
        # law for the cube: x1 -> 3 x0 + x1, x2 fixed again
        top = chain.chain[1]
        assert pullback_poly(s, top, power=3) == top.add(chain.base_poly)

    def test_mixed_torsion_classes_reported_reducible(self):
        s = m2_form(ev(-1))
        # x2-even and x2-odd generators live in different character classes
        with pytest.raises(DomainError, match="character class"):
            m2_irreducible_chain(s, [mono(0, 0, 2), mono(1, 0, 1)])

    def test_random_chains_satisfy_law(self):
        rng = random.Random(73)
        for _ in range(25):
            s, w, expected_len = random_chain_subspace(rng)
            chain = m2_irreducible_chain(s, w)
            assert len(chain.chain) == expected_len
            for i, p in enumerate(chain.chain):
                image = pullback_poly(s, p, power=chain.iterate)
                if i == 0:
                    assert image == p
                else:
                    assert image == p.add(chain.chain[i - 1])
            assert 1 not in chain.base_poly.support_vars()
            lead_mi, lead_c = chain.base_poly.leading()
            assert lead_c == 1


class TestShiftEquation:
    def test_linear_case(self):
        # P = a1 x + a0 with polynomial-ring coefficients
        a1 = P.make(2, {(1, 0): 2, (0, 1): 1})
        a0 = P.make(2, {(0, 2): 5})
        r = P.make(2, {(1, 0): 1})
        out = shift_equation_solve([a0, a1], r)
        assert out is not None
        q_prime, alpha = out
        assert q_prime == a1 and alpha == a0
        # Q = r * Q': recompute the difference directly
        diff = a1.mul(r)
        assert diff == r.mul(q_prime)

    def test_quadratic_has_no_constant_difference(self):
        n = 1
        x2 = [P.zero(n), P.zero(n), P.constant(n, 1)]  # P = x^2
        assert shift_equation_solve(x2, P.constant(n, 1)) is None

    def test_constant_polynomial(self):
        n = 2
        out = shift_equation_solve([P.constant(n, 5)], P.constant(n, 3))
        assert out is not None
        q_prime, alpha = out
        assert q_prime.is_zero() and alpha == P.constant(n, 5)

    def test_zero_shift_rejected(self):
        with pytest.raises(DomainError):
            shift_equation_solve([P.constant(1, 1)], P.zero(1))


def test_dimension_formula():
    for n in range(1, 4):
        for d in range(1, 5):
            assert len(monomials_of_degree(n + 1, d)) == comb(n + d, d)
