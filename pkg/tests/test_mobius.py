from fractions import Fraction

import pytest

from oracles import average_over_tuples, exact_lift_average
from stablewords.errors import InputError
from stablewords.graphs import bouquet, disjoint_union, gamma_power, identity, words_graph
from stablewords.mobius import (MobiusKind, MobiusSystem, lb, lb_at, mobius, phi, phi_at, product_fix_minus_one,
                                product_fix_minus_one_inclusion_exclusion)
from stablewords.ratfun import RatFun, rsum
from stablewords.words import parse_word


def W(text, rank=2):
    return parse_word(text, rank)


def N():
    return RatFun((0, 1))


def test_lb_examples():
    _, eta_ab, _ = words_graph([W("ab")])
    assert lb(eta_ab) == RatFun.falling_ratio([2], [1, 1])
    assert lb(eta_ab).degree() == 0 and lb(eta_ab)(4) == Fraction(3, 4)
    for n in (2, 3):
        assert lb(eta_ab)(n) == exact_lift_average(eta_ab, n, injective=True) == Fraction(n - 1, n)
    g, _, _ = gamma_power(W("abAB"), (2,))
    assert lb(identity(g)) == 1


def test_lb_two_loops_into_a_circle():
    g, eta, _ = words_graph([W("a", 1), W("a", 1)])
    # both fibers have two elements, so the ratio is (N)_2 / (N)_2
    assert lb(eta) == 1
    for n in (2, 3):
        assert exact_lift_average(eta, n, injective=True) == 1


@pytest.mark.parametrize("s", ["ab", "aa", "abAB", "aabb"])
def test_phi_and_lb_against_exhaustive_covers(s):
    _, eta, _ = words_graph([W(s)])
    for n in (2, 3):
        assert phi(eta)(n) == phi_at(eta, n) == exact_lift_average(eta, n)
        assert lb_at(eta, n) == exact_lift_average(eta, n, injective=True)


def test_phi_is_expected_fixed_points():
    for s in ["a", "aa", "abAB", "abab", "aabb"]:
        _, eta, _ = words_graph([W(s)])
        for n in (2, 3, 4):
            exact = average_over_tuples([W(s)], n, lambda ps: sum(1 for i, j in enumerate(ps[0]) if i == j))
            assert phi_at(eta, n) == exact


def test_mobius_examples():
    g, _, _ = gamma_power(W("abAB"), (1,))
    assert mobius(identity(g), MobiusKind.C_ALG) == RatFun.power(g.euler_characteristic())
    omega_graph = bouquet(2)
    assert mobius(identity(omega_graph), MobiusKind.C_ALG) == RatFun.power(-1)
    _, _, cov = gamma_power(W("a", 1), (2,))
    assert mobius(cov.rho, MobiusKind.C_ALG).is_zero()
    _, eta_ab, _ = words_graph([W("ab")])
    assert mobius(eta_ab, MobiusKind.PHI) == 1
    assert lb(eta_ab) + RatFun.falling_ratio([1], [1, 1]) == 1


def test_mobius_preconditions():
    _, eta_ab, _ = words_graph([W("ab")])
    with pytest.raises(InputError):
        mobius(eta_ab, MobiusKind.C_ALG)
    _, e, _ = words_graph([W("a")])
    with pytest.raises(InputError):
        mobius(e, MobiusKind.R_ALG)


def test_identities_on_a_small_system():
    _, eta, _ = gamma_power(W("aabb"), (1,))
    s = MobiusSystem(eta)
    total = s.phi_pair(s.bottom, s.top)
    L, A = s.lattice.elements, s.algebraic
    assert rsum(s.L_surj(p) for p in L) == total
    assert rsum(s.R_surj(q) for q in L) == total
    assert rsum(s.C_surj(s.bottom, q) for q in L) == s.L_surj(s.bottom)
    assert rsum(s.C_surj(p, s.top) for p in L) == s.R_surj(s.top)
    assert rsum(s.L_alg(p) for p in A) == total
    assert s.L_alg() == s.L_alg_via_free()


def test_c_alg_degree_bound():
    _, eta, _ = gamma_power(W("abAB"), (1, 1))
    s = MobiusSystem(eta)
    for p in s.algebraic:
        for q in s.algebraic:
            if p != q and s.leq_alg(p, q):
                c = s.C_alg(p, q)
                if not c.is_zero():
                    chi_p = s.lattice.graph(p).euler_characteristic()
                    chi_q = s.lattice.graph(q).euler_characteristic()
                    assert c.degree() <= min(chi_p, chi_q) - 1


def test_multiplicativity():
    _, e1, _ = words_graph([W("abAB")])
    _, e2, _ = words_graph([W("ab")])
    u = disjoint_union([e1.image()[0], e2.image()[0]])
    for kind in (MobiusKind.PHI, MobiusKind.L_SURJ, MobiusKind.L_ALG):
        assert mobius(u, kind) == mobius(e1.image()[0], kind) * mobius(e2.image()[0], kind)


def test_product_fix_minus_one_examples():
    assert product_fix_minus_one([W("a")]).is_zero()
    r = product_fix_minus_one([W("aa")])
    assert r.degree() == 0 and r.leading_coefficient() == 1
    r = product_fix_minus_one([W("abAB"), W("abAB")])
    assert r.degree() == 0 and r.leading_coefficient() == 1
    for words in ([W("aa")], [W("abAB"), W("abAB")], [W("aa"), W("bb")]):
        for n in (3, 4):
            def fn(ps):
                out = 1
                for p in ps:
                    out *= sum(1 for i, j in enumerate(p) if i == j) - 1
                return out
            exact = average_over_tuples(words, n, fn)
            assert product_fix_minus_one(words, at=n) == exact
            assert product_fix_minus_one_inclusion_exclusion(words, at=n) == exact
        assert product_fix_minus_one(words) == product_fix_minus_one_inclusion_exclusion(words)


def test_exact_evaluation_below_the_threshold():
    # the reduced function has a pole at N = 3 while the quantity itself is finite
    words = [W("abAB"), W("abAB")]
    r = product_fix_minus_one(words)
    assert r.threshold > 3
    with pytest.raises(ZeroDivisionError):
        r(3)
    assert product_fix_minus_one(words, at=3) == product_fix_minus_one_inclusion_exclusion(words, at=3)
