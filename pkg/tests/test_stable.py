from fractions import Fraction

import pytest

from stablewords.characters import (PartitionMap, cyclic_two, p_minus, parse_partition_map, partitions,
                                    symmetric_group, trivial_group)
from stablewords.errors import DomainError, InputError
from stablewords.oracle import exact_expectation_sn, exact_expectation_wreath
from stablewords.ratfun import RatFun, rsum
from stablewords.stable import (NON_POWER, PROPER_POWER, beta, induction_coefficient, power_system, spi_search,
                                stable_coefficient_sn, stable_coefficient_wreath)
from stablewords.words import Word, parse_word


def W(text, rank=2):
    return parse_word(text, rank)


def test_stable_sn_examples():
    for s in ["abAB", "aa", "ab"]:
        assert stable_coefficient_sn(W(s), ()).ratfun == 1
    assert stable_coefficient_sn(W("ab"), (1,)).ratfun.is_zero()
    c = stable_coefficient_sn(W("abAB"), (1,))
    assert c.value(3) == Fraction(1, 2)
    assert c.variant_used == NON_POWER
    assert stable_coefficient_sn(W("abab"), (1,)).variant_used == PROPER_POWER


def test_stable_sn_rejects_identity_and_small_n():
    with pytest.raises(DomainError):
        stable_coefficient_sn(Word.identity(2), (1,))
    c = stable_coefficient_sn(W("abAB"), (2,))
    with pytest.raises(DomainError):
        c.value(3)


def test_stable_sn_matches_enumeration_on_conjugates_and_inverses():
    for s in ["baBA", "BAba", "abAB"]:
        c = stable_coefficient_sn(W(s), (1, 1))
        assert c.value(3) == exact_expectation_sn([W(s)], ("chi", (1, 1)), 3)


def test_induction_examples():
    triv = trivial_group()
    assert induction_coefficient(triv, W("abAB"), PartitionMap.of({})) == 1
    lhs = induction_coefficient(triv, W("abAB"), PartitionMap.of({"triv": (2, 1)}))
    rhs = rsum(stable_coefficient_sn(W("abAB"), nu).ratfun for nu in p_minus((2, 1)))
    assert lhs == rhs
    r = induction_coefficient(triv, W("aa"), PartitionMap.of({"triv": (1,)}))
    assert r == 2


@pytest.mark.parametrize("s", ["abAB", "aa", "aabb"])
def test_induction_consistency(s):
    triv = trivial_group()
    for d in range(1, 4):
        for mu in partitions(d):
            chi = PartitionMap.of({"triv": mu})
            lhs = induction_coefficient(triv, W(s), chi)
            rhs = rsum(stable_coefficient_sn(W(s), nu).ratfun if nu else 1 for nu in p_minus(mu))
            assert lhs == rhs
            assert induction_coefficient(triv, W(s), chi, path="surjective") == lhs


def test_wreath_examples():
    triv = trivial_group()
    for mu in [(1,), (2,), (1, 1)]:
        c = stable_coefficient_wreath(triv, W("abAB"), PartitionMap.of({"triv": mu}))
        assert c.ratfun == stable_coefficient_sn(W("abAB"), mu).ratfun
    c2 = cyclic_two()
    c = stable_coefficient_wreath(c2, W("aa"), parse_partition_map("sign:1", c2))
    assert c.value(2) == 1 == exact_expectation_wreath(c2, [W("aa")], parse_partition_map("sign:1", c2), 2)
    assert stable_coefficient_wreath(c2, W("ab"), parse_partition_map("sign:1", c2)).ratfun.is_zero()


def test_wreath_over_s3_against_enumeration():
    s3 = symmetric_group(3)
    arrm = parse_partition_map("std:1", s3)
    c = stable_coefficient_wreath(s3, W("abAB"), arrm)
    assert c.ratfun == RatFun.falling_ratio([], [1]) / 2
    assert c.value(2) == exact_expectation_wreath(s3, [W("abAB")], arrm, 2)


def test_wreath_degree_bound():
    c2 = cyclic_two()
    for s in ["abAB", "aabb"]:
        for text in ["sign:1", "sign:1,1", "sign:2"]:
            arrm = parse_partition_map(text, c2)
            c = stable_coefficient_wreath(c2, W(s), arrm)
            d = arrm.size
            best = None
            for nu in partitions(d):
                ps = power_system(W(s), nu)
                for p in ps.efficient_algebraic():
                    if ps.mobius.is_proper_partition(p):
                        chi = ps.mobius.lattice.graph(p).euler_characteristic()
                        best = chi if best is None else max(best, chi)
            assert c.ratfun.is_zero() or c.ratfun.degree() <= best


def test_beta_examples():
    assert beta(stable_coefficient_sn(W("abAB"), (1,))) == 1
    assert beta(stable_coefficient_sn(W("ab"), (1,))) == float("inf")
    assert beta(stable_coefficient_sn(W("aa"), (1,))) == 0
    for n in (3, 4, 5):
        assert exact_expectation_sn([W("aa")], ("chi", (1,)), n) == 1


def test_spi_examples():
    res = spi_search(W("aa"), 1)
    assert res.per_degree_minima[1] == 0 and res.overall_upper_bound == 0
    res = spi_search(W("abAB"), 2)
    assert res.overall_upper_bound == 1
    assert res.witnesses[0].degree == 1 and res.witnesses[0].b.codomain.n == 1
    res = spi_search(W("aa"), 1, ("mod", 2))
    assert res.overall_upper_bound == 0
    assert list(res.witnesses[0].evidence.values()) == [2]
    with pytest.raises(InputError):
        spi_search(W("aa"), 0)


def test_spi_minima_are_never_negative():
    for s in ["abAB", "aabb", "aa", "abab", "aab"]:
        res = spi_search(W(s), 2)
        assert all(v is None or v >= 0 for v in res.per_degree_minima.values())


def test_spi_records_skipped_cycle_types():
    res = spi_search(W("ab") ** 3, 3)
    assert res.per_degree_minima[3] is None
    assert {nu for _, nu in res.skipped} == set(partitions(3))
