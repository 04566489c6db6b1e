from fractions import Fraction

import pytest

from stablewords.characters import PartitionMap, cyclic_two, parse_partition_map, trivial_group
from stablewords.config import CONFIG
from stablewords.errors import InputError, ResourceError
from stablewords.graphs import gamma_power, identity, words_graph
from stablewords.mobius import lb, phi
from stablewords.oracle import (exact_expectation_sn, exact_expectation_wreath, monte_carlo_sn, parse_function,
                                random_cover_lift_counts)
from stablewords.words import parse_word


def W(text, rank=2):
    return parse_word(text, rank)


def test_exact_sn_examples():
    assert exact_expectation_sn([W("abAB")], "fix", 3) == Fraction(3, 2)
    for n in (1, 2, 3, 4):
        assert exact_expectation_sn([W("a")], "fix", n) == 1
    assert exact_expectation_sn([W("aa")], "fix", 3) == 2


def test_exact_sn_invariances():
    for s, t in [("abAB", "baBA"), ("aab", "BAA"), ("aab", "baa"), ("aab", "Baabb")]:
        for f in ("fix", ("chi", (1, 1)), ("zeta", (2,))):
            assert exact_expectation_sn([W(s)], f, 3) == exact_expectation_sn([W(t)], f, 3)


def test_exact_sn_guard():
    with pytest.raises(ResourceError):
        exact_expectation_sn([W("abc", 3)], "fix", 6)
    with pytest.raises(InputError):
        parse_function("fox")


def test_monte_carlo_examples():
    est = monte_carlo_sn([W("abAB")], "fix", 10, 100_000, CONFIG.seed)
    _, eta, _ = words_graph([W("abAB")])
    assert est.within(phi(eta)(10))
    est = monte_carlo_sn([W("ab")], "fix", 50, 10_000, 5)
    assert est.within(1)
    a = monte_carlo_sn([W("aabb")], "fix-1", 8, 2000, 9)
    b = monte_carlo_sn([W("aabb")], "fix-1", 8, 2000, 9)
    assert a == b
    with pytest.raises(InputError):
        monte_carlo_sn([W("a")], "fix", 3, 0, 1)


def test_exact_wreath_examples():
    c2 = cyclic_two()
    sign = parse_partition_map("sign:1", c2)
    assert exact_expectation_wreath(c2, [W("aa")], sign, 2) == 1
    assert exact_expectation_wreath(c2, [W("ab")], sign, 2) == 0
    triv = trivial_group()
    for mu in [(1,), (1, 1)]:
        assert exact_expectation_wreath(triv, [W("abAB")], PartitionMap.of({"triv": mu}), 3) == \
            exact_expectation_sn([W("abAB")], ("chi", mu), 3)


def test_lift_count_examples():
    _, eta_ab, _ = words_graph([W("ab")])
    est = random_cover_lift_counts(eta_ab, 3, 100_000, 3, injective_only=True)
    assert est.within(Fraction(2, 3))
    g, _, _ = gamma_power(W("abAB"), (1,))
    est = random_cover_lift_counts(identity(g), 6, 500, 4)
    assert est.within(1)
    _, eta, _ = words_graph([W("abAB")])
    est = random_cover_lift_counts(eta, 4, 100_000, 5)
    assert est.within(exact_expectation_sn([W("abAB")], "fix", 4))
    assert est.within(phi(eta)(4))


def test_injective_lifts_of_disconnected_domains():
    _, eta, _ = gamma_power(W("abAB"), (1, 1))
    est = random_cover_lift_counts(eta, 4, 20_000, 7, injective_only=True)
    assert est.within(lb(eta)(4))
