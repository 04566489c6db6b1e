import random

from stablewords.errors import InputError
from stablewords.graphs import (CoreGraph, Morphism, bouquet, canonical_key, disjoint_union, fold, gamma_power,
                                identity, is_efficient, quotient_by_labels, stallings_graph, words_graph)
from stablewords.words import parse_word

import pytest


def W(text, rank=2):
    return parse_word(text, rank)


def test_bouquet():
    assert bouquet(2).n == 1 and bouquet(2).num_edges == 2 and bouquet(2).euler_characteristic() == -1
    assert bouquet(1).euler_characteristic() == 0
    assert bouquet(3).euler_characteristic() == -2
    with pytest.raises(InputError):
        bouquet(0)


def test_gamma_power_examples():
    g, eta, cov = gamma_power(W("abAB"), (1,))
    assert g.n == 4 and g.num_edges == 4 and len(g.components) == 1
    g, eta, cov = gamma_power(W("abAB"), (2, 1))
    assert sorted(len(c) for c in g.components) == [4, 8]
    assert g.euler_characteristic() == 0 and cov.degree == 3
    g, eta, cov = gamma_power(W("a", 1), (3,))
    assert g.n == 3 and all(x == 0 for _, x, _ in g.edges)
    assert cov.rho.is_surjective()
    assert [len(f) for f in cov.vertex_fibers] == [3]


def test_gamma_power_identity_is_empty():
    g, eta, cov = gamma_power(W("abBA"), (2,))
    assert g.n == 0 and cov is None


def test_fold_examples():
    # two paths spelling ab from a base vertex fold into one
    edges = [(0, 0, 1), (1, 1, 2), (0, 0, 3), (3, 1, 4)]
    g, vmap = fold(5, 2, edges)
    assert g.n == 3 and g.num_edges == 2
    assert vmap[1] == vmap[3] and vmap[2] == vmap[4]
    # already folded graphs are fixed
    g0, _, _ = gamma_power(W("abAB"), (1,))
    g1, vmap = fold(g0.n, 2, g0.edges)
    assert canonical_key(g1) == canonical_key(g0) and len(set(vmap)) == g0.n
    # two a-loops at one vertex become one
    g, _ = fold(1, 1, [(0, 0, 0), (0, 0, 0)])
    assert g.n == 1 and g.num_edges == 1


def test_fold_output_is_immersion():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 6)
        edges = [(rng.randrange(n), rng.randrange(2), rng.randrange(n)) for _ in range(rng.randint(1, 8))]
        g, vmap = fold(n, 2, edges)
        for x in range(2):
            targets = [t for t in g.out[x] if t >= 0]
            assert len(targets) == len(set(targets))
        g2, vmap2 = fold(g.n, 2, g.edges)
        assert canonical_key(g2) == canonical_key(g)


def test_stallings_graph_examples():
    g, _ = stallings_graph([W("a"), W("b")])
    assert canonical_key(g) == canonical_key(bouquet(2))
    g, _ = stallings_graph([W("abAB")])
    assert g.n == 4 and g.num_edges == 4
    g, _ = stallings_graph([W("aa"), W("ab")])
    # folding by hand: v0 -a-> v1 -a-> v0 and v1 -b-> v0, a rank-2 subgroup of infinite index
    hand = CoreGraph(2, 2, ((1, 0), (-1, 0)))
    assert canonical_key(g) == canonical_key(hand)
    assert (g.n, g.num_edges, g.euler_characteristic()) == (2, 3, -1)


def test_euler_characteristic_of_covers():
    for s in ["abAB", "aab", "abab"]:
        for nu in [(1,), (2,), (2, 1), (3,)]:
            g, _, _ = gamma_power(W(s), nu)
            assert g.euler_characteristic() == 0


def test_is_efficient_examples():
    w = W("abAB")
    g, _, cov = gamma_power(w, (1,))
    assert is_efficient(identity(g), cov)
    g, _, cov = gamma_power(w, (1, 1))
    both = quotient_by_labels(g, [v % 4 for v in range(g.n)])
    assert not is_efficient(both, cov)
    g, _, cov = gamma_power(w, (2,))
    assert not is_efficient(cov.rho, cov)
    assert is_efficient(identity(g), cov)


def test_canonical_key_examples():
    c4, _, _ = gamma_power(W("abAB"), (1,))
    c8, _, _ = gamma_power(W("abAB"), (2,))
    perm = [2, 0, 3, 1]
    assert canonical_key(c4.relabel(perm)) == canonical_key(c4)
    assert canonical_key(c4) != canonical_key(c8)


def test_canonical_key_distinguishes_quotients():
    g, _, _ = gamma_power(W("abAB"), (1,))
    maps = {}
    for labels in [(0, 0, 1, 2), (0, 1, 0, 2), (0, 1, 2, 0), (0, 1, 1, 2)]:
        q = quotient_by_labels(g, labels)
        maps[labels] = q
    keys = {canonical_key(q.codomain) for q in maps.values()}
    graphs = [q.codomain for q in maps.values()]
    # keys agree with an exhaustive isomorphism test between the quotient graphs
    from itertools import permutations

    def isomorphic(a, b):
        if a.n != b.n:
            return False
        return any(a.relabel(p).out == b.out for p in permutations(range(a.n)))

    for a in graphs:
        for b in graphs:
            assert (canonical_key(a) == canonical_key(b)) == isomorphic(a, b)
    assert len(keys) >= 2


def test_canonical_key_fuzz():
    rng = random.Random(11)
    for s, nu in [("abAB", (2,)), ("aabb", (1, 1)), ("abab", (2, 1))]:
        g, eta, cov = gamma_power(W(s), nu)
        for _ in range(10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            assert canonical_key(h) == canonical_key(g)
            inv = [0] * g.n
            for i, p in enumerate(perm):
                inv[p] = i
            m = Morphism(h, cov.rho.codomain, tuple(cov.rho.vmap[inv[v]] for v in range(g.n)))
            assert canonical_key(m) == canonical_key(cov.rho)


def test_composition_and_cover_degrees():
    w = W("ab")
    g2, _, cov2 = gamma_power(w ** 2, (1,))
    g, _, cov = gamma_power(w, (2,))
    assert canonical_key(g) == canonical_key(g2)
    comp = cov.rho.compose(gamma_power(w, (1,))[1])
    assert comp.codomain.n == 1 and comp.is_surjective()
    assert max(len(f) for f in cov.rho.vertex_fibers()) == 2


def test_words_graph_and_disjoint_union():
    g, eta, ranges = words_graph([W("aa"), W("abAB")])
    assert [len(r) for r in ranges] == [2, 4] and len(g.components) == 2
    _, e1, _ = gamma_power(W("ab"), (1,))
    u = disjoint_union([identity(g), e1])
    assert u.domain.n == g.n + 2 and len(u.codomain.components) == 3
