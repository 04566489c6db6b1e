from itertools import product

from stablewords.enumeration import (Lattice, closed_partitions, decomposition_keys, decompositions, kernel,
                                     quotients, refines, rgs)
from stablewords.graphs import (canonical_key, empty_graph, gamma_power, identity, quotient_by_labels,
                                words_graph)
from stablewords.words import parse_word


def W(text, rank=2):
    return parse_word(text, rank)


def set_partitions(n):
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return
    for head in set_partitions(n - 1):
        for b in range(max(head, default=-1) + 2):
            yield head + (b,)


def test_quotients_of_a_loop():
    g, _, _ = gamma_power(W("a", 1), (1,))
    qs = quotients(g)
    assert len(qs) == 1 and qs[0].is_isomorphism()


def test_quotients_of_the_empty_graph():
    qs = quotients(empty_graph(2))
    assert len(qs) == 1 and qs[0].domain.n == 0


def test_quotients_of_commutator_cycle_match_brute_force():
    g, _, _ = gamma_power(W("abAB"), (1,))
    qs = quotients(g)
    # brute force: fold every one of the 15 vertex partitions and dedupe the quotient maps
    brute = {canonical_key(quotient_by_labels(g, p)) for p in set_partitions(4)}
    assert len(list(set_partitions(4))) == 15
    assert {canonical_key(q) for q in qs} == brute
    assert len(qs) == len(brute)
    assert any(q.is_isomorphism() for q in qs)
    assert any(q.codomain.n == 1 and q.codomain.num_edges == 2 for q in qs)


def test_closed_partitions_are_exactly_the_folded_ones():
    for s, nu in [("abAB", (1,)), ("aabb", (1,)), ("abab", (2,))]:
        g, _, _ = gamma_power(W(s), nu)
        closed = set(closed_partitions(g))
        for p in set_partitions(g.n) if g.n <= 8 else []:
            q = quotient_by_labels(g, p)
            assert (p in closed) == (rgs(q.vmap) == p)


def test_lattice_respects_top_and_fibers():
    g, eta, cov = gamma_power(W("abAB"), (2,))
    top = kernel(eta)
    lat = Lattice(g, top=top)
    assert all(refines(p, top) for p in lat.elements)
    eff = Lattice(g, top=top, fibers=cov.vertex_fibers)
    for p in eff.elements:
        assert all(len({p[v] for v in f}) == len(f) for f in cov.vertex_fibers)
    assert set(eff.elements) <= set(lat.elements)


def test_decompositions_of_identity():
    g, _, _ = gamma_power(W("abAB"), (1,))
    recs = decompositions(identity(g), 2, "surjective")
    assert len(recs) == 1
    assert all(p.is_isomorphism() for p in recs[0].parts)


def test_decompositions_of_commutator_match_factorizations():
    g, eta, _ = gamma_power(W("abAB"), (1,))
    recs = decompositions(eta, 2, "surjective")
    assert len(recs) == len(quotients(g))
    key = canonical_key(eta)
    for r in recs:
        assert canonical_key(r.composite()) == key


def test_loop_has_one_algebraic_triple():
    g, eta, _ = gamma_power(W("a", 1), (1,))
    recs = decompositions(eta, 3, "algebraic")
    assert len(recs) == 1
    first, middle, last = recs[0].parts
    assert first.is_isomorphism() and middle.is_isomorphism()
    assert canonical_key(last) == canonical_key(eta)


def test_triples_with_identity_start_biject_with_pairs():
    g, eta, _ = gamma_power(W("aabb"), (1,))
    for mode in ("surjective", "algebraic"):
        pairs = decompositions(eta, 2, mode)
        triples = decompositions(eta, 3, mode)
        starting = [t for t in triples if t.parts[0].is_isomorphism()]
        assert len(starting) == len(pairs)
        for t in triples:
            assert canonical_key(t.composite()) == canonical_key(eta)


def _relabel(text, table):
    return "".join(table[c] for c in text)


def test_algebraic_lists_do_not_depend_on_the_basis():
    table_swap = {"a": "b", "b": "a", "A": "B", "B": "A"}
    table_inv = {"a": "A", "A": "a", "b": "b", "B": "B"}
    for s in ["abAB", "aabb", "aab"]:
        base = decompositions(words_graph([W(s)])[1], 2, "algebraic")
        shape = sorted((r.parts[0].codomain.n, r.parts[0].codomain.num_edges) for r in base)
        for table in (table_swap, table_inv):
            other = decompositions(words_graph([W(_relabel(s, table))])[1], 2, "algebraic")
            assert sorted((r.parts[0].codomain.n, r.parts[0].codomain.num_edges) for r in other) == shape


def test_decomposition_keys_are_deterministic():
    _, eta, _ = gamma_power(W("abAB"), (1,))
    assert decomposition_keys(decompositions(eta, 3)) == decomposition_keys(decompositions(eta, 3))
