"""Slow reference implementations used only by the tests."""

from fractions import Fraction
from itertools import permutations, product

from stablewords.enumeration import Lattice, refines


def _blocks(p):
    return max(p, default=-1) + 1


def has_free_merge_step(lat: Lattice, k) -> bool:
    """True when ``Γ -> Γ/K`` factors through a merge of two vertices that creates no fold.

    Such a merge is a free morphism that is not an isomorphism, so its
    presence means ``Γ -> Γ/K`` is not algebraic; every free surjection is a
    sequence of these merges, so the converse holds as well.
    """
    for p in lat.elements:
        if _blocks(p) != _blocks(k) + 1 or not refines(p, k):
            continue
        pairs = {(a, b) for a, b in zip(p, k)}
        split = [a for a, b in pairs if sum(1 for _, c in pairs if c == b) == 2]
        u, v = sorted(split)
        q = lat.graph(p)
        shared = any((q.out[x][u] >= 0 and q.out[x][v] >= 0) or (q.inn[x][u] >= 0 and q.inn[x][v] >= 0)
                     for x in range(q.rank))
        if not shared:
            return True
    return False


def is_algebraic_by_definition(lat: Lattice, k) -> bool:
    return not has_free_merge_step(lat, k)


def word_permutation(w, tup, n):
    out = []
    for x in range(n):
        for letter in w.letters:
            p = tup[abs(letter) - 1]
            x = p[x] if letter > 0 else p.index(x)
        out.append(x)
    return tuple(out)


def average_over_tuples(words, n, fn):
    """Exact average of ``fn(perms)`` over all tuples of permutations for the letters used."""
    rank = max(w.rank for w in words)
    perms = list(permutations(range(n)))
    total = Fraction(0)
    count = 0
    for tup in product(perms, repeat=rank):
        total += fn([word_permutation(w, tup, n) for w in words])
        count += 1
    return total / count


# -- independent replay of free-splitting certificates


def _reduce(xs):
    out = []
    for x in xs:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) > 1 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def whitehead_automorphism(words, a, A):
    """Apply the Whitehead automorphism ``(A, a)`` to cyclic words, letter by letter."""
    def image(x):
        if abs(x) == abs(a):
            return (x,)
        g = abs(x)
        if g in A and -g in A:
            im = (-a, g, a)
        elif g in A:
            im = (g, a)
        elif -g in A:
            im = (-a, g)
        else:
            im = (g,)
        return im if x > 0 else tuple(-z for z in reversed(im))

    return [_reduce([z for x in w for z in image(x)]) for w in words]


def whitehead_nx_graph(words, k):
    import networkx as nx

    g = nx.MultiGraph()
    g.add_nodes_from(x for x in range(-k, k + 1) if x)
    for w in words:
        for i in range(len(w)):
            g.add_edge(w[i], -w[(i + 1) % len(w)])
    return nx.Graph(g)


def certifies_no_splitting(words, k) -> bool:
    """A connected Whitehead graph without cut vertex rules out every relative free splitting."""
    import networkx as nx

    g = whitehead_nx_graph(words, k)
    return k >= 1 and nx.is_connected(g) and not any(True for _ in nx.articulation_points(g))


def visibly_splits(words, k) -> bool:
    """The generators fall into at least two groups with every word inside one group."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(1, k + 1))
    for w in words:
        gens = sorted({abs(x) for x in w})
        g.add_edges_from(zip(gens, gens[1:]))
    return k >= 1 and nx.number_connected_components(g) >= 2 or (k == 1 and not any(words))


def exact_lift_average(eta, n, injective=False):
    """Average number of (injective) lifts of ``eta`` over every degree-``n`` cover of its codomain."""
    d, g = eta.codomain, eta.domain
    edges = [(v, x) for v, x, _ in d.edges]
    perms = list(permutations(range(n)))
    total = 0
    count = 0
    for cover in product(perms, repeat=len(edges)):
        table = dict(zip(edges, cover))
        for sheets in product(range(n), repeat=g.n):
            if injective and len({(eta.vmap[v], sheets[v]) for v in range(g.n)}) < g.n:
                continue
            if all(table[(eta.vmap[v], x)][sheets[v]] == sheets[t] for v, x, t in g.edges):
                total += 1
        count += 1
    return Fraction(total, count)
