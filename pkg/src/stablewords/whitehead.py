"""Whitehead's algorithm for free splittings relative to a set of cyclic words.

Cyclic words live in a free group of rank ``k`` as tuples of nonzero ints.
The group splits freely relative to the set (each word conjugate into a
factor of a nontrivial free product) iff, after minimizing the total cyclic
length over Whitehead automorphisms, the Whitehead graph is disconnected.
At a minimal configuration a connected Whitehead graph has no cut vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InvariantViolation, ResourceError


def free_reduce(xs):
    out = []
    for x in xs:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(xs):
    xs = free_reduce(xs)
    i, j = 0, len(xs) - 1
    while i < j and xs[i] == -xs[j]:
        i += 1
        j -= 1
    return tuple(xs[i:j + 1])


def whitehead_graph(words, k):
    """Edge multiset ``{(min, max): count}`` on the vertices ``±1..±k``."""
    edges = {}
    for w in words:
        n = len(w)
        for i in range(n):
            u, v = w[i], -w[(i + 1) % n]
            key = (u, v) if u <= v else (v, u)
            edges[key] = edges.get(key, 0) + 1
    return edges


def _adjacency(edges, k):
    adj = {x: set() for x in range(-k, k + 1) if x}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _components(adj, removed=None):
    seen = set()
    comps = []
    for s in sorted(adj):
        if s == removed or s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u != removed and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def apply_whitehead(words, a, A):
    """Image of cyclic words under the Whitehead automorphism ``(A, a)``.

    For a letter ``x`` other than ``a^{±1}``: ``x -> x a`` if only ``x`` is in
    ``A``, ``x -> a^-1 x`` if only ``x^-1`` is, ``x -> a^-1 x a`` if both.
    """
    img = {}
    for x in {abs(y) for w in words for y in w}:
        if x == abs(a):
            img[x] = (x,)
            continue
        p, m = x in A, -x in A
        if p and m:
            img[x] = (-a, x, a)
        elif p:
            img[x] = (x, a)
        elif m:
            img[x] = (-a, x)
        else:
            img[x] = (x,)
    out = []
    for w in words:
        seq = []
        for y in w:
            seq.extend(img[y] if y > 0 else tuple(-z for z in reversed(img[-y])))
        out.append(cyclic_reduce(seq))
    return out


def length_change(edges, a, A):
    """Change of total cyclic length under ``(A, a)``, read off the Whitehead graph."""
    cap = 0
    deg = 0
    for (u, v), c in edges.items():
        if (u in A) != (v in A):
            cap += c
        if u == a:
            deg += c
        if v == a:
            deg += c
    return cap - deg


@dataclass(frozen=True)
class SplitResult:
    splits: bool
    words: tuple  # minimized configuration
    rank: int
    steps: tuple  # sequence of (a, A) applied
    blocks: tuple  # for splits: generator index sets of the visible factors


def _cut_vertices(adj):
    return [a for a in sorted(adj) if adj[a] and len(_components(adj, removed=a)) > 1 + sum(
        1 for x in adj if x != a and not adj[x])]


def _find_reduction(words, k, edges, adj, cuts):
    # sets cut off by a cut vertex first, then every Whitehead automorphism
    for a in cuts:
        for c in _components(adj, removed=a):
            if -a in c or not any(u in adj[a] for u in c):
                continue
            A = frozenset(c | {a})
            if length_change(edges, a, A) < 0:
                return a, A
    letters = [x for x in range(-k, k + 1) if x]
    for a in letters:
        rest = [x for x in letters if x != a and x != -a]
        for bits in product((0, 1), repeat=len(rest)):
            A = frozenset([a] + [x for x, b in zip(rest, bits) if b])
            if length_change(edges, a, A) < 0:
                return a, A
    return None


def relative_split(words, k: int, step_limit: int = 10000) -> SplitResult:
    """Decide whether ``F_k`` splits freely relative to the cyclic words.

    A connected Whitehead graph without cut vertex certifies that no
    splitting exists; a cut vertex guarantees a length-reducing move.
    """
    words = [cyclic_reduce(w) for w in words]
    words = [w for w in words if w]
    steps = []
    for _ in range(step_limit):
        edges = whitehead_graph(words, k)
        adj = _adjacency(edges, k)
        comps = _components(adj)
        if len(comps) > 1:
            red = None
            for c in comps:
                for a in sorted(c):
                    if -a not in c and adj[a]:
                        red = (a, frozenset(c))
                        break
                if red:
                    break
            if red is None:
                blocks = []
                seen = set()
                for c in comps:
                    gens = frozenset(abs(x) for x in c)
                    if gens & seen:
                        continue
                    seen |= gens
                    blocks.append(tuple(sorted(gens)))
                return SplitResult(True, tuple(words), k, tuple(steps), tuple(blocks))
        else:
            cuts = _cut_vertices(adj)
            if not cuts:
                return SplitResult(False, tuple(words), k, tuple(steps), ())
            red = _find_reduction(words, k, edges, adj, cuts)
            if red is None:
                raise InvariantViolation("Whitehead graph has a cut vertex but no reducing move")
        a, A = red
        new = apply_whitehead(words, a, A)
        if sum(map(len, new)) >= sum(map(len, words)):
            raise InvariantViolation("Whitehead reduction did not shorten the words")
        words = new
        steps.append((a, tuple(sorted(A))))
    raise ResourceError("Whitehead minimization exceeded its step limit", bound=step_limit)
