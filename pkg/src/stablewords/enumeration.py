"""Surjective quotients of a folded graph and decompositions of morphisms.

A surjective label-preserving morphism out of a folded graph ``g`` is
determined, up to post-composition with an isomorphism, by its vertex
kernel.  The kernels that occur are exactly the *closed* partitions: those
left unchanged by folding.  All enumeration happens on this lattice, with
partitions stored as restricted-growth label tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import CONFIG
from .errors import InputError, ResourceError
from .graphs import CoreGraph, Morphism, canonical_key, identity, quotient_by_labels


def rgs(labels):
    """Renumber block labels by first appearance."""
    seen = {}
    return tuple(seen.setdefault(b, len(seen)) for b in labels)


def refines(p, q) -> bool:
    """True if every block of ``p`` lies inside a block of ``q``."""
    m = {}
    for a, b in zip(p, q):
        if m.setdefault(a, b) != b:
            return False
    return True


def _guard(g: CoreGraph, limit=None):
    limit = CONFIG.vertex_limit if limit is None else limit
    if g.n > limit:
        raise ResourceError(f"graph has {g.n} vertices, guard is {limit}", bound=limit)


def _bfs_order(g: CoreGraph):
    order = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            order.append(v)
            for x in range(g.rank):
                for u in (g.out[x][v], g.inn[x][v]):
                    if u >= 0 and not seen[u]:
                        seen[u] = True
                        queue.append(u)
    return order


def closed_partitions(g: CoreGraph, top=None, fibers=None):
    """Every closed partition of ``g`` (refining ``top`` if given), each exactly once.

    ``fibers`` is an optional list of vertex groups that must stay in distinct
    blocks (the efficiency constraint).  Vertices are placed one at a time in
    breadth-first order; a placement is kept only if the partial partition is
    closed among already placed vertices.
    """
    n = g.n
    order = _bfs_order(g)
    nbr = [[row[v] for row in g.out] + [row[v] for row in g.inn] for v in range(n)]
    back = [[] for _ in range(n)]  # (u, k): nbr[u][k] == v
    for u in range(n):
        for k, v in enumerate(nbr[u]):
            if v >= 0:
                back[v].append((u, k))
    fiber_of = [None] * n
    if fibers:
        for f in fibers:
            for v in f:
                fiber_of[v] = set(f) - {v}
    assign = [-1] * n
    blocks = []
    results = []

    def ok(v, b):
        members = blocks[b] if b < len(blocks) else []
        if members and top is not None and top[members[0]] != top[v]:
            return False
        if fiber_of[v] is not None and any(u in fiber_of[v] for u in members):
            return False
        nv = nbr[v]
        for u in members:
            nu = nbr[u]
            for k in range(len(nv)):
                a, c = nv[k], nu[k]
                if a >= 0 and c >= 0:
                    ba = b if a == v else assign[a]
                    bc = b if c == v else assign[c]
                    if ba >= 0 and bc >= 0 and ba != bc:
                        return False
        for w, k in back[v]:
            bw = b if w == v else assign[w]
            if bw < 0:
                continue
            for u2 in (blocks[bw] if bw < len(blocks) else []) + ([v] if bw == b and b >= len(blocks) else []):
                t = nbr[u2][k]
                if t >= 0:
                    bt = b if t == v else assign[t]
                    if bt >= 0 and bt != b:
                        return False
        return True

    def rec(i):
        if i == n:
            results.append(rgs(assign))
            return
        v = order[i]
        for b in range(len(blocks) + 1):
            if ok(v, b):
                assign[v] = b
                if b == len(blocks):
                    blocks.append([v])
                else:
                    blocks[b].append(v)
                rec(i + 1)
                if len(blocks[b]) == 1:
                    blocks.pop()
                else:
                    blocks[b].pop()
                assign[v] = -1

    rec(0)
    return results


class Lattice:
    """Closed partitions of ``g`` below ``top``, optionally kept within ``fibers``."""

    def __init__(self, g: CoreGraph, top=None, fibers=None, limit=None):
        _guard(g, limit)
        self.g = g
        self.top = top
        self.elements = sorted(closed_partitions(g, top=top, fibers=fibers),
                               key=lambda p: (-max(p, default=-1), p))
        self.index = {p: i for i, p in enumerate(self.elements)}
        self._graphs = {}

    @property
    def graphs(self):
        return _GraphView(self)

    def graph(self, p):
        if p not in self._graphs:
            self._graphs[p] = quotient_by_labels(self.g, p).codomain
        return self._graphs[p]

    def __len__(self):
        return len(self.elements)

    def quotient_map(self, p) -> Morphism:
        return Morphism(self.g, self.graph(p), p)

    def between(self, p, q) -> Morphism:
        """Induced morphism ``g/p -> g/q`` for ``p`` refining ``q``."""
        m = {}
        for a, b in zip(p, q):
            m[a] = b
        return Morphism(self.graph(p), self.graph(q), tuple(m[i] for i in range(self.graph(p).n)))

    def below(self, q):
        return [p for p in self.elements if refines(p, q)]

    def interval(self, p, q):
        return [r for r in self.elements if refines(p, r) and refines(r, q)]


class _GraphView:
    def __init__(self, lat):
        self.lat = lat

    def __getitem__(self, p):
        return self.lat.graph(p)


def quotients(g: CoreGraph, limit=None):
    """All surjective immersions out of ``g`` up to post-composition by isomorphism."""
    lat = Lattice(g, limit=limit)
    return [lat.quotient_map(p) for p in sorted(lat.elements)]


def kernel(eta: Morphism):
    return rgs(eta.vmap)


@dataclass(frozen=True, eq=False)
class DecompRecord:
    parts: tuple
    flags: tuple  # per part: dict with surjective / algebraic flags

    def composite(self) -> Morphism:
        m = self.parts[0]
        for p in self.parts[1:]:
            m = m.compose(p)
        return m


def decompositions(eta: Morphism, arity: int = 2, mode: str = "surjective", keep=None, limit=None):
    """Decompositions of ``eta`` into ``arity`` parts whose first ``arity-1`` parts are
    surjective (``mode="surjective"``) or algebraic (``mode="algebraic"``)."""
    from .algebraic import AlgebraicContext

    if arity not in (2, 3) or mode not in ("surjective", "algebraic"):
        raise InputError("arity must be 2 or 3 and mode surjective or algebraic")
    g = eta.domain
    top = kernel(eta)
    lat = Lattice(g, top=top, limit=limit)
    if mode == "algebraic":
        ctx = AlgebraicContext(g, lattice=lat)
        allowed = [p for p in lat.elements if ctx.is_algebraic_partition(p)]
    else:
        allowed = list(lat.elements)
    allowed.sort()

    def last(p):
        return Morphism(lat.graphs[p], eta.codomain,
                        tuple(_lift(p, eta.vmap)[i] for i in range(lat.graphs[p].n)))

    records = []
    for p in allowed:
        if arity == 2:
            records.append(DecompRecord((lat.quotient_map(p), last(p)), (mode, "any")))
        else:
            for q in allowed:
                if refines(p, q):
                    records.append(DecompRecord((lat.quotient_map(p), lat.between(p, q), last(q)),
                                                (mode, mode, "any")))
    return records


def _lift(p, vmap):
    m = {}
    for a, b in zip(p, vmap):
        m[a] = b
    return m


def decomposition_keys(records):
    return sorted(tuple(canonical_key(x) for x in r.parts) for r in records)


def identity_record(g):
    i = identity(g)
    return DecompRecord((i, i), ("surjective", "any"))
