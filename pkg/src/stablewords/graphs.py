"""Folded graphs labeled over the bouquet, Stallings folding and canonical forms.

Every graph here is folded, so for each letter ``x`` the positively oriented
``x``-edges form a partial injection on the vertices.  A graph is stored as
``out[x][v]`` (target of the ``x``-edge leaving ``v``, or ``-1``), letters
0-based internally.  Geometric edges are identified with ``(v, x)`` pairs.
Label-preserving morphisms between folded graphs are determined by their
vertex maps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError, InputError
from .words import Word, cyclic_reduce


@dataclass(frozen=True, eq=False)
class CoreGraph:
    n: int
    rank: int
    out: tuple  # out[x][v] -> target or -1

    @cached_property
    def inn(self):
        res = []
        for x in range(self.rank):
            row = [-1] * self.n
            for v, t in enumerate(self.out[x]):
                if t >= 0:
                    row[t] = v
            res.append(tuple(row))
        return tuple(res)

    @cached_property
    def edges(self):
        """Geometric edges as ``(source, letter, target)``, sorted by letter then source."""
        return tuple((v, x, t) for x in range(self.rank) for v, t in enumerate(self.out[x]) if t >= 0)

    @property
    def num_edges(self):
        return len(self.edges)

    def euler_characteristic(self) -> int:
        return self.n - self.num_edges

    def degree(self, v: int) -> int:
        return sum((self.out[x][v] >= 0) + (self.inn[x][v] >= 0) for x in range(self.rank))

    def is_core(self) -> bool:
        return all(self.degree(v) >= 2 for v in range(self.n))

    @cached_property
    def components(self):
        """Vertex lists of connected components, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], [s]
            while queue:
                v = queue.pop()
                comp.append(v)
                for x in range(self.rank):
                    for u in (self.out[x][v], self.inn[x][v]):
                        if u >= 0 and not seen[u]:
                            seen[u] = True
                            queue.append(u)
            comps.append(sorted(comp))
        return tuple(tuple(c) for c in comps)

    @cached_property
    def component_of(self):
        res = [0] * self.n
        for i, c in enumerate(self.components):
            for v in c:
                res[v] = i
        return tuple(res)

    def is_cycle_component(self, comp) -> bool:
        edges = sum(1 for v in comp for x in range(self.rank) if self.out[x][v] >= 0)
        return edges == len(comp)

    def has_cycle_component(self) -> bool:
        return any(self.is_cycle_component(c) for c in self.components)

    def induced(self, verts):
        """Subgraph on ``verts`` (a union of components) and the new-to-old vertex list."""
        verts = list(verts)
        pos = {v: i for i, v in enumerate(verts)}
        out = tuple(tuple(pos[self.out[x][v]] if self.out[x][v] >= 0 else -1 for v in verts)
                    for x in range(self.rank))
        return CoreGraph(len(verts), self.rank, out), verts

    def relabel(self, perm):
        """Isomorphic copy in which old vertex ``v`` becomes ``perm[v]``."""
        out = []
        for x in range(self.rank):
            row = [-1] * self.n
            for v, t in enumerate(self.out[x]):
                if t >= 0:
                    row[perm[v]] = perm[t]
            out.append(tuple(row))
        return CoreGraph(self.n, self.rank, tuple(out))

    def dump(self) -> str:
        lines = []
        for comp in self.components:
            lines.append("component " + ",".join(map(str, comp)))
            for v in comp:
                for x in range(self.rank):
                    t = self.out[x][v]
                    if t >= 0:
                        lines.append(f"  {v} -{chr(ord('a') + x)}-> {t}")
        return "\n".join(lines)

    def __repr__(self):
        return f"CoreGraph(n={self.n}, edges={self.num_edges}, chi={self.euler_characteristic()})"


def empty_graph(rank: int) -> CoreGraph:
    return CoreGraph(0, rank, tuple(() for _ in range(rank)))


def bouquet(rank: int) -> CoreGraph:
    if rank < 1:
        raise InputError(f"bouquet rank must be >= 1, got {rank}")
    return CoreGraph(1, rank, tuple((0,) for _ in range(rank)))


@dataclass(frozen=True, eq=False)
class Morphism:
    domain: CoreGraph
    codomain: CoreGraph
    vmap: tuple

    def __post_init__(self):
        d, c = self.domain, self.codomain
        if d.rank != c.rank or len(self.vmap) != d.n:
            raise InputError("morphism shape mismatch")
        for v, x, t in d.edges:
            if c.out[x][self.vmap[v]] != self.vmap[t]:
                raise InputError(f"vertex map does not carry edge {v}-{x}->{t}")

    def edge_image(self, v, x):
        return (self.vmap[v], x)

    def compose(self, after: "Morphism") -> "Morphism":
        """``after ∘ self``."""
        return Morphism(self.domain, after.codomain, tuple(after.vmap[i] for i in self.vmap))

    def is_surjective(self) -> bool:
        c = self.codomain
        if set(self.vmap) != set(range(c.n)):
            return False
        hit = {(self.vmap[v], x) for v, x, _ in self.domain.edges}
        return len(hit) == c.num_edges

    def is_injective(self) -> bool:
        return len(set(self.vmap)) == len(self.vmap)

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def vertex_fibers(self):
        fib = [[] for _ in range(self.codomain.n)]
        for v, t in enumerate(self.vmap):
            fib[t].append(v)
        return fib

    def edge_fiber_sizes(self):
        cnt = {}
        for v, x, _ in self.domain.edges:
            key = (self.vmap[v], x)
            cnt[key] = cnt.get(key, 0) + 1
        return cnt

    def restrict_to_component(self, ci: int) -> "Morphism":
        """Restriction over the ``ci``-th codomain component."""
        comp = self.codomain.components[ci]
        cset = set(comp)
        dverts = [v for v in range(self.domain.n) if self.vmap[v] in cset]
        dsub, dold = self.domain.induced(dverts)
        csub, cold = self.codomain.induced(comp)
        cpos = {v: i for i, v in enumerate(cold)}
        return Morphism(dsub, csub, tuple(cpos[self.vmap[v]] for v in dold))

    def image(self):
        """Surjective corestriction and the inclusion of the image."""
        verts = sorted(set(self.vmap))
        pos = {v: i for i, v in enumerate(verts)}
        c = self.codomain
        out = [[-1] * len(verts) for _ in range(c.rank)]
        for v, x, t in self.domain.edges:
            out[x][pos[self.vmap[v]]] = pos[self.vmap[t]]
        img = CoreGraph(len(verts), c.rank, tuple(tuple(r) for r in out))
        return Morphism(self.domain, img, tuple(pos[i] for i in self.vmap)), Morphism(img, c, tuple(verts))


def identity(g: CoreGraph) -> Morphism:
    return Morphism(g, g, tuple(range(g.n)))


def to_bouquet(g: CoreGraph) -> Morphism:
    return Morphism(g, bouquet(g.rank), (0,) * g.n)


# ---------------------------------------------------------------- folding

def fold(n: int, rank: int, edges, merges=()):
    """Fold a labeled graph given by ``(u, x, v)`` edges, after identifying ``merges``.

    Returns ``(graph, vmap)``; new vertices are numbered by first appearance
    in ``range(n)``.
    """
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    out = [dict() for _ in range(n)]
    inn = [dict() for _ in range(n)]
    pending = list(merges)
    for u, x, v in edges:
        if x in out[u]:
            pending.append((out[u][x], v))
        else:
            out[u][x] = v
        if x in inn[v]:
            pending.append((inn[v][x], u))
        else:
            inn[v][x] = u
    size = [1] * n
    while pending:
        a, b = pending.pop()
        a, b = find(a), find(b)
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        for x, t in out[b].items():
            if x in out[a]:
                pending.append((out[a][x], t))
            else:
                out[a][x] = t
        for x, s in inn[b].items():
            if x in inn[a]:
                pending.append((inn[a][x], s))
            else:
                inn[a][x] = s
        out[b] = inn[b] = None
    newid = {}
    vmap = []
    for v in range(n):
        r = find(v)
        if r not in newid:
            newid[r] = len(newid)
        vmap.append(newid[r])
    m = len(newid)
    rows = [[-1] * m for _ in range(rank)]
    for r, i in newid.items():
        for x, t in out[r].items():
            rows[x][i] = newid[find(t)]
    return CoreGraph(m, rank, tuple(tuple(r) for r in rows)), tuple(vmap)


def quotient(g: CoreGraph, merges):
    """Fold ``g`` after identifying vertex pairs; returns the quotient morphism."""
    q, vmap = fold(g.n, g.rank, g.edges, merges)
    return Morphism(g, q, vmap)


def quotient_by_labels(g: CoreGraph, labels):
    """Quotient by the partition whose block of ``v`` is ``labels[v]``."""
    first = {}
    merges = []
    for v, b in enumerate(labels):
        if b in first:
            merges.append((first[b], v))
        else:
            first[b] = v
    return quotient(g, merges)


def prune_to_core(g: CoreGraph, keep=()):
    """Remove degree <= 1 vertices repeatedly; returns ``(core, old_vertex_list)``."""
    alive = [True] * g.n
    deg = [g.degree(v) for v in range(g.n)]
    stack = [v for v in range(g.n) if deg[v] <= 1 and v not in keep]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for x in range(g.rank):
            for u in (g.out[x][v], g.inn[x][v]):
                if u >= 0 and alive[u] and u != v:
                    deg[u] -= 1
                    if deg[u] <= 1 and u not in keep:
                        stack.append(u)
    return g.induced([v for v in range(g.n) if alive[v]])


def path_edges(word_letters, start, fresh):
    """Raw edges of a closed path spelling ``word_letters`` from ``start``; ``fresh`` yields new ids."""
    edges = []
    cur = start
    for i, a in enumerate(word_letters):
        nxt = start if i == len(word_letters) - 1 else next(fresh)
        if a > 0:
            edges.append((cur, a - 1, nxt))
        else:
            edges.append((nxt, -a - 1, cur))
        cur = nxt
    return edges


def stallings_graph(generators):
    """Core graph of the subgroup generated by ``generators`` and its map to the bouquet."""
    gens = [g for g in generators if not g.is_identity()]
    if not gens:
        raise DomainError("all generators are trivial")
    rank = max(g.rank for g in gens)
    counter = iter(range(1, 10 ** 9))
    edges = []
    for g in gens:
        edges += path_edges(g.letters, 0, counter)
    n = 1 + max(max(u, v) for u, _, v in edges)
    folded, _ = fold(n, rank, edges)
    core, _ = prune_to_core(folded)
    return core, to_bouquet(core)


# ---------------------------------------------------------------- Γ_{w^σ}

@dataclass(frozen=True, eq=False)
class CoveringData:
    rho: Morphism
    degree: int
    vertex_fibers: tuple  # vertex_fibers[p] = domain vertices over p, ordered by sheet


def permutation_of_shape(shape):
    """Standard permutation (0-based images) with the given cycle lengths."""
    perm = []
    start = 0
    for part in shape:
        perm += [start + (i + 1) % part for i in range(part)]
        start += part
    return tuple(perm)


def cycle_type(perm):
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            parts.append(k)
    return tuple(sorted(parts, reverse=True))


def gamma_power(w: Word, shape):
    """The cover Γ_{w^σ} of Γ_w, with σ given by a permutation or a partition.

    ``shape`` is a partition (a tuple of cycle lengths) unless passed as
    ``("perm", images)``.  Returns ``(graph, eta, cover)``; for ``w = 1`` or an
    empty shape the graph is empty and ``cover`` is ``None``.
    """
    if isinstance(shape, tuple) and len(shape) == 2 and shape[0] == "perm":
        perm = tuple(shape[1])
    else:
        perm = permutation_of_shape(tuple(shape))
    core, _ = cyclic_reduce(w)
    d = len(perm)
    if core.is_identity() or d == 0:
        g = empty_graph(w.rank)
        return g, to_bouquet(g), None
    xs = core.letters
    L = len(xs)
    vid = lambda p, i: i * L + p  # noqa: E731
    edges = []
    for i in range(d):
        for p, a in enumerate(xs):
            u = vid(p, i)
            v = vid(p + 1, i) if p + 1 < L else vid(0, perm[i])
            edges.append((u, a - 1, v) if a > 0 else (v, -a - 1, u))
    rows = [[-1] * (L * d) for _ in range(w.rank)]
    for u, x, v in edges:
        rows[x][u] = v
    g = CoreGraph(L * d, w.rank, tuple(tuple(r) for r in rows))
    base_rows = [[-1] * L for _ in range(w.rank)]
    for p, a in enumerate(xs):
        q = (p + 1) % L
        if a > 0:
            base_rows[a - 1][p] = q
        else:
            base_rows[-a - 1][q] = p
    base = CoreGraph(L, w.rank, tuple(tuple(r) for r in base_rows))
    rho = Morphism(g, base, tuple(v % L for v in range(L * d)))
    fibers = tuple(tuple(vid(p, i) for i in range(d)) for p in range(L))
    return g, to_bouquet(g), CoveringData(rho, d, fibers)


def words_graph(words):
    """Disjoint union of the cycles Γ_{w_i} (one per word) and per-cycle vertex ranges."""
    rank = max(w.rank for w in words)
    rows = [[] for _ in range(rank)]
    ranges = []
    n = 0
    for w in words:
        g, _, _ = gamma_power(w.with_rank(rank), (1,))
        for x in range(rank):
            rows[x] += [t + n if t >= 0 else -1 for t in g.out[x]]
        ranges.append(range(n, n + g.n))
        n += g.n
    g = CoreGraph(n, rank, tuple(tuple(r) for r in rows))
    return g, to_bouquet(g), ranges


def is_efficient(eta1: Morphism, cover: CoveringData) -> bool:
    if cover is None:
        return True
    if eta1.domain is not cover.rho.domain and eta1.domain.n != cover.rho.domain.n:
        raise InputError("eta1 and the covering have different domains")
    for fib in cover.vertex_fibers:
        imgs = [eta1.vmap[v] for v in fib]
        if len(set(imgs)) != len(imgs):
            return False
    return True


# ---------------------------------------------------------------- canonical forms

def _bfs_code(g: CoreGraph, start: int, annot=None):
    order = {start: 0}
    seq = [start]
    code = []
    i = 0
    while i < len(seq):
        v = seq[i]
        i += 1
        if annot is not None:
            code.append(annot[v])
        for x in range(g.rank):
            for u in (g.out[x][v], g.inn[x][v]):
                if u < 0:
                    code.append(-1)
                    continue
                if u not in order:
                    order[u] = len(seq)
                    seq.append(u)
                code.append(order[u])
    return tuple(code), order


def _component_code(g, comp, annot=None):
    return min(_bfs_code(g, s, annot)[0] for s in comp)


def graph_key(g: CoreGraph):
    return ("G", g.rank, tuple(sorted(_component_code(g, c) for c in g.components)))


def morphism_key(m: Morphism):
    d, c = m.domain, m.codomain
    by_comp = [[] for _ in c.components]
    for dc in d.components:
        by_comp[c.component_of[m.vmap[dc[0]]]].append(dc)
    parts = []
    for ci, comp in enumerate(c.components):
        best = None
        for s in comp:
            code, order = _bfs_code(c, s)
            annot = [order.get(m.vmap[v], -1) for v in range(d.n)]
            dcodes = tuple(sorted(_component_code(d, dc, annot) for dc in by_comp[ci]))
            cand = (code, dcodes)
            if best is None or cand < best:
                best = cand
        parts.append(best)
    return ("M", c.rank, tuple(sorted(parts)))


def canonical_key(obj):
    if isinstance(obj, Morphism):
        return morphism_key(obj)
    if isinstance(obj, CoreGraph):
        return graph_key(obj)
    raise InputError(f"cannot canonicalize {type(obj).__name__}")


def disjoint_union(morphisms) -> Morphism:
    """Componentwise union of morphisms: domains and codomains side by side."""
    morphisms = list(morphisms)
    if not morphisms:
        raise InputError("disjoint_union needs at least one morphism")
    rank = morphisms[0].domain.rank

    def glue(graphs):
        rows = [[] for _ in range(rank)]
        offs, n = [], 0
        for g in graphs:
            for x in range(rank):
                rows[x] += [t + n if t >= 0 else -1 for t in g.out[x]]
            offs.append(n)
            n += g.n
        return CoreGraph(n, rank, tuple(tuple(r) for r in rows)), offs

    dom, doffs = glue(m.domain for m in morphisms)
    cod, coffs = glue(m.codomain for m in morphisms)
    vmap = []
    for m, co in zip(morphisms, coffs):
        vmap += [v + co for v in m.vmap]
    return Morphism(dom, cod, tuple(vmap))
