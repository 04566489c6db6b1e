"""Free and algebraic morphisms, the algebraic-free decomposition, χ_alg and π(w).

Algebraicity of a surjective morphism ``Γ -> Δ`` is decided per component
``D`` of ``Δ``: the morphism is algebraic over ``D`` iff ``π₁(D)`` has no
nontrivial free splitting relative to the images of the domain components.
Each domain component is replaced by a finite set of closed paths that
fill it (a basis and all pairwise products), which does not change the
answer, so everything reduces to cyclic words and Whitehead's algorithm.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .enumeration import Lattice, kernel, refines
from .errors import DomainError, InvariantViolation
from .graphs import (CoreGraph, Morphism, canonical_key, empty_graph, identity, to_bouquet,
                     words_graph)
from .whitehead import cyclic_reduce, relative_split

# A directed edge step is (source, letter, sign); sign=+1 follows out[letter][source].


def _step_target(g: CoreGraph, v, x, s):
    return g.out[x][v] if s > 0 else g.inn[x][v]


def _geometric(g: CoreGraph, v, x, s):
    """Geometric edge ``(source, letter)`` traversed by a step."""
    return (v, x) if s > 0 else (g.inn[x][v], x)


def spanning_tree_paths(g: CoreGraph, comp):
    """Tree paths from ``comp[0]`` and the set of tree edges."""
    root = comp[0]
    path = {root: []}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for x in range(g.rank):
            for s in (1, -1):
                u = _step_target(g, v, x, s)
                if u >= 0 and u not in path:
                    path[u] = path[v] + [(v, x, s)]
                    tree.add(_geometric(g, v, x, s))
                    queue.append(u)
    return path, tree


def _invert(steps, g):
    out = []
    for v, x, s in reversed(steps):
        out.append((_step_target(g, v, x, s), x, -s))
    return out


def _reduce_steps(steps, g):
    """Free and then cyclic reduction of a closed step sequence."""
    out = []
    for st in steps:
        if out:
            v, x, sg = out[-1]
            if st[1] == x and st[2] == -sg and st[0] == _step_target(g, v, x, sg):
                out.pop()
                continue
        out.append(st)
    while len(out) > 1 and out[0][1] == out[-1][1] and out[0][2] == -out[-1][2]:
        out = out[1:-1]
    return out


def filling_paths(g: CoreGraph, comp):
    """Closed step sequences in a component whose conjugacy classes fill it.

    A cycle component yields its single cycle; otherwise a free basis from a
    spanning tree together with all pairwise products of basis elements.
    """
    path, tree = spanning_tree_paths(g, comp)
    basis = []
    for v in comp:
        for x in range(g.rank):
            t = g.out[x][v]
            if t >= 0 and (v, x) not in tree:
                basis.append(path[v] + [(v, x, 1)] + _invert(path[t], g))
    loops = list(basis)
    for i, j in combinations(range(len(basis)), 2):
        loops.append(basis[i] + basis[j])
    return [_reduce_steps(p, g) for p in loops]


def cycle_paths(g: CoreGraph):
    """Per component, filling closed paths (one per component for unions of cycles)."""
    return [filling_paths(g, comp) for comp in g.components]


def _image_steps(steps, vmap):
    return [(vmap[v], x, s) for v, x, s in steps]


def component_words(delta: CoreGraph, comp, closed_paths):
    """Cyclic words in a free basis of ``π₁`` of a component, for closed paths in it."""
    path, tree = spanning_tree_paths(delta, comp)
    gen = {}
    for v in comp:
        for x in range(delta.rank):
            if delta.out[x][v] >= 0 and (v, x) not in tree:
                gen[(v, x)] = len(gen) + 1
    words = []
    for p in closed_paths:
        w = []
        for v, x, s in p:
            e = _geometric(delta, v, x, s)
            if e in gen:
                w.append(gen[e] * s)
        words.append(cyclic_reduce(w))
    return words, len(gen)


def splits_relative(delta: CoreGraph, comp, closed_paths):
    words, k = component_words(delta, comp, closed_paths)
    if k == 0:
        raise InvariantViolation("a core graph component has trivial fundamental group")
    return relative_split(words, k)


@dataclass(frozen=True)
class SplittingCertificate:
    verdict: str
    rank: int
    words: tuple
    blocks: tuple
    steps: tuple


def relative_free_splitting(delta: CoreGraph, images):
    """Splitting verdict for a connected ``delta`` relative to morphisms into it."""
    if len(delta.components) != 1:
        raise DomainError("relative_free_splitting needs a connected graph")
    paths = []
    for m in images:
        for comp_paths in cycle_paths(m.domain):
            paths += [_image_steps(p, m.vmap) for p in comp_paths]
    res = splits_relative(delta, delta.components[0], paths)
    return SplittingCertificate("splits" if res.splits else "does_not_split", res.rank,
                                res.words, res.blocks, res.steps)


def _is_algebraic_surjective(eta: Morphism, paths_by_comp=None):
    d, c = eta.domain, eta.codomain
    if paths_by_comp is None:
        paths_by_comp = cycle_paths(d)
    per = [[] for _ in c.components]
    for ci, comp in enumerate(d.components):
        target = c.component_of[eta.vmap[comp[0]]]
        per[target] += [_image_steps(p, eta.vmap) for p in paths_by_comp[ci]]
    for ci, comp in enumerate(c.components):
        if splits_relative(c, comp, per[ci]).splits:
            return False
    return True


def is_algebraic(eta: Morphism) -> bool:
    if not eta.is_surjective():
        return False
    return _is_algebraic_surjective(eta)


def is_isomorphism_on_component(eta: Morphism, ci: int) -> bool:
    r = eta.restrict_to_component(ci)
    return r.is_isomorphism()


def is_proper_algebraic(eta: Morphism) -> bool:
    if not is_algebraic(eta):
        return False
    return not any(is_isomorphism_on_component(eta, ci) for ci in range(len(eta.codomain.components)))


class AlgebraicContext:
    """Algebraicity of the quotient maps ``Γ -> Γ/P`` over a lattice of closed partitions."""

    def __init__(self, g: CoreGraph, lattice: Lattice | None = None, top=None):
        self.g = g
        self.lattice = lattice if lattice is not None else Lattice(g, top=top)
        self.paths = cycle_paths(g)
        self._memo = {}
        self._cache = {}

    def is_algebraic_partition(self, p) -> bool:
        if p not in self._memo:
            q = self.lattice.graphs[p]
            self._memo[p] = _is_algebraic_surjective(Morphism(self.g, q, p), self.paths)
        return self._memo[p]

    def algebraic_elements(self):
        return [p for p in self.lattice.elements if self.is_algebraic_partition(p)]

    def algebraic_part(self, top):
        """The coarsest algebraic partition refining ``top``; it is unique."""
        cands = [p for p in self.lattice.elements if refines(p, top) and self.is_algebraic_partition(p)]
        best = max(cands, key=lambda p: -max(p, default=-1))
        for p in cands:
            if not refines(p, best):
                raise InvariantViolation("algebraic partitions below a morphism have no maximum")
        return best


def algebraic_free_decomposition(eta: Morphism):
    """``(eta_alg, middle, eta_free)`` with ``eta_free ∘ eta_alg == eta``."""
    ctx = AlgebraicContext(eta.domain, top=kernel(eta))
    p = ctx.algebraic_part(kernel(eta))
    q = ctx.lattice.graphs[p]
    eta_alg = Morphism(eta.domain, q, p)
    m = {}
    for a, b in zip(p, eta.vmap):
        m[a] = b
    eta_free = Morphism(q, eta.codomain, tuple(m[i] for i in range(q.n)))
    return eta_alg, q, eta_free


def is_free_morphism(eta: Morphism) -> bool:
    eta_alg, _, _ = algebraic_free_decomposition(eta)
    return eta_alg.is_injective()


@dataclass(frozen=True, eq=False)
class ExtensionRecord:
    morphism: Morphism
    chi: int
    proper: bool
    algebraic: bool = True


def algebraic_extensions(words):
    """Algebraic morphisms out of Γ_{words} through which the map to the bouquet factors."""
    for w in words:
        if w.is_identity():
            raise DomainError("algebraic extensions need nontrivial words")
    g, eta, _ = words_graph(words)
    ctx = AlgebraicContext(g)
    out = []
    for p in sorted(ctx.lattice.elements):
        if ctx.is_algebraic_partition(p):
            m = ctx.lattice.quotient_map(p)
            proper = not any(is_isomorphism_on_component(m, ci) for ci in range(len(m.codomain.components)))
            out.append(ExtensionRecord(m, m.codomain.euler_characteristic(), proper))
    return out


NEG_INF = float("-inf")


def chi_alg(words):
    """``(value, crit)``: max Euler characteristic of proper algebraic extensions and the attaining ones."""
    exts = [e for e in algebraic_extensions(words) if e.proper]
    if not exts:
        return NEG_INF, []
    best = max(e.chi for e in exts)
    return best, [e for e in exts if e.chi == best]


def primitivity_rank(w):
    """``(pi, c_w)`` with ``pi = inf`` for primitive words."""
    if w.is_identity():
        raise DomainError("primitivity rank of the identity is not defined here")
    value, crit = chi_alg([w])
    if value == NEG_INF:
        return float("inf"), 0
    return 1 - value, len(crit)
