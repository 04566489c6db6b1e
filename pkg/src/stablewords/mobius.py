"""Lift counts Φ and L↠ and their Möbius inversions, as exact rational functions of N.

For an immersion ``η: Γ -> Δ`` every decomposition ``Γ ->> Σ -> Δ`` is a
closed partition of ``V(Γ)`` refining the kernel of ``η``, and a chain
``Γ ->> Σ1 ->> Σ2 -> Δ`` is a pair of nested ones.  All inversions are then
Möbius inversions on this lattice (surjective family) or on its sub-poset of
algebraic partitions (algebraic family):

* ``R(Q)      = Σ_{Q' ≤ Q} Φ(0, Q') μ(Q', Q)``
* ``L(P)      = Σ_{P ≤ Q} μ(P, Q) Φ(Q, top)``
* ``C(P, Q)   = Σ_{P ≤ Q1 ≤ Q2 ≤ Q} μ(P, Q1) Φ(Q1, Q2) μ(Q2, Q)``

with ``Φ(P, Q)`` the lift count of ``Γ/P -> Γ/Q``.
"""

from __future__ import annotations

import enum
from collections import Counter
from fractions import Fraction
from itertools import combinations

from .algebraic import AlgebraicContext
from .enumeration import Lattice, closed_partitions, kernel, refines
from .errors import InputError
from .graphs import Morphism, canonical_key, words_graph
from .ratfun import RatFun, rsum


class MobiusKind(enum.Enum):
    PHI = "PHI"
    L_SURJ = "L_SURJ"
    C_SURJ = "C_SURJ"
    R_SURJ = "R_SURJ"
    L_ALG = "L_ALG"
    C_ALG = "C_ALG"
    R_ALG = "R_ALG"


def lb(eta: Morphism) -> RatFun:
    """Average number of injective lifts: prod (N)_{|fiber v|} / prod (N)_{|fiber e|}."""
    vf = Counter(eta.vmap)
    ef = eta.edge_fiber_sizes()
    return RatFun.falling_ratio(sorted(vf.values()), sorted(ef.values()))


_PROFILE_MEMO: dict = {}


def _profiles_connected(eta: Morphism):
    """Fiber-size profiles of all decompositions of a surjection onto a connected graph.

    Each closed partition ``R`` below the kernel contributes the multiset of
    block counts over vertex fibers and over edge fibers; ``Φ`` is the sum of
    the corresponding falling-factorial ratios.
    """
    key = canonical_key(eta)
    hit = _PROFILE_MEMO.get(key)
    if hit is not None:
        return hit
    g, d = eta.domain, eta.codomain
    vfib = [[] for _ in range(d.n)]
    for v, t in enumerate(eta.vmap):
        vfib[t].append(v)
    efib = {}
    for v, x, _ in g.edges:
        efib.setdefault((eta.vmap[v], x), []).append(v)
    efib = list(efib.values())
    profiles = Counter()
    for r in closed_partitions(g, top=kernel(eta)):
        vc = tuple(sorted(len({r[v] for v in f}) for f in vfib))
        ec = tuple(sorted(len({r[v] for v in f}) for f in efib))
        profiles[(vc, ec)] += 1
    out = tuple(sorted(profiles.items()))
    _PROFILE_MEMO[key] = out
    return out


def falling_value(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def falling_ratio_at(num_ks, den_ks, n: int) -> Fraction:
    """Exact value at ``N = n`` of an injective-lift ratio; zero when a vertex fiber exceeds ``n``."""
    if any(k > n for k in num_ks):
        return Fraction(0)
    num = 1
    for k in num_ks:
        num *= falling_value(n, k)
    den = 1
    for k in den_ks:
        den *= falling_value(n, k)
    return Fraction(num, den)


def lb_at(eta: Morphism, n: int) -> Fraction:
    return falling_ratio_at(list(Counter(eta.vmap).values()), list(eta.edge_fiber_sizes().values()), n)


def _components_of(eta: Morphism):
    sur, _ = eta.image()
    return [sur.restrict_to_component(ci) for ci in range(len(sur.codomain.components))]


def phi(eta: Morphism) -> RatFun:
    """Average number of lifts of ``eta`` to a random degree-N cover of its codomain."""
    acc = RatFun.one()
    for part in _components_of(eta):
        acc = acc * rsum(RatFun.falling_ratio(vc, ec) * c for (vc, ec), c in _profiles_connected(part))
    return acc


def phi_at(eta: Morphism, n: int) -> Fraction:
    """Exact value of ``Φ`` at a single degree ``n``, valid for every ``n >= 1``."""
    acc = Fraction(1)
    for part in _components_of(eta):
        acc *= sum((falling_ratio_at(vc, ec, n) * c for (vc, ec), c in _profiles_connected(part)),
                   Fraction(0))
    return acc


def mobius_function(elements):
    """Möbius function of a list of partitions ordered by refinement: ``mu[(i, j)]``."""
    n = len(elements)
    order = sorted(range(n), key=lambda i: -max(elements[i], default=-1))
    leq = {}
    for i in range(n):
        for j in range(n):
            if refines(elements[i], elements[j]):
                leq[(i, j)] = True
    mu = {}
    for i in order:
        ups = [j for j in order if (i, j) in leq]
        for j in ups:
            if i == j:
                mu[(i, j)] = 1
            else:
                mu[(i, j)] = -sum(mu[(i, k)] for k in ups if (k, j) in leq and k != j and (i, k) in mu)
    return mu, leq


class MobiusSystem:
    """Decomposition lattice of an immersion ``eta`` with both inversion families."""

    def __init__(self, eta: Morphism, fibers=None, at=None):
        """``at=None`` works with rational functions; an integer ``at`` evaluates
        every lift count exactly at that degree instead."""
        self.eta = eta
        self.at = at
        self.zero = RatFun.zero() if at is None else Fraction(0)
        self.g = eta.domain
        self.top = kernel(eta)
        self.lattice = Lattice(self.g, top=self.top)
        self.bottom = tuple(range(self.g.n))
        self.alg = AlgebraicContext(self.g, lattice=self.lattice)
        self.fibers = fibers
        self._phi = {}
        self._A = None

    # -- basic pieces
    def _sum(self, items):
        return sum(items, self.zero)

    def phi_pair(self, p, q) -> RatFun:
        if (p, q) not in self._phi:
            if q == self.top:
                m = self._to_target(p)
            else:
                m = self.lattice.between(p, q)
            self._phi[(p, q)] = phi(m) if self.at is None else phi_at(m, self.at)
        return self._phi[(p, q)]

    def _to_target(self, p):
        m = {}
        for a, b in zip(p, self.eta.vmap):
            m[a] = b
        src = self.lattice.graph(p)
        return Morphism(src, self.eta.codomain, tuple(m[i] for i in range(src.n)))

    def lb_pair(self, p, q) -> RatFun:
        m = self._to_target(p) if q == self.top else self.lattice.between(p, q)
        return lb(m) if self.at is None else lb_at(m, self.at)

    @property
    def algebraic(self):
        if self._A is None:
            self._A = [p for p in self.lattice.elements if self.alg.is_algebraic_partition(p)]
            self._muA, self._leqA = mobius_function(self._A)
            self._idxA = {p: i for i, p in enumerate(self._A)}
        return self._A

    def mu_alg(self, p, q):
        self.algebraic
        return self._muA.get((self._idxA[p], self._idxA[q]), 0)

    def leq_alg(self, p, q):
        self.algebraic
        return (self._idxA[p], self._idxA[q]) in self._leqA

    def _full_mu(self):
        if not hasattr(self, "_muL"):
            self._muL, self._leqL = mobius_function(self.lattice.elements)
            self._idxL = self.lattice.index
        return self._muL

    def mu_lat(self, p, q):
        mu = self._full_mu()
        return mu.get((self._idxL[p], self._idxL[q]), 0)

    # -- surjective family
    def L_surj(self, p=None):
        return self.lb_pair(self.bottom if p is None else p, self.top)

    def R_surj(self, q):
        return self._sum(self.phi_pair(self.bottom, r) * self.mu_lat(r, q)
                    for r in self.lattice.elements if refines(r, q) and self.mu_lat(r, q))

    def C_surj(self, p, q):
        inner = [r for r in self.lattice.elements if refines(p, r) and refines(r, q)]
        acc = self.zero
        for a in inner:
            ma = self.mu_lat(p, a)
            if not ma:
                continue
            for b in inner:
                if refines(a, b):
                    mb = self.mu_lat(b, q)
                    if mb:
                        acc = acc + self.phi_pair(a, b) * (ma * mb)
        return acc

    # -- algebraic family
    def L_alg(self, p=None):
        p = self.bottom if p is None else p
        return self._sum(self.phi_pair(q, self.top) * self.mu_alg(p, q)
                    for q in self.algebraic if self.leq_alg(p, q) and self.mu_alg(p, q))

    def L_alg_via_free(self, p=None):
        """Sum of L↠ over decompositions whose first part is free."""
        p = self.bottom if p is None else p
        acc = self.zero
        for r in self.lattice.elements:
            if refines(p, r) and self.alg.algebraic_part(r) == p:
                acc = acc + self.lb_pair(r, self.top)
        return acc

    def R_alg(self, q):
        return self._sum(self.phi_pair(self.bottom, r) * self.mu_alg(r, q)
                    for r in self.algebraic if self.leq_alg(r, q) and self.mu_alg(r, q))

    def C_alg(self, p, q):
        return self.weighted_sum({p: 1}, {q: 1})

    def weighted_sum(self, left, right):
        """``Σ_{P, K} left[P] right[K] C^alg(P, K)`` over algebraic ``P ≤ K``.

        Expands each ``C^alg`` through the Möbius function of the algebraic
        poset so the rational-function work is one ``Φ`` per comparable pair.
        """
        A = self.algebraic
        e = {}
        for q1 in A:
            s = sum(w * self.mu_alg(p, q1) for p, w in left.items() if self.leq_alg(p, q1))
            if s:
                e[q1] = s
        m = {}
        for q2 in A:
            s = sum(w * self.mu_alg(q2, k) for k, w in right.items() if self.leq_alg(q2, k))
            if s:
                m[q2] = s
        acc = self.zero
        for q1, a in e.items():
            for q2, b in m.items():
                if self.leq_alg(q1, q2):
                    acc = acc + self.phi_pair(q1, q2) * (a * b)
        return acc

    def is_efficient_partition(self, p):
        if not self.fibers:
            return True
        return all(len({p[v] for v in f}) == len(f) for f in self.fibers)

    def is_proper_partition(self, p):
        m = self.lattice.quotient_map(p)
        return not any(m.restrict_to_component(ci).is_isomorphism()
                       for ci in range(len(m.codomain.components)))


def mobius(eta: Morphism, kind) -> RatFun:
    kind = MobiusKind(kind) if not isinstance(kind, MobiusKind) else kind
    if kind is MobiusKind.PHI:
        return phi(eta)
    if kind is MobiusKind.L_SURJ:
        return lb(eta)
    sysm = MobiusSystem(eta)
    if kind is MobiusKind.L_ALG:
        return sysm.L_alg()
    if kind in (MobiusKind.C_SURJ, MobiusKind.R_SURJ):
        if not eta.is_surjective():
            raise InputError(f"{kind.value} needs a surjective morphism")
        return sysm.C_surj(sysm.bottom, sysm.top) if kind is MobiusKind.C_SURJ else sysm.R_surj(sysm.top)
    if not (eta.is_surjective() and sysm.alg.is_algebraic_partition(sysm.top)):
        raise InputError(f"{kind.value} needs an algebraic morphism")
    if kind is MobiusKind.C_ALG:
        return sysm.C_alg(sysm.bottom, sysm.top)
    return sysm.R_alg(sysm.top)


def product_fix_minus_one(words, at=None):
    """E[prod (fix(w_i) - 1)] over uniform S_N, via proper algebraic extensions.

    Returns a rational function, or the exact value at ``N = at`` when given.
    """
    for w in words:
        if w.is_identity():
            raise InputError("product_fix_minus_one needs nontrivial words")
    g, eta, _ = words_graph(words)
    sysm = MobiusSystem(eta, at=at)
    right = {k: 1 for k in sysm.algebraic if sysm.is_proper_partition(k)}
    return sysm.weighted_sum({p: 1 for p in sysm.algebraic}, right)


def product_fix_minus_one_inclusion_exclusion(words, at=None):
    """The same quantity as an alternating sum of Φ over sub-multisets."""
    k = len(words)
    acc = RatFun.zero() if at is None else Fraction(0)
    for size in range(k + 1):
        for sub in combinations(range(k), size):
            sign = (-1) ** (k - size)
            if not sub:
                acc = acc + sign
                continue
            _, eta, _ = words_graph([words[i] for i in sub])
            acc = acc + (phi(eta) if at is None else phi_at(eta, at)) * sign
    return acc
