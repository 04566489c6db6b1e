"""Independent ground truth: exact enumeration and seeded sampling of word measures,
and lift counting over random covers.

Permutations act on the right: a word ``x1 x2 ... xk`` sends ``i`` to
``xk(...x2(x1(i)))``.  Sampling uses numpy's PCG64 generator seeded with the
given integer; random permutations come from ``Generator.permuted`` (an
unbiased Fisher–Yates shuffle), so runs are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, sqrt

import numpy as np

from .characters import (CmSpec, PartitionMap, mn_character, partition, stable_map,
                         wreath_character_cycles, wreath_cycles)
from .config import CONFIG
from .errors import InputError, ResourceError, UnsupportedGroupError
from .graphs import Morphism, cycle_type


@dataclass(frozen=True)
class McEstimate:
    mean: float
    standard_error: float
    sample_count: int
    seed: int

    def within(self, value, k=4.0) -> bool:
        err = self.standard_error if self.standard_error > 0 else 1e-12
        return abs(self.mean - float(value)) <= k * err


# -- class functions on S_N


def parse_function(spec):
    """Class-function specs: ``"fix"``, ``"fix-1"``, ``("chi", mu)``, ``("zeta", nu)``."""
    if spec in ("fix", "fix-1"):
        return spec
    if isinstance(spec, tuple) and spec and spec[0] in ("chi", "zeta"):
        return (spec[0], partition(spec[1]))
    raise InputError(f"unknown class function {spec!r}")


def _fix(perm):
    return sum(1 for i, j in enumerate(perm) if i == j)


def _power_fix(perm, k):
    n = len(perm)
    out = 0
    for i in range(n):
        j = i
        for _ in range(k):
            j = perm[j]
        out += j == i
    return out


def _evaluate(spec, perms, n):
    """Product over the words' permutations for ``fix``/``fix-1``; single-word characters otherwise."""
    if spec == "fix":
        val = 1
        for p in perms:
            val *= _fix(p)
        return val
    if spec == "fix-1":
        val = 1
        for p in perms:
            val *= _fix(p) - 1
        return val
    kind, mu = spec
    val = 1
    for p in perms:
        if kind == "chi":
            val *= mn_character(mu, cycle_type(p), n)
        else:
            for k in mu:
                val *= _power_fix(p, k)
    return val


def _word_perm(letters, gens, inverses, n):
    out = list(range(n))
    for l in letters:
        p = gens[l - 1] if l > 0 else inverses[-l - 1]
        out = [p[x] for x in out]
    return tuple(out)


def _invert(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _rank_of(words):
    return max(w.rank for w in words)


def exact_expectation_sn(words, f, n: int) -> Fraction:
    """Exact average of a class-function expression over all tuples in (S_N)^r."""
    spec = parse_function(f)
    words = list(words)
    r = _rank_of(words)
    used = sorted({abs(l) for w in words for l in w.letters})
    count = factorial(n) ** len(used)
    if count > CONFIG.exact_tuple_limit:
        raise ResourceError(f"{count} tuples exceed the guard {CONFIG.exact_tuple_limit}",
                            bound=CONFIG.exact_tuple_limit)
    perms = list(permutations(range(n)))
    inv = {p: _invert(p) for p in perms}
    total = 0
    # letters outside the words are integrated out trivially
    for tup in product(perms, repeat=len(used)):
        gens = [None] * r
        invs = [None] * r
        for x, p in zip(used, tup):
            gens[x - 1] = p
            invs[x - 1] = inv[p]
        total += _evaluate(spec, [_word_perm(w.letters, gens, invs, n) for w in words], n)
    return Fraction(total, factorial(n) ** len(used))


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def monte_carlo_sn(words, f, n: int, samples: int, seed: int) -> McEstimate:
    if samples < 1:
        raise InputError("samples must be positive")
    spec = parse_function(f)
    words = list(words)
    r = _rank_of(words)
    rng = _rng(seed)
    base = np.tile(np.arange(n), (samples, r, 1))
    gens = rng.permuted(base, axis=2)
    invs = np.argsort(gens, axis=2)
    vals = np.empty(samples, dtype=np.float64)
    rows = np.arange(samples)[:, None]
    images = []
    for w in words:
        cur = np.tile(np.arange(n), (samples, 1))
        for l in w.letters:
            p = gens[:, l - 1, :] if l > 0 else invs[:, -l - 1, :]
            cur = p[rows, cur]
        images.append(cur)
    if spec in ("fix", "fix-1"):
        acc = np.ones(samples, dtype=np.float64)
        for img in images:
            fx = (img == np.arange(n)).sum(axis=1).astype(np.float64)
            acc *= fx - (1 if spec == "fix-1" else 0)
        vals = acc
    else:
        for s in range(samples):
            vals[s] = _evaluate(spec, [tuple(int(x) for x in img[s]) for img in images], n)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / sqrt(samples)) if samples > 1 else 0.0
    return McEstimate(mean, se, samples, seed)


# -- wreath products


def _wreath_elements(group, n):
    sigmas = list(permutations(range(n)))
    for v in product(group.elements, repeat=n):
        for s in sigmas:
            yield (tuple(v), s)


def _wreath_mul(group, a, b):
    v1, s1 = a
    v2, s2 = b
    return (tuple(group.mul(v1[i], v2[s1[i]]) for i in range(len(s1))), tuple(s2[s1[i]] for i in range(len(s1))))


def _wreath_inv(group, a):
    v, s = a
    n = len(s)
    sinv = _invert(s)
    return (tuple(group.inv(v[sinv[j]]) for j in range(n)), sinv)


def exact_expectation_wreath(group, words, arrm: PartitionMap, n: int) -> Fraction:
    """Exact average of χ^{→μ[N]}(w) over all homomorphisms into G≀S_N (one word per entry)."""
    if isinstance(group, CmSpec):
        raise UnsupportedGroupError("exact wreath enumeration needs an integer character table")
    words = list(words)
    size = group.order ** n * factorial(n)
    used = sorted({abs(l) for w in words for l in w.letters})
    if size ** len(used) > CONFIG.exact_tuple_limit:
        raise ResourceError(f"{size}^{len(used)} tuples exceed the guard", bound=CONFIG.exact_tuple_limit)
    mapping = stable_map(arrm, group, n)
    elems = list(_wreath_elements(group, n))
    inv = {e: _wreath_inv(group, e) for e in elems}
    ident = (tuple([group.identity] * n), tuple(range(n)))
    memo = {}
    total = 0
    for tup in product(elems, repeat=len(used)):
        gens = dict(zip(used, tup))
        val = 1
        for w in words:
            g = ident
            for l in w.letters:
                g = _wreath_mul(group, g, gens[l] if l > 0 else inv[gens[-l]])
            key = tuple(sorted((ln, group.class_of[h]) for ln, h in wreath_cycles(group, g)))
            if key not in memo:
                reps = {}
                for h in group.elements:
                    reps.setdefault(group.class_of[h], h)
                memo[key] = wreath_character_cycles(group, mapping, [(ln, reps[c]) for ln, c in key])
            val *= memo[key]
        total += val
    return Fraction(total, size ** len(used))


# -- lifts to random covers


def _lift_tables(eta: Morphism, covers, samples):
    """Per domain component: sheet of every vertex for each root sheet, and validity."""
    g, d = eta.domain, eta.codomain
    n = covers.shape[2]
    edge_index = {}
    for v, x, _ in d.edges:
        edge_index[(v, x)] = len(edge_index)
    rows = np.arange(samples)[:, None]
    out = []
    for comp in g.components:
        root = comp[0]
        sheet = {root: np.tile(np.arange(n), (samples, 1))}
        valid = np.ones((samples, n), dtype=bool)
        queue = [root]
        while queue:
            v = queue.pop(0)
            for x in range(g.rank):
                t = g.out[x][v]
                if t >= 0:
                    perm = covers[:, edge_index[(eta.vmap[v], x)], :]
                    img = perm[rows, sheet[v]]
                    if t not in sheet:
                        sheet[t] = img
                        queue.append(t)
                s = g.inn[x][v]
                if s >= 0 and s not in sheet:
                    perm = covers[:, edge_index[(eta.vmap[s], x)], :]
                    inv = np.argsort(perm, axis=1)
                    sheet[s] = inv[rows, sheet[v]]
                    queue.append(s)
        # a root sheet is valid when every edge of the component lifts consistently
        for v in comp:
            for x in range(g.rank):
                t = g.out[x][v]
                if t >= 0:
                    perm = covers[:, edge_index[(eta.vmap[v], x)], :]
                    valid &= perm[rows, sheet[v]] == sheet[t]
        out.append((comp, sheet, valid))
    return out


def random_cover_lift_counts(eta: Morphism, n: int, samples: int, seed: int,
                             injective_only: bool = False) -> McEstimate:
    """Average number of (injective) lifts of ``eta`` to uniform random N-covers of its codomain."""
    if samples < 1:
        raise InputError("samples must be positive")
    d = eta.codomain
    ne = d.num_edges
    rng = _rng(seed)
    covers = rng.permuted(np.tile(np.arange(n), (samples, ne, 1)), axis=2)
    tables = _lift_tables(eta, covers, samples)
    if not injective_only:
        counts = np.ones(samples, dtype=np.float64)
        for _, _, valid in tables:
            counts *= valid.sum(axis=1)
    else:
        counts = np.zeros(samples, dtype=np.float64)
        for roots in product(range(n), repeat=len(tables)):
            ok = np.ones(samples, dtype=bool)
            placed = {}
            for (comp, sheet, valid), r in zip(tables, roots):
                ok &= valid[:, r]
                for v in comp:
                    placed.setdefault(eta.vmap[v], []).append(sheet[v][:, r])
            for cols in placed.values():
                if len(cols) > 1:
                    st = np.sort(np.stack(cols, axis=1), axis=1)
                    ok &= (st[:, 1:] != st[:, :-1]).all(axis=1)
            counts += ok
    mean = float(counts.mean())
    se = float(counts.std(ddof=1) / sqrt(samples)) if samples > 1 else 0.0
    return McEstimate(mean, se, samples, seed)
