"""Characters of symmetric groups, of wreath products G≀S_N, and η-expectations.

Partitions are weakly decreasing tuples of positive ints.  Symmetric-group
characters come from the Murnaghan–Nakayama rule on beta-sets.  Finite
groups are restricted to those with integer character tables (S_m for
m ≤ 5 and C_2), plus cyclic groups C_m for linear characters, where values
are handled exactly through the m-th cyclotomic polynomial.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .config import CONFIG
from .errors import (DomainError, InputError, InvariantViolation, ParseError, ResourceError,
                     UnsupportedGroupError)
from .ratfun import RatFun

# -- partitions


def partition(parts) -> tuple:
    p = tuple(sorted((int(x) for x in parts if int(x) != 0), reverse=True))
    if any(x < 0 for x in p):
        raise InputError(f"negative part in {parts}")
    return p


def partitions(n: int, max_part=None):
    """All partitions of ``n`` in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return out


def conjugate(mu):
    return tuple(sum(1 for x in mu if x > i) for i in range(mu[0])) if mu else ()


def z_value(nu) -> int:
    """Centralizer order of a permutation of cycle type ``nu``."""
    out = 1
    for k, m in Counter(nu).items():
        out *= k ** m * factorial(m)
    return out


def class_size(nu) -> int:
    return factorial(sum(nu)) // z_value(nu)


def class_data(d: int):
    """``[(cycle type, class size)]`` for S_d."""
    return [(nu, class_size(nu)) for nu in partitions(d)]


# -- Murnaghan–Nakayama


@lru_cache(maxsize=None)
def _mn(mu, rho):
    if not rho:
        return 1 if not mu else 0
    k, rest = rho[0], rho[1:]
    ell = len(mu)
    beta = [mu[i] + ell - 1 - i for i in range(ell)]
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in bset:
            continue
        sign = (-1) ** sum(1 for x in beta if t < x < b)
        nb = sorted((t if x == b else x for x in beta), reverse=True)
        new = tuple(x for x in (nb[i] - (ell - 1 - i) for i in range(ell)) if x > 0)
        total += sign * _mn(new, rest)
    return total


def stable_partition(mu, n: int):
    """``μ[n]``: prepend a first row so that the size becomes ``n``."""
    mu = tuple(mu)
    top = n - sum(mu)
    if top < (mu[0] if mu else 0):
        raise DomainError(f"μ[{n}] is not defined for μ={mu}: need n ≥ |μ|+μ₁")
    return (top,) + mu if top > 0 else mu


def mn_character(mu, cycle_type, n=None) -> int:
    """χ^μ at a class of S_|μ|; with ``n`` given, χ^{μ[n]} at a class of S_n."""
    mu = partition(mu)
    rho = partition(cycle_type)
    if n is not None:
        mu = stable_partition(mu, n)
    if sum(mu) != sum(rho):
        raise InputError(f"size mismatch: |{mu}| != |{rho}|")
    return _mn(mu, tuple(sorted(rho, reverse=True)))


def character_dimension(mu) -> int:
    return mn_character(mu, (1,) * sum(mu))


# -- P⁻ and Pieri


def p_minus(mu):
    """Partitions obtained from ``mu`` by removing at most one cell from every column."""
    mu = partition(mu)
    ranges = [range(mu[i + 1] if i + 1 < len(mu) else 0, mu[i] + 1) for i in range(len(mu))]
    out = {partition(c) for c in product(*ranges)}
    return sorted(out, key=lambda p: (-sum(p), tuple(-x for x in p)))


def pieri_decompose(mu, n: int):
    """Labels ν with Ind(χ^μ ⊠ triv) = Σ χ^{ν[n]}; needs ``n ≥ |μ|+μ₁``."""
    mu = partition(mu)
    if n < sum(mu) + (mu[0] if mu else 0):
        raise DomainError(f"N={n} is below |μ|+μ₁ for μ={mu}; the right hand side is undefined")
    return p_minus(mu)


def induced_trivial_extension(mu, n: int, rho) -> int:
    """Ind_{S_d × S_{n-d}}^{S_n}(χ^μ ⊠ triv) at the class ``rho``, by splitting its cycles."""
    mu = partition(mu)
    d = sum(mu)
    rho = partition(rho)
    counts = Counter(rho)
    keys = sorted(counts)
    total = Fraction(0)
    for choice in product(*(range(counts[k] + 1) for k in keys)):
        alpha = partition([k for k, c in zip(keys, choice) for _ in range(c)])
        if sum(alpha) != d:
            continue
        beta = partition([k for k, c in zip(keys, choice) for _ in range(counts[k] - c)])
        total += Fraction(z_value(rho), z_value(alpha) * z_value(beta)) * mn_character(mu, alpha)
    return int(total)


def inverse_pieri_lhs(mu, k: int, tau) -> Fraction:
    """Average of χ^μ(τ ⊔ α) over α ∈ S_{d-k}."""
    mu = partition(mu)
    tau = partition(tau)
    d = sum(mu)
    if not 0 <= k <= d or sum(tau) != k:
        raise InputError("need 0 ≤ k ≤ |μ| and τ ⊢ k")
    return sum((Fraction(mn_character(mu, tau + alpha), z_value(alpha)) for alpha in partitions(d - k)),
               Fraction(0))


def inverse_pieri_rhs(mu, k: int, tau) -> int:
    return sum(mn_character(nu, tau) for nu in p_minus(mu) if sum(nu) == k)


# -- finite groups


def _compose(p, q):
    """Product ``p·q`` acting on the right: first ``p``, then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


@dataclass
class FiniteGroupTable:
    """A finite group with an exact integer character table."""

    name: str
    elements: list
    mul: object  # (a, b) -> a·b on element values
    inv: object
    class_of: dict  # element -> class index
    class_sizes: list
    characters: dict  # label -> tuple of values per class
    aliases: dict = field(default_factory=dict)

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[0]

    def label(self, text):
        """Resolve a character label (alias, explicit partition, or key)."""
        if isinstance(text, str):
            t = text.strip()
            if t in self.aliases:
                return self.aliases[t]
            m = re.fullmatch(r"\[([\d,\s]*)\]", t)
            if m:
                key = partition(int(x) for x in m.group(1).split(",") if x.strip())
                if key in self.characters:
                    return key
            if t in self.characters:
                return t
            raise InputError(f"unknown irreducible '{text}' for {self.name}")
        if text in self.characters:
            return text
        raise InputError(f"unknown irreducible {text!r} for {self.name}")

    def value(self, label, g):
        row = self.characters.get(label) if not isinstance(label, str) or label in self.characters else None
        if row is None:
            row = self.characters[self.label(label)]
        return row[self.class_of[g]]

    def trivial_label(self):
        return self.aliases["triv"]

    def dim(self, label):
        return self.value(label, self.identity)


def symmetric_group(m: int) -> FiniteGroupTable:
    if not 1 <= m <= 5:
        raise UnsupportedGroupError("symmetric groups are supported for 1 ≤ m ≤ 5")
    from .graphs import cycle_type

    elems = sorted(permutations(range(m)))
    ident = tuple(range(m))
    elems.remove(ident)
    elems.insert(0, ident)
    types = [p for p in partitions(m)]
    idx = {t: i for i, t in enumerate(types)}
    class_of = {g: idx[cycle_type(g)] for g in elems}
    chars = {mu: tuple(mn_character(mu, t) for t in types) for mu in types}
    aliases = {"triv": (m,), "sign": (1,) * m}
    if m >= 2:
        aliases["std"] = (m - 1, 1)
    inv = lambda p: tuple(sorted(range(m), key=lambda i: p[i]))  # noqa: E731
    return FiniteGroupTable(f"S{m}", elems, _compose, inv, class_of,
                            [class_size(t) for t in types], chars, aliases)


def cyclic_two() -> FiniteGroupTable:
    elems = [0, 1]
    return FiniteGroupTable("C2", elems, lambda a, b: (a + b) % 2, lambda a: a, {0: 0, 1: 1}, [1, 1],
                            {"triv": (1, 1), "sign": (1, -1)}, {"triv": "triv", "sign": "sign"})


def trivial_group() -> FiniteGroupTable:
    return FiniteGroupTable("1", [0], lambda a, b: 0, lambda a: 0, {0: 0}, [1], {"triv": (1,)},
                            {"triv": "triv"})


@dataclass(frozen=True)
class CmSpec:
    """Cyclic group C_m (m = 0 is the circle) with the linear character z ↦ z^j."""

    m: int
    j: int = 1

    def __post_init__(self):
        if self.m == 1 or self.m < 0:
            raise InputError("C_m needs m = 0 or m ≥ 2")


def parse_group(text: str):
    t = text.strip()
    if t in ("1", "S1", "trivial"):
        return trivial_group()
    m = re.fullmatch(r"S(\d+)", t)
    if m:
        return symmetric_group(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", t)
    if m:
        k = int(m.group(1))
        if k == 2:
            return cyclic_two()
        return CmSpec(k)
    raise ParseError(f"unknown group '{text}'")


# -- partition maps


@dataclass(frozen=True)
class PartitionMap:
    """Finitely supported map from irreducible labels of G to nonempty partitions."""

    items: tuple  # sorted ((label, partition), ...)

    @classmethod
    def of(cls, mapping):
        clean = {k: partition(v) for k, v in dict(mapping).items()}
        return cls(tuple(sorted(((k, v) for k, v in clean.items() if v), key=lambda kv: repr(kv[0]))))

    def as_dict(self):
        return dict(self.items)

    @property
    def size(self):
        return sum(sum(v) for _, v in self.items)

    def get(self, label):
        return self.as_dict().get(label, ())

    def __str__(self):
        def lab(k):
            return "[" + ",".join(map(str, k)) + "]" if isinstance(k, tuple) else str(k)
        return ";".join(f"{lab(k)}:{','.join(map(str, v))}" for k, v in self.items)


def parse_partition_map(text: str, group) -> PartitionMap:
    """Parse ``label:p1,p2;label:p1`` against a group's irreducible labels."""
    out = {}
    text = text.strip()
    if not text:
        return PartitionMap.of({})
    for chunk in text.split(";"):
        if ":" not in chunk:
            raise ParseError(f"missing ':' in '{chunk}'")
        lab, parts = chunk.rsplit(":", 1)
        try:
            mu = partition(int(x) for x in parts.split(",") if x.strip())
        except ValueError as exc:
            raise ParseError(f"bad partition '{parts}'") from exc
        key = group.label(lab)
        if key in out:
            raise InputError(f"label '{lab}' given twice")
        out[key] = mu
    return PartitionMap.of(out)


def stable_map(arrm: PartitionMap, group, n: int) -> dict:
    """``→μ[n]``: the trivial label's partition gains a first row so the total size is ``n``."""
    triv = group.trivial_label()
    out = arrm.as_dict()
    out[triv] = stable_partition(out.get(triv, ()), n - arrm.size + sum(out.get(triv, ())))
    return {k: v for k, v in out.items() if v}


# -- wreath characters


def wreath_character_cycles(group, mapping: dict, cycles) -> int:
    """χ^{mapping} at an element of G≀S_n given by its cycles ``[(length, cycle product)]``.

    Sums over assignments of σ-cycles to the irreducibles in the support
    with the prescribed block sizes, of per-block S-characters times the
    irreducible evaluated on the cycle products.
    """
    labels = list(mapping)
    sizes = [sum(mapping[k]) for k in labels]
    if sum(sizes) != sum(c[0] for c in cycles):
        raise InputError("partition map size does not match the element size")
    total = 0

    def rec(i, used, assigned):
        nonlocal total
        if i == len(cycles):
            if used != sizes:
                return
            val = 1
            for t, lab in enumerate(labels):
                cyc = [cycles[c] for c in assigned[t]]
                val *= mn_character(mapping[lab], [c[0] for c in cyc])
                for _, g in cyc:
                    val *= group.value(lab, g)
                if not val:
                    return
            total += val
            return
        ln = cycles[i][0]
        for t in range(len(labels)):
            if used[t] + ln <= sizes[t]:
                used[t] += ln
                assigned[t].append(i)
                rec(i + 1, used, assigned)
                assigned[t].pop()
                used[t] -= ln

    rec(0, [0] * len(labels), [[] for _ in labels])
    return total


def wreath_cycles(group, element):
    """``[(length, product)]`` for ``(v, σ)``: products ``v_i v_{σ(i)} ...`` along each cycle."""
    v, sigma = element
    n = len(sigma)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        g = group.identity
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            g = group.mul(g, v[j])
            j = sigma[j]
            ln += 1
        out.append((ln, g))
    return out


def wreath_character_eval(group, arrm, element) -> int:
    """χ^{→μ[N]} at ``element = (v, σ)`` of G≀S_N with N = len(σ)."""
    if isinstance(group, CmSpec):
        raise UnsupportedGroupError("C_m for m ≥ 3 has no integer character table")
    n = len(element[1])
    mapping = stable_map(arrm, group, n) if isinstance(arrm, PartitionMap) else dict(arrm)
    return wreath_character_cycles(group, mapping, wreath_cycles(group, element))


def wreath_dim_value(group, arrm: PartitionMap, n: int) -> int:
    mapping = stable_map(arrm, group, n)
    out = factorial(n)
    for lab, mu in mapping.items():
        k = sum(mu)
        out = out // factorial(k) * character_dimension(mu) * group.dim(lab) ** k
    return out


def wreath_dim_threshold(group, arrm: PartitionMap) -> int:
    triv = arrm.get(group.trivial_label())
    return arrm.size + (triv[0] if triv else 0)


def wreath_dim_poly(group, arrm: PartitionMap) -> RatFun:
    """dim χ^{→μ[N]} as a polynomial in N of degree |→μ|."""
    if isinstance(group, CmSpec):
        raise UnsupportedGroupError("C_m for m ≥ 3 has no integer character table")
    n0 = max(wreath_dim_threshold(group, arrm), 1)
    pts = [(n, wreath_dim_value(group, arrm, n)) for n in range(n0, n0 + arrm.size + 1)]
    return RatFun.interpolate(pts, threshold=n0)


# -- η-expectations


def cycle_walks(w, shape):
    """Oriented closed walks, one per σ-cycle, in the domain of ``gamma_power(w, shape)``.

    Each walk is ``(length, steps)`` with steps ``(vertex, letter, sign)``.
    """
    from .graphs import permutation_of_shape
    from .words import cyclic_reduce

    if isinstance(shape, tuple) and len(shape) == 2 and shape[0] == "perm":
        perm = tuple(shape[1])
    else:
        perm = permutation_of_shape(tuple(shape))
    core, _ = cyclic_reduce(w)
    xs = core.letters
    L = len(xs)
    seen = [False] * len(perm)
    walks = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        steps = []
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            for p, a in enumerate(xs):
                steps.append((j * L + p, abs(a) - 1, 1 if a > 0 else -1))
            j = perm[j]
            ln += 1
        walks.append((ln, steps))
    return walks


def winding_numbers(eta, walks):
    """Signed number of traversals of each geometric codomain edge by the image walks."""
    from .algebraic import _geometric

    c = eta.codomain
    out = Counter()
    for _, steps in walks:
        for v, x, s in steps:
            out[_geometric(c, eta.vmap[v], x, s)] += s
    return out


def _labeling_data(delta):
    from .algebraic import spanning_tree_paths

    free_edges = []
    for comp in delta.components:
        _, tree = spanning_tree_paths(delta, comp)
        for v in comp:
            for x in range(delta.rank):
                if delta.out[x][v] >= 0 and (v, x) not in tree:
                    free_edges.append((v, x))
    return free_edges


def _walk_products(group, eta, walks, free_edges, assignment):
    from .algebraic import _geometric

    lab = dict(zip(free_edges, assignment))
    c = eta.codomain
    out = []
    for ln, steps in walks:
        g = group.identity
        for v, x, s in steps:
            e = _geometric(c, eta.vmap[v], x, s)
            if e in lab:
                h = lab[e]
                g = group.mul(g, h if s > 0 else group.inv(h))
        out.append((ln, g))
    return out


def _check_labeling_guard(size, count):
    limit = CONFIG.labeling_limit
    if size ** count > limit:
        raise ResourceError(f"{size}^{count} labelings exceed the guard {limit}", bound=limit)


def _cyclotomic(m: int):
    """The m-th cyclotomic polynomial, little-endian integer coefficients."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q = _cyclotomic(d)
            poly = _exact_div(poly, q)
    return tuple(poly)


def _exact_div(p, q):
    p = list(p)
    out = [0] * (len(p) - len(q) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(q) - 1] // q[-1]
        out[i] = c
        for j, b in enumerate(q):
            p[i + j] -= c * b
    if any(p):
        raise InvariantViolation("inexact cyclotomic division")
    return out


def cyclotomic_average(counts: Counter, m: int) -> Fraction:
    """Exact mean of ζ_m^r weighted by ``counts[r]``; must be rational."""
    total = sum(counts.values())
    poly = [0] * m
    for r, c in counts.items():
        poly[r % m] += c
    phi = _cyclotomic(m)
    for i in range(len(poly) - 1, len(phi) - 2, -1):
        c = poly[i]
        if c:
            for j, b in enumerate(phi):
                poly[i - len(phi) + 1 + j] -= c * b
    if any(poly[1:len(phi) - 1]):
        raise InvariantViolation("a cyclic-character expectation is not rational")
    return Fraction(poly[0], total)


def _cyclic_group(m):
    return FiniteGroupTable(f"C{m}", list(range(m)), lambda a, b: (a + b) % m, lambda a: (-a) % m,
                            {g: g for g in range(m)}, [1] * m, {}, {})


def e_eta_expectation(group, eta, payload, walks, generic=False) -> Fraction:
    """Expectation over a Haar-random G-labeling of ``codom(eta)``.

    ``payload`` is a single irreducible label (the η-expectation of φ: the
    product of φ over the images of the domain cycles) or a ``PartitionMap``
    (the η-expectation of χ^{→μ} on the induced element of G≀S_d).  For a
    ``CmSpec`` the winding-number criterion is used unless ``generic`` asks
    for the enumeration of labelings.
    """
    if isinstance(group, CmSpec):
        if isinstance(payload, PartitionMap):
            raise UnsupportedGroupError("partition maps over C_m need an integer table")
        j = group.j if payload in (None, "phi", "std") else int(payload)
        if not generic:
            wind = winding_numbers(eta, walks)
            if group.m == 0:
                return Fraction(int(all(j * n == 0 for n in wind.values())))
            return Fraction(int(all((j * n) % group.m == 0 for n in wind.values())))
        if group.m == 0:
            raise UnsupportedGroupError("the circle group has no finite labeling enumeration")
        cyc = _cyclic_group(group.m)
        free_edges = _labeling_data(eta.codomain)
        _check_labeling_guard(group.m, len(free_edges))
        counts = Counter()
        for assignment in product(range(group.m), repeat=len(free_edges)):
            prods = _walk_products(cyc, eta, walks, free_edges, assignment)
            counts[(j * sum(g for _, g in prods)) % group.m] += 1
        return cyclotomic_average(counts, group.m)
    free_edges = _labeling_data(eta.codomain)
    _check_labeling_guard(group.order, len(free_edges))
    if isinstance(payload, PartitionMap):
        d = sum(ln for ln, _ in walks)
        if payload.size != d:
            raise InputError(f"partition map of size {payload.size} on a degree-{d} diagram")
        mapping = payload.as_dict()
    else:
        label = group.label(payload)
    seen = Counter()
    for assignment in product(group.elements, repeat=len(free_edges)):
        prods = _walk_products(group, eta, walks, free_edges, assignment)
        seen[tuple(sorted((ln, group.class_of[g]) for ln, g in prods))] += 1
    reps = {}
    for g in group.elements:
        reps.setdefault(group.class_of[g], g)
    total = Fraction(0)
    for key, c in seen.items():
        cycles = [(ln, reps[k]) for ln, k in key]
        if isinstance(payload, PartitionMap):
            val = wreath_character_cycles(group, mapping, cycles)
        else:
            val = 1
            for _, g in cycles:
                val *= group.value(label, g)
        total += c * val
    return total / group.order ** len(free_edges)

