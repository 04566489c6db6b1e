"""Stable Fourier coefficients of w-random elements of S_N and G≀S_N, β, and sπ-type searches.

Everything is organised around the decomposition lattice of
``η_{w^ν}: Γ_{w^ν} -> Ω`` for a cycle type ``ν``.  A triple
``(η1, η2, η3)`` of algebraic morphisms is a chain ``P1 ≤ K`` of algebraic
partitions; ``η1`` is efficient when ``P1`` separates every covering fiber,
and ``cod(η2) = Γ/K``.  Sums of ``C^alg(P1, K)`` with weights on ``P1`` and a
condition on ``K`` are evaluated by :meth:`MobiusSystem.weighted_sum`.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .characters import (CmSpec, PartitionMap, class_data, cycle_walks, e_eta_expectation,
                         mn_character, partition, partitions, trivial_group)
from .errors import DomainError, InputError, ResourceError
from .graphs import gamma_power
from .mobius import MobiusSystem
from .ratfun import RatFun
from .words import Word, is_proper_power

NON_POWER = "non_power_no_cycles"
PROPER_POWER = "proper_power_proper_algebraic"


class PowerSystem:
    """The lattice data of ``η_{w^ν}`` shared by every formula at this cycle type."""

    def __init__(self, w: Word, nu):
        self.w = w
        self.nu = tuple(nu)
        self.graph, self.eta, self.cover = gamma_power(w, self.nu)
        fibers = self.cover.vertex_fibers if self.cover else None
        self.mobius = MobiusSystem(self.eta, fibers=fibers)
        self.walks = cycle_walks(w, self.nu) if self.cover else []
        self._at = {}

    def at(self, n):
        """A view whose lift counts are exact values at ``N = n`` (``None``: rational functions)."""
        if n is None:
            return self.mobius
        if n not in self._at:
            self.mobius.algebraic
            view = copy.copy(self.mobius)
            view.at = n
            view.zero = Fraction(0)
            view._phi = {}
            self._at[n] = view
        return self._at[n]

    def efficient_algebraic(self):
        m = self.mobius
        return [p for p in m.algebraic if m.is_efficient_partition(p)]

    def targets(self, variant):
        m = self.mobius
        if variant == PROPER_POWER:
            return [k for k in m.algebraic if m.is_proper_partition(k)]
        return [k for k in m.algebraic if not m.lattice.graph(k).has_cycle_component()]

    def quotient(self, p):
        return self.mobius.lattice.quotient_map(p)


_SYSTEMS: dict = {}


def power_system(w: Word, nu) -> PowerSystem:
    key = (w.letters, w.rank, tuple(nu))
    if key not in _SYSTEMS:
        _SYSTEMS[key] = PowerSystem(w, nu)
    return _SYSTEMS[key]


def variant_for(w: Word) -> str:
    return PROPER_POWER if is_proper_power(w) else NON_POWER


def f_w(w: Word, nu, variant=None, at=None):
    """Sum of C^alg over algebraic triples with efficient first part and admissible target."""
    variant = variant or variant_for(w)
    if not nu:
        return RatFun.one() if at is None else Fraction(1)
    ps = power_system(w, nu)
    m = ps.at(at)
    return m.weighted_sum({p: 1 for p in ps.efficient_algebraic()}, {k: 1 for k in ps.targets(variant)})


@dataclass
class StableCoefficient:
    ratfun: RatFun
    character_label: object
    word: Word
    variant_used: str
    valid_from: int
    evaluator: object = field(default=None, repr=False, compare=False)

    def value(self, n: int) -> Fraction:
        """Exact value at ``N = n``: from the rational function where it is known to hold,
        otherwise by evaluating every lift count at ``n`` term by term."""
        if n < self.valid_from:
            raise DomainError(f"the formula is claimed only for N ≥ {self.valid_from}")
        if n >= self.ratfun.threshold:
            return self.ratfun(n)
        return self.evaluator(n)

    def to_dict(self):
        return {"ratfun": self.ratfun.to_dict(), "valid_from": self.valid_from,
                "variant": self.variant_used, "word": str(self.word)}


def _check_word(w: Word):
    if w.is_identity():
        raise DomainError("the word must be nontrivial")


def _sn_sum(w, mu, variant, at):
    d = sum(mu)
    acc = RatFun.zero() if at is None else Fraction(0)
    for nu, size in class_data(d):
        c = mn_character(mu, nu)
        if c:
            acc = acc + f_w(w, nu, variant, at) * (size * c)
    return acc / factorial(d)


def stable_coefficient_sn(w: Word, mu) -> StableCoefficient:
    """E_w[χ^{μ[N]}] as an exact rational function of N."""
    _check_word(w)
    mu = partition(mu)
    variant = variant_for(w)
    d = sum(mu)
    n0 = d + (mu[0] if mu else 0)
    r = _sn_sum(w, mu, variant, None)
    r = r.with_threshold(max(r.threshold, n0))
    return StableCoefficient(r, mu, w, variant, n0, lambda n: _sn_sum(w, mu, variant, n))


# -- induction


def _eta_expectation(group, ps: PowerSystem, p, chi):
    if isinstance(group, CmSpec):
        raise InputError("induction needs a finite group with an integer table")
    if group.order == 1 and isinstance(chi, PartitionMap):
        mu = chi.get(group.trivial_label())
        return Fraction(mn_character(mu, ps.nu))
    return e_eta_expectation(group, ps.quotient(p), chi, ps.walks)


def _character_size(group, chi):
    if isinstance(chi, PartitionMap):
        return chi.size
    raise InputError("characters are given as partition maps")


def induction_coefficient(group, w: Word, chi, path="algebraic", at=None):
    """E_w[Ind_{G_d × G_{N-d}}^{G_N}(χ ⊠ triv)] for a character χ of G≀S_d.

    ``path="algebraic"`` sums E_b[χ]·L^alg over algebraic first parts,
    ``path="surjective"`` sums E_b[χ]·L↠ over all surjective first parts;
    in both the first part is efficient.
    """
    _check_word(w)
    group = group or trivial_group()
    d = _character_size(group, chi)
    if d == 0:
        return RatFun.one() if at is None else Fraction(1)
    acc = RatFun.zero() if at is None else Fraction(0)
    for nu, size in class_data(d):
        ps = power_system(w, nu)
        m = ps.at(at)
        if path == "algebraic":
            firsts = ps.efficient_algebraic()
            term = lambda p: m.L_alg(p)  # noqa: E731
        elif path == "surjective":
            firsts = [p for p in m.lattice.elements if m.is_efficient_partition(p)]
            term = lambda p: m.L_surj(p)  # noqa: E731
        else:
            raise InputError(f"unknown path '{path}'")
        for p in firsts:
            e = _eta_expectation(group, ps, p, chi)
            if e:
                acc = acc + term(p) * (e * size)
    return acc / factorial(d)


# -- wreath products


def _wreath_sum(group, w, arrm, variant, at):
    d = arrm.size
    acc = RatFun.zero() if at is None else Fraction(0)
    for nu, size in class_data(d):
        ps = power_system(w, nu)
        left = {}
        for p in ps.efficient_algebraic():
            e = _eta_expectation(group, ps, p, arrm)
            if e:
                left[p] = e * size
        if left:
            acc = acc + ps.at(at).weighted_sum(left, {k: 1 for k in ps.targets(variant)})
    return acc / factorial(d)


def stable_coefficient_wreath(group, w: Word, arrm: PartitionMap) -> StableCoefficient:
    """E_w[χ^{→μ[N]}] for G≀S_N as an exact rational function of N."""
    _check_word(w)
    if isinstance(group, CmSpec):
        raise InputError("wreath coefficients need a finite group with an integer table")
    variant = variant_for(w)
    triv = arrm.get(group.trivial_label())
    n0 = arrm.size + (triv[0] if triv else 0)
    if arrm.size == 0:
        return StableCoefficient(RatFun.one(), arrm, w, variant, 0, lambda n: Fraction(1))
    r = _wreath_sum(group, w, arrm, variant, None)
    r = r.with_threshold(max(r.threshold, n0))
    return StableCoefficient(r, arrm, w, variant, n0, lambda n: _wreath_sum(group, w, arrm, variant, n))


# -- β


def label_size(label) -> int:
    if isinstance(label, PartitionMap):
        return label.size
    return sum(label)


def beta(coeff: StableCoefficient):
    """β = -deg / |label|; the zero function gives infinity."""
    if coeff.word.is_identity():
        return -1
    if coeff.ratfun.is_zero():
        return float("inf")
    size = label_size(coeff.character_label)
    if size == 0:
        raise InputError("β needs a nonempty character label")
    return Fraction(-coeff.ratfun.degree(), size)


# -- sπ-type searches


@dataclass
class DiagramRecord:
    degree: int
    cycle_type: tuple
    b: object
    sigma_chi: int
    evidence: object

    @property
    def ratio(self):
        return Fraction(-self.sigma_chi, self.degree)


@dataclass
class SpiSearchResult:
    per_degree_minima: dict
    overall_upper_bound: object
    witnesses: list
    skipped: list = field(default_factory=list)  # (degree, cycle type) beyond the size guard


def _constraint_ok(constraint, ps: PowerSystem, b):
    if constraint is None or constraint == "none":
        return True, None
    kind = constraint[0]
    if kind == "mod":
        m = constraint[1]
        from .characters import winding_numbers

        wind = winding_numbers(b, ps.walks)
        vec = {f"{v}:{x}": n for (v, x), n in sorted(wind.items())}
        ok = all((n % m == 0) if m else n == 0 for n in wind.values())
        return ok, vec
    if kind == "phi":
        group, label = constraint[1], constraint[2]
        e = e_eta_expectation(group, b, label, ps.walks)
        return e != 0, e
    raise InputError(f"unknown constraint {constraint!r}")


def spi_search(w: Word, d_max: int, constraint=None) -> SpiSearchResult:
    """Upper bounds on the stable primitivity rank from diagrams of degree ≤ ``d_max``.

    Diagrams are efficient proper algebraic quotients of Γ_{w^ν}; the value
    ``-χ(Σ)/d`` is minimized per degree.  These are bounds, not the invariant.
    Cycle types whose graph exceeds the vertex guard are listed in ``skipped``.
    """
    _check_word(w)
    if d_max < 1:
        raise InputError("d_max must be at least 1")
    minima = {}
    witnesses = []
    skipped = []
    for d in range(1, d_max + 1):
        best = None
        for nu in partitions(d):
            try:
                ps = power_system(w, nu)
            except ResourceError:
                skipped.append((d, nu))
                continue
            m = ps.mobius
            for p in ps.efficient_algebraic():
                if not m.is_proper_partition(p):
                    continue
                b = ps.quotient(p)
                ok, ev = _constraint_ok(constraint, ps, b)
                if not ok:
                    continue
                rec = DiagramRecord(d, nu, b, b.codomain.euler_characteristic(), ev)
                if best is None or rec.ratio < best.ratio:
                    best = rec
        minima[d] = best.ratio if best else None
        if best:
            witnesses.append(best)
    found = [v for v in minima.values() if v is not None]
    overall = min(found) if found else float("inf")
    return SpiSearchResult(minima, overall, witnesses, skipped)
