"""Exact rational functions of N whose denominators are products of (N - j).

Every quantity built from falling factorials lives in this ring, so the
denominator is stored factored as ``c * prod (N - j)^e`` with ``c > 0``;
reduction only needs root tests at the integers ``j``.  Each value carries a
threshold ``N0`` from which it is claimed to agree with the quantity it
represents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

Poly = tuple  # little-endian integer coefficients


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def pscale(p, c):
    return _trim(c * a for a in p) if c else ()


def pmul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def peval(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _div_linear(p, j):
    """Quotient of ``p`` by ``(N - j)``; assumes exact division."""
    n = len(p) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = acc * j + p[i]
        q[i - 1] = acc
    return _trim(q)


def _linear_power(j, e):
    p = (1,)
    for _ in range(e):
        p = pmul(p, (-j, 1))
    return p


def falling(k):
    """(N)_k as a polynomial."""
    p = (1,)
    for i in range(k):
        p = pmul(p, (-i, 1))
    return p


class RatFun:
    __slots__ = ("num", "den", "const", "threshold")

    def __init__(self, num=(), den=None, const=1, threshold=0, _normalized=False):
        self.num = _trim(num)
        self.den = dict(den or {})
        self.const = const
        self.threshold = threshold
        if not _normalized:
            self._normalize()

    def _normalize(self):
        if self.const < 0:
            self.const = -self.const
            self.num = pscale(self.num, -1)
        if not self.num:
            self.den = {}
            self.const = 1
            return
        for j in sorted(self.den):
            e = self.den[j]
            while e and peval(self.num, j) == 0:
                self.num = _div_linear(self.num, j)
                e -= 1
            if e:
                self.den[j] = e
            else:
                del self.den[j]
        g = self.const
        for a in self.num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            self.num = tuple(a // g for a in self.num)
            self.const //= g

    # construction
    @classmethod
    def const_(cls, c, threshold=0):
        c = Fraction(c)
        return cls((c.numerator,), {}, c.denominator, threshold)

    @classmethod
    def zero(cls):
        return cls((), {}, 1, 0)

    @classmethod
    def one(cls):
        return cls((1,), {}, 1, 0)

    @classmethod
    def power(cls, k: int):
        """N^k for any integer k."""
        if k >= 0:
            return cls((0,) * k + (1,), {}, 1, 0)
        return cls((1,), {0: -k}, 1, 1)

    @classmethod
    def falling_ratio(cls, num_ks, den_ks):
        """prod (N)_a / prod (N)_b for the given lists of sizes."""
        num = (1,)
        for k in num_ks:
            num = pmul(num, falling(k))
        den = {}
        for k in den_ks:
            for i in range(k):
                den[i] = den.get(i, 0) + 1
        thr = max(list(num_ks) + list(den_ks) + [0])
        return cls(num, den, 1, thr)

    @classmethod
    def interpolate(cls, points, threshold=0):
        """The polynomial through ``[(n, value)]``, exactly."""
        coeffs = [Fraction(0)] * len(points)
        for i, (xi, yi) in enumerate(points):
            basis = [Fraction(1)]
            denom = 1
            for j, (xj, _) in enumerate(points):
                if j != i:
                    basis = [(basis[k - 1] if k else 0) - xj * (basis[k] if k < len(basis) else 0)
                             for k in range(len(basis) + 1)]
                    denom *= xi - xj
            for k, c in enumerate(basis):
                coeffs[k] += Fraction(yi) * c / denom
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        return cls(tuple(int(c * lcm) for c in coeffs), {}, lcm, threshold)

    # arithmetic
    def _aligned(self, other):
        den = dict(self.den)
        for j, e in other.den.items():
            den[j] = max(den.get(j, 0), e)
        lc = self.const * other.const // gcd(self.const, other.const)
        a = self.num
        for j, e in den.items():
            extra = e - self.den.get(j, 0)
            if extra:
                a = pmul(a, _linear_power(j, extra))
        b = other.num
        for j, e in den.items():
            extra = e - other.den.get(j, 0)
            if extra:
                b = pmul(b, _linear_power(j, extra))
        return pscale(a, lc // self.const), pscale(b, lc // other.const), den, lc

    def __add__(self, other):
        other = _coerce(other)
        if not self.num:
            return RatFun(other.num, other.den, other.const, max(self.threshold, other.threshold), True)
        if not other.num:
            return RatFun(self.num, self.den, self.const, max(self.threshold, other.threshold), True)
        a, b, den, c = self._aligned(other)
        return RatFun(padd(a, b), den, c, max(self.threshold, other.threshold))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(pscale(self.num, -1), self.den, self.const, self.threshold, True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return RatFun(pscale(self.num, other.numerator), self.den, self.const * other.denominator,
                          self.threshold)
        other = _coerce(other)
        den = dict(self.den)
        for j, e in other.den.items():
            den[j] = den.get(j, 0) + e
        return RatFun(pmul(self.num, other.num), den, self.const * other.const,
                      max(self.threshold, other.threshold))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                raise ZeroDivisionError("division of a rational function by zero")
            return self * (1 / other)
        raise TypeError("only division by constants is supported")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const_(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.const == other.const

    def __hash__(self):
        return hash((self.num, tuple(sorted(self.den.items())), self.const))

    def with_threshold(self, n0):
        return RatFun(self.num, self.den, self.const, n0, True)

    # queries
    def is_zero(self):
        return not self.num

    def den_degree(self):
        return sum(self.den.values())

    def degree(self):
        """deg(num) - deg(den); ``None`` for the zero function."""
        if not self.num:
            return None
        return len(self.num) - 1 - self.den_degree()

    def leading_coefficient(self):
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[-1], self.const)

    def den_poly(self):
        p = (self.const,)
        for j in sorted(self.den):
            p = pmul(p, _linear_power(j, self.den[j]))
        return p

    def __call__(self, n):
        d = peval(self.den_poly(), n)
        if d == 0:
            raise ZeroDivisionError(f"pole at N={n}")
        return Fraction(peval(self.num, n), d)

    def to_dict(self):
        return {"num": [str(a) for a in self.num] or ["0"],
                "den": [str(a) for a in self.den_poly()],
                "valid_from": self.threshold}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        return f"RatFun({self.num}/{self.den_poly()}, N>={self.threshold})"

    def pretty(self):
        def fmt(p):
            terms = []
            for i, a in reversed(list(enumerate(p))):
                if a:
                    terms.append(f"{a}" + ("" if i == 0 else ("*N" if i == 1 else f"*N^{i}")))
            return " + ".join(terms) or "0"
        if not self.den and self.const == 1:
            return fmt(self.num)
        return f"({fmt(self.num)}) / ({fmt(self.den_poly())})"


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    return RatFun.const_(x)


def rsum(items):
    acc = RatFun.zero()
    for x in items:
        acc = acc + x
    return acc
