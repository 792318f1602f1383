"""Truncated trigraded series with symmetric-function coefficients.

A :class:`TruncSeries` is a finite sum of terms c * u^a w^b p_mu with a an
integer (Laurent in u), 0 <= b <= w_max and |mu| <= p_max.  Every operation
truncates to the caps as it goes: terms with a > u_max, b > w_max or
|mu| > p_max are dropped immediately.  This is sound because none of the
three gradings can decrease under multiplication, except the u-grading when
negative exponents are present, which the caller handles by choosing u_max
with enough headroom (see :mod:`gkcoh.euler15`).

Coefficients are exact rationals (gmpy2 ``mpq`` internally, Fraction at the
API boundary).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from gmpy2 import mpq
from sympy import factorint

from .symkit import Partition, SymFunc


@lru_cache(maxsize=None)
def bernoulli(r: int) -> Fraction:
    """B_r with B_1 = -1/2, from sum_{k<=m} binom(m+1, k) B_k = 0."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return Fraction(1)
    if r > 1 and r % 2:
        return Fraction(0)
    s = sum(comb(r + 1, k) * bernoulli(k) for k in range(r))
    return -s / (r + 1)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs a positive integer")
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class Caps:
    """Truncation caps. u_min is informational; series may go below it."""

    u_max: int
    p_max: int
    w_max: int = 14
    u_min: int | None = None


@lru_cache(maxsize=None)
def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _as_mpq(c):
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    return mpq(c)


class TruncSeries:
    """Sum of c * u^a w^b p_mu, stored as {a: {(b, mu): c}} with mu a tuple."""

    __slots__ = ("caps", "data")

    def __init__(self, caps: Caps, data=None):
        self.caps = caps
        self.data: dict[int, dict] = {}
        if data:
            for (a, b, mu), c in data.items():
                self._add_term(a, b, tuple(mu), _as_mpq(c))

    # construction helpers

    @classmethod
    def zero(cls, caps):
        return cls(caps)

    @classmethod
    def one(cls, caps):
        return cls.monomial(caps, 1)

    @classmethod
    def monomial(cls, caps, c=1, u=0, w=0, mu=()):
        s = cls(caps)
        s._add_term(u, w, tuple(as_tuple(mu)), _as_mpq(c))
        return s

    @classmethod
    def u_poly(cls, caps, coeffs: dict):
        """A Laurent polynomial in u from {exponent: coefficient}."""
        s = cls(caps)
        for a, c in coeffs.items():
            s._add_term(a, 0, (), _as_mpq(c))
        return s

    @classmethod
    def from_symfunc(cls, caps, f: SymFunc, u=0, w=0):
        s = cls(caps)
        for mu, c in f.terms.items():
            s._add_term(u, w, tuple(mu), _as_mpq(c))
        return s

    def _in_caps(self, a, b, mu):
        return a <= self.caps.u_max and b <= self.caps.w_max and sum(mu) <= self.caps.p_max

    def _add_term(self, a, b, mu, c):
        if not c or not self._in_caps(a, b, mu):
            return
        row = self.data.setdefault(a, {})
        key = (b, mu)
        v = row.get(key, 0) + c
        if v:
            row[key] = v
        else:
            del row[key]
            if not row:
                del self.data[a]

    def copy(self):
        s = TruncSeries(self.caps)
        s.data = {a: dict(row) for a, row in self.data.items()}
        return s

    # inspection

    def items(self):
        """Terms as ((u, w, mu), Fraction) in canonical order."""
        for a in sorted(self.data):
            row = self.data[a]
            for b, mu in sorted(row, key=lambda k: (k[0], sum(k[1]), k[1])):
                c = row[(b, mu)]
                yield (a, b, Partition(mu)), Fraction(int(c.numerator), int(c.denominator))

    def coeff(self, u=0, w=0, mu=()) -> Fraction:
        c = self.data.get(u, {}).get((w, tuple(as_tuple(mu))), 0)
        return Fraction(int(mpq(c).numerator), int(mpq(c).denominator))

    def u_valuation(self):
        return min(self.data) if self.data else None

    def __len__(self):
        return sum(len(r) for r in self.data.values())

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.data == other.data

    def dump(self) -> str:
        """One line per term, ``u^a w^b p_{mu} : c``."""
        lines = [f"u^{a} w^{b} p_{{{mu}}} : {c}" for (a, b, mu), c in self.items()]
        return "\n".join(lines)

    __str__ = dump

    # arithmetic

    def _check(self, other):
        if self.caps != other.caps:
            raise ValueError(f"cap mismatch: {self.caps} vs {other.caps}")

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        out = self.copy()
        for a, row in other.data.items():
            for (b, mu), c in row.items():
                out._add_term(a, b, mu, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_mpq(c)
        out = TruncSeries(self.caps)
        if c:
            out.data = {a: {k: v * c for k, v in row.items()} for a, row in self.data.items()}
        return out

    def _lift(self, x):
        if isinstance(x, TruncSeries):
            return x
        return TruncSeries.monomial(self.caps, x)

    def shift_u(self, k: int):
        out = TruncSeries(self.caps)
        for a, row in self.data.items():
            for (b, mu), c in row.items():
                out._add_term(a + k, b, mu, c)
        return out

    def constant_term(self):
        return self.data.get(0, {}).get((0, ()), 0)


def as_tuple(mu):
    if isinstance(mu, str):
        return tuple(Partition.parse(mu))
    return tuple(sorted(mu, reverse=True))


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Truncated product."""
    a._check(b)
    caps = a.caps
    out = TruncSeries(caps)
    umax, wmax, pmax = caps.u_max, caps.w_max, caps.p_max
    # pre-bucket the right factor so the inner loop is short
    brows = {}
    for ub, row in b.data.items():
        brows[ub] = [(wb, mb, sum(mb), cb) for (wb, mb), cb in row.items()]
    for ua, rowa in a.data.items():
        for ub, rowb in brows.items():
            u = ua + ub
            if u > umax:
                continue
            acc = out.data.get(u)
            if acc is None:
                acc = {}
            for (wa, ma), ca in rowa.items():
                wleft = wmax - wa
                pleft = pmax - sum(ma)
                if wleft < 0 or pleft < 0:
                    continue
                for wb, mb, db, cb in rowb:
                    if wb > wleft or db > pleft:
                        continue
                    key = (wa + wb, _mono_mul(ma, mb))
                    acc[key] = acc.get(key, 0) + ca * cb
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                out.data[u] = acc
            else:
                out.data.pop(u, None)
    return out


def _nilpotent_part(a: TruncSeries, want_constant):
    x = a.copy()
    c0 = x.constant_term()
    if c0 != want_constant:
        raise ValueError(f"constant term must be {want_constant}, got {c0}")
    if c0:
        x._add_term(0, 0, (), -c0)
    if x.data and min(x.data) < 0:
        raise ValueError("series with negative u-exponents is not nilpotent under caps")
    return x


def _power_sum(x: TruncSeries, coef) -> TruncSeries:
    """sum_{k>=1} coef(k) x^k, stopping when x^k truncates to zero."""
    out = TruncSeries(x.caps)
    power = x
    k = 1
    while power:
        out = out + power.scale(coef(k))
        power = series_mul(power, x)
        k += 1
    return out


def series_log(a: TruncSeries) -> TruncSeries:
    """log(a) for a with constant term 1."""
    x = _nilpotent_part(a, 1)
    return _power_sum(x, lambda k: Fraction((-1) ** (k + 1), k))


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp(a) for a without constant term."""
    x = _nilpotent_part(a, 0)
    fact = [1]

    def coef(k):
        while len(fact) <= k:
            fact.append(fact[-1] * len(fact))
        return Fraction(1, fact[k])

    return TruncSeries.one(a.caps) + _power_sum(x, coef)


def truncate_T14(a: TruncSeries) -> TruncSeries:
    """Drop w-degrees above w_max (already enforced) and set w = 1."""
    out = TruncSeries(a.caps)
    for u, row in a.data.items():
        for (b, mu), c in row.items():
            out._add_term(u, 0, mu, c)
    return out
