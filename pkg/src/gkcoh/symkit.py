"""Partitions, Specht module dimensions, symmetric group characters and
symmetric functions in the power-sum and Schur bases.

Partitions are plain tuples of weakly decreasing positive integers wrapped
in :class:`Partition`. Symmetric functions are kept in the power-sum basis
(:class:`SymFunc`) and converted to Schur coefficients through the character
table, computed by the Murnaghan-Nakayama rule.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"2,1,1,1"`` or the exponent form ``"2,1^3"``; ``""`` is the empty partition."""
        text = text.strip()
        if not text:
            return cls(())
        parts = []
        for t in text.split(","):
            part, _, mult = t.partition("^")
            parts += [int(part)] * (int(mult) if mult else 1)
        return cls(sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


def as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return Partition.parse(p)
    return Partition(sorted(p, reverse=True))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order, (n) first and (1^n) last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


def hook_lengths(lam) -> list[int]:
    lam = as_partition(lam)
    conj = lam.conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def specht_dim(lam) -> int:
    """Dimension of V_lambda: n! over the product of hook lengths."""
    lam = as_partition(lam)
    return factorial(lam.size) // prod(hook_lengths(lam))


def class_size(mu) -> int:
    """Number of permutations of cycle type mu."""
    mu = as_partition(mu)
    return factorial(mu.size) // z_mu(mu)


def z_mu(mu) -> int:
    """Order of the centralizer of a permutation of cycle type mu."""
    mu = as_partition(mu)
    return prod(k**m * factorial(m) for k, m in Counter(mu).items())


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple) -> int:
    # beta is the set of first-column hook lengths (beta numbers) of lambda
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beta:
            continue
        height = sum(1 for x in beta if c < x < b)
        total += (-1) ** height * _mn((beta - {b}) | {c}, rest)
    return total


def character_value(lam, mu) -> int:
    """The character of V_lambda at a permutation of cycle type mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    k = len(lam)
    beta = frozenset(lam[i] + k - 1 - i for i in range(k))
    return _mn(beta, tuple(mu))


class SymFunc:
    """A finite rational combination of power-sum monomials p_mu.

    Coefficients live in ``terms``, a dict from Partition to Fraction, with no
    stored zeros. Mixed degrees are allowed; :meth:`degree` only makes sense
    for homogeneous elements.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mu, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                mu = as_partition(mu)
                clean[mu] = clean.get(mu, 0) + c
        self.terms = {mu: c for mu, c in clean.items() if c}

    @classmethod
    def p(cls, *mu) -> "SymFunc":
        """The power-sum monomial p_mu, e.g. ``SymFunc.p(2, 1)``."""
        return cls({as_partition(mu): 1})

    @classmethod
    def constant(cls, c) -> "SymFunc":
        return cls({Partition(()): c})

    def degrees(self) -> set[int]:
        return {mu.size for mu in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("symmetric function is not homogeneous")
        return ds.pop() if ds else 0

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out.get(mu, 0) + c
        return SymFunc(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        return symfunc_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu in sorted(self.terms, key=lambda m: (m.size, m)):
            parts.append(f"{self.terms[mu]}*p_{{{mu}}}")
        return " + ".join(parts)


def _coerce(x) -> SymFunc:
    if isinstance(x, SymFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return SymFunc.constant(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a symmetric function")


def _merge(a: tuple, b: tuple) -> Partition:
    return Partition(sorted(a + b, reverse=True))


def symfunc_mul(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product of power-sum expansions; p_a * p_b = p_(a union b)."""
    out: dict = {}
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            mu = _merge(a, b)
            out[mu] = out.get(mu, 0) + x * y
    return SymFunc(out)


def powersum_to_schur(f: SymFunc) -> dict[Partition, Fraction]:
    """Schur coefficients of a homogeneous f.

    Uses p_mu = sum_lambda chi^lambda(mu) s_lambda.
    """
    n = f.degree()
    out = {}
    for lam in enumerate_partitions(n):
        c = sum((x * character_value(lam, mu) for mu, x in f.terms.items()), Fraction(0))
        if c:
            out[lam] = c
    return out


def schur_to_powersum(coeffs) -> SymFunc:
    """Inverse of :func:`powersum_to_schur`: s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu."""
    out: dict = {}
    for lam, c in coeffs.items():
        lam = as_partition(lam)
        for mu in enumerate_partitions(lam.size):
            chi = character_value(lam, mu)
            if chi:
                out[mu] = out.get(mu, 0) + Fraction(c) * chi / z_mu(mu)
    return SymFunc(out)


def schur_text(coeffs) -> str:
    """Render a Schur expansion as in ``-4s_{2,1} - 2s_{3}``; ``0`` if empty.

    Terms appear in increasing lexicographic order of the partitions.
    """
    items = sorted(((as_partition(l), c) for l, c in coeffs.items() if c), key=lambda t: tuple(t[0]))
    if not items:
        return "0"
    out = []
    for i, (lam, c) in enumerate(items):
        mag = abs(c)
        if isinstance(mag, Fraction) and mag.denominator == 1:
            mag = mag.numerator
        body = ("" if mag == 1 else str(mag)) + "s_{" + str(lam) + "}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"([+-]?)\s*(\d*(?:/\d+)?)\s*s_\{([\d,]*)\}")


def parse_schur_text(text: str) -> dict[Partition, Fraction]:
    """Inverse of :func:`schur_text`."""
    text = text.strip()
    if text in ("", "0"):
        return {}
    out: dict = {}
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse Schur expansion: {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        lam = Partition.parse(m.group(3))
        out[lam] = out.get(lam, 0) + sign * c
    if text[pos:].strip():
        raise ValueError(f"cannot parse Schur expansion: {text!r}")
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _kostka(lam: tuple, mu: tuple) -> int:
    # peel a horizontal strip of size mu[-1] off lam
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[-1], mu[:-1]
    total = 0

    def strips(i, left, cur):
        nonlocal total
        if i == len(lam):
            if left == 0:
                shape = tuple(p for p in cur if p)
                total += _kostka(shape, rest)
            return
        lower = lam[i + 1] if i + 1 < len(lam) else 0
        for take in range(0, min(left, lam[i] - lower) + 1):
            strips(i + 1, left - take, cur + (lam[i] - take,))

    strips(0, k, ())
    return total


def kostka(lam, mu) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.size != mu.size:
        return 0
    return _kostka(tuple(lam), tuple(mu))
