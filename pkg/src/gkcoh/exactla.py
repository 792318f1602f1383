"""Sparse exact linear algebra for chain complexes.

Matrices are dictionaries {(row, col): coefficient}.  Coefficients are
rationals, or sympy expressions in named parameters for the parametric
complexes (see :func:`rank_generic`).

Ranks over Q use fraction-free elimination on integer rows, dividing each
new row by the gcd of its entries so that numbers stay small.  Modular ranks
use the same row-insertion scheme over GF(p).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy


class RankInstability(ArithmeticError):
    """Generic-rank trials disagreed."""


class DifferentialError(ArithmeticError):
    """d o d != 0."""


@dataclass
class SparseMat:
    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        bad = [k for k, v in self.entries.items() if _is_zero(v)]
        for k in bad:
            del self.entries[k]
        for (i, j) in self.entries:
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry {(i, j)} outside {self.nrows}x{self.ncols}")

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if not _is_zero(v)})

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseMat":
        return SparseMat(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def rows(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def is_parametric(self) -> bool:
        return any(isinstance(v, sympy.Basic) and v.free_symbols for v in self.entries.values())

    def dump(self) -> str:
        """Header ``rows cols nnz`` then one ``row col value`` line per entry."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"{i} {j} {self.entries[(i, j)]}")
        return "\n".join(lines)

    @classmethod
    def load(cls, text: str) -> "SparseMat":
        lines = [l for l in text.strip().splitlines() if l.strip()]
        nr, nc, nnz = map(int, lines[0].split())
        entries = {}
        for l in lines[1:]:
            i, j, v = l.split(None, 2)
            entries[(int(i), int(j))] = Fraction(v)
        if len(entries) != nnz:
            raise ValueError("nnz header does not match the entries")
        return cls(nr, nc, entries)


def _is_zero(v) -> bool:
    if isinstance(v, sympy.Basic):
        return sympy.expand(v) == 0
    return v == 0


def matmul(a: SparseMat, b: SparseMat) -> SparseMat:
    if a.ncols != b.nrows:
        raise ValueError("shape mismatch")
    brows = b.rows()
    out: dict = {}
    for (i, k), x in a.entries.items():
        for j, y in brows[k].items():
            out[(i, j)] = out.get((i, j), 0) + x * y
    if any(isinstance(v, sympy.Basic) for v in out.values()):
        out = {k: sympy.expand(v) for k, v in out.items()}
    return SparseMat(a.nrows, b.ncols, out)


# ---------------------------------------------------------------------------
# elimination


def _integer_rows(m: SparseMat) -> list[dict]:
    rows = []
    for r in m.rows():
        if not r:
            continue
        vals = {j: Fraction(v) for j, v in r.items()}
        den = math.lcm(*(v.denominator for v in vals.values()))
        row = {j: int(v * den) for j, v in vals.items()}
        rows.append(_primitive(row))
    return rows


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()} if g > 1 else row


def rank_exact(m: SparseMat) -> int:
    """Rank over Q by fraction-free sparse elimination."""
    if m.is_parametric():
        raise TypeError("rank_exact needs rational entries; use rank_generic")
    rows = _integer_rows(m)
    # Markowitz-style heuristic: sparse rows first
    rows.sort(key=len)
    pivots: dict = {}
    rank = 0
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                rank += 1
                break
            a, b = piv[c], row[c]
            new = {j: a * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
    return rank


def rank_mod_p(m: SparseMat, p: int, values: dict | None = None) -> int:
    """Rank over GF(p); parametric entries are evaluated at ``values`` mod p."""
    rows = [dict() for _ in range(m.nrows)]
    ev = _evaluator(p, values or {})
    for (i, j), v in m.entries.items():
        x = ev(v)
        if x:
            rows[i][j] = x
    rows = [r for r in rows if r]
    rows.sort(key=len)
    pivots: dict = {}
    rank = 0
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                rank += 1
                break
            f = row[c]
            for j, v in piv.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


_POLY_CACHE: dict = {}


def _evaluator(p: int, values: dict):
    names = sorted(values, key=str)
    vals = [values[k] % p for k in names]

    def ev(v):
        if isinstance(v, sympy.Basic):
            if not v.free_symbols:
                v = Fraction(str(sympy.nsimplify(v)))
            else:
                key = (v, tuple(names))
                terms = _POLY_CACHE.get(key)
                if terms is None:
                    extra = v.free_symbols - set(names)
                    if extra:
                        raise ValueError(f"no value given for parameters {sorted(map(str, extra))}")
                    poly = sympy.Poly(v, *names) if names else sympy.Poly(v)
                    terms = [(mon, Fraction(int(c.p), int(c.q))) for mon, c in poly.terms()]
                    _POLY_CACHE[key] = terms
                total = 0
                for mon, c in terms:
                    t = c.numerator * pow(c.denominator, -1, p) % p
                    for x, e in zip(vals, mon):
                        t = t * pow(x, e, p) % p
                    total += t
                return total % p
        v = Fraction(v)
        return v.numerator * pow(v.denominator, -1, p) % p

    return ev


def random_prime(bits: int = 62, rng: random.Random | None = None) -> int:
    rng = rng or random.Random()
    while True:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if sympy.isprime(c):
            return c


def rank_multimodular(m: SparseMat, nprimes: int = 3, seed: int | None = None) -> int:
    """Rank over Q, cross-checked by ranks modulo random 62-bit primes.

    The modular ranks can only fall short of the rational rank (at primes
    dividing a pivot); if any of them disagree the rational computation is
    the tie-breaker and is returned.
    """
    rng = random.Random(seed)
    ranks = {rank_mod_p(m, random_prime(62, rng)) for _ in range(nprimes)}
    exact = rank_exact(m)
    if max(ranks) > exact:
        raise ArithmeticError("modular rank exceeds rational rank")
    return exact


@dataclass
class GenericRank:
    rank: int
    trials: list  # (prime, rank) per trial
    failure_bound: float  # Schwartz-Zippel bound on a wrong answer per trial


def rank_generic(m: SparseMat, nonzero_params=(), trials: int = 5, seed: int | None = None) -> int:
    return rank_generic_report(m, nonzero_params, trials, seed).rank


def rank_generic_report(m: SparseMat, nonzero_params=(), trials: int = 5, seed: int | None = None) -> GenericRank:
    """Rank at random parameter points modulo independent random 62-bit primes.

    Every symbol is drawn uniformly from 1..p-1 (so those asserted nonzero
    are nonzero).  All trials must agree, otherwise RankInstability is raised.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    syms = set()
    deg = 1
    for v in m.entries.values():
        if isinstance(v, sympy.Basic):
            syms |= v.free_symbols
            if v.free_symbols:
                deg = max(deg, sympy.Poly(v, *sorted(v.free_symbols, key=str)).total_degree())
    syms |= set(nonzero_params)
    results = []
    for _ in range(trials):
        p = random_prime(62, rng)
        values = {s: rng.randrange(1, p) for s in syms}
        results.append((p, rank_mod_p(m, p, values)))
    ranks = {r for _p, r in results}
    if len(ranks) != 1:
        raise RankInstability(f"generic rank trials disagree: {results}")
    r = ranks.pop()
    bound = min(1.0, deg * min(m.nrows, m.ncols) / 2.0**61)
    return GenericRank(r, results, bound)


# ---------------------------------------------------------------------------
# complexes


def check_d_squared(dims: dict, diffs: dict):
    """Raise DifferentialError unless d_{k+1} d_k = 0 for every k."""
    for k, d in diffs.items():
        if d.ncols != dims.get(k, 0) or d.nrows != dims.get(k + 1, 0):
            raise ValueError(f"d_{k} has shape {d.nrows}x{d.ncols}, expected {dims.get(k + 1, 0)}x{dims.get(k, 0)}")
        nxt = diffs.get(k + 1)
        if nxt is None:
            continue
        prod = matmul(nxt, d)
        if prod.entries:
            raise DifferentialError(f"d_{k + 1} d_{k} != 0 ({prod.nnz} nonzero entries)")


def cohomology_dims(dims: dict, diffs: dict, rank=None, check: bool = True) -> dict:
    """dim H^k = dim C^k - rank d_k - rank d_{k-1}, with d_k : C^k -> C^{k+1}.

    ``diffs[k]`` is a SparseMat with dim C^{k+1} rows and dim C^k columns.
    """
    if check:
        check_d_squared(dims, diffs)
    if rank is None:
        rank = lambda m: rank_generic(m) if m.is_parametric() else rank_exact(m)
    ranks = {k: (rank(d) if d.entries else 0) for k, d in diffs.items()}
    out = {}
    for k, c in dims.items():
        h = c - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if h < 0:
            raise ArithmeticError(f"negative cohomology dimension at degree {k}")
        out[k] = h
    return out
