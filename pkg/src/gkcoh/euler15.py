"""Equivariant Euler characteristics of the type (15,0) part of H_c(M_{g,n}).

The generating function is

    -u T_{<=14}( prod_l U_l(X_num,l) / U_l(X_den,l) - 1 )

with log U_l(X) = X (log(l_l E_l) - 1) + (-E_l + X - 1/2) log(1 - X/E_l)
                  + B(-E_l + X) - B(-E_l),
B(z) = sum_{r>=2} B_r / (r (r-1)) z^(1-r), E_l = (1/l) sum_{d|l} mu(l/d) u^-d
and lambda_l = l u^l (1 - u^l).

Writing e = 1/E_l = l u^l / P(u) with P(u) = sum_{d|l} mu(l/d) u^(l-d), the
expression expands as sum_k a_k X^k where

    a_1 = log((1 - u^l) P(u)) + e/2 - sum_r c_r (r-1) e^r
    a_k = -e^(k-1) / (k (k-1)) + e^k / (2k) - sum_r c_r binom(r+k-2, k) e^(r+k-1)

for k >= 2 and c_r = B_r / (r (r-1)).  Each a_k is an honest power series in
u of valuation >= l (k-1), so every sum is finite once u is capped.

A coefficient u^m p_mu of the result with |mu| = n lands in cell (m - n, n).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import mpmath
from gmpy2 import mpq

from .serieskit import Caps, TruncSeries, bernoulli, divisors, moebius, series_mul
from .serieskit import _mono_mul
from .symkit import Partition, SymFunc, enumerate_partitions, powersum_to_schur

W_CAP = 14


class ScopeError(ValueError):
    """A request outside the supported range of a computation."""


# ---------------------------------------------------------------------------
# the ingredients, as TruncSeries


def default_caps(g_max: int, n_max: int) -> Caps:
    return Caps(u_max=g_max + n_max, p_max=n_max, w_max=W_CAP)


def E_ell(ell: int, caps: Caps) -> TruncSeries:
    """E_l = (1/l) sum_{d|l} mu(l/d) u^-d."""
    return TruncSeries.u_poly(caps, {-d: Fraction(moebius(ell // d), ell) for d in divisors(ell)})


def lambda_ell(ell: int, caps: Caps | None = None) -> TruncSeries:
    """lambda_l = l u^l (1 - u^l)."""
    caps = caps or Caps(u_max=2 * ell, p_max=0)
    return TruncSeries.u_poly(caps, {ell: ell, 2 * ell: -ell})


def X_ell(ell: int, with_w: bool, caps: Caps) -> TruncSeries:
    """(1/l) sum_{d|l} mu(l/d) (-p_d + 1 - w^d), or only the -p_d part."""
    out = TruncSeries(caps)
    for d in divisors(ell):
        m = Fraction(moebius(ell // d), ell)
        if not m:
            continue
        out = out + TruncSeries.monomial(caps, -m, mu=(d,))
        if with_w:
            out = out + TruncSeries.monomial(caps, m) + TruncSeries.monomial(caps, -m, w=d)
    return out


# ---------------------------------------------------------------------------
# plain power series in u (lists of mpq, index = exponent)


def _pmul(a, b, n):
    out = [mpq(0)] * (n + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), n + 1 - i)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def _pinv(a, n):
    if a[0] == 0:
        raise ValueError("power series without constant term is not invertible")
    inv0 = 1 / a[0]
    out = [mpq(0)] * (n + 1)
    out[0] = inv0
    for m in range(1, n + 1):
        s = sum((a[k] * out[m - k] for k in range(1, min(m, len(a) - 1) + 1)), mpq(0))
        out[m] = -s * inv0
    return out


def _plog1(q, n):
    """log(1 + q) for q without constant term."""
    out = [mpq(0)] * (n + 1)
    power = [mpq(1)] + [mpq(0)] * n
    for j in range(1, n + 1):
        power = _pmul(power, q, n)
        if not any(power):
            break
        sign = 1 if j % 2 else -1
        for i, c in enumerate(power):
            out[i] += sign * c / j
    return out


def _ppow_table(e, kmax, n):
    pows = [[mpq(1)] + [mpq(0)] * n]
    for _ in range(kmax):
        pows.append(_pmul(pows[-1], e, n))
    return pows


def _valuation(a):
    for i, c in enumerate(a):
        if c:
            return i
    return None


def log_U_coefficients(ell: int, n: int) -> list[list]:
    """The u-series a_1, a_2, ... (index 0 unused) truncated at u^n.

    Stops at the first k whose a_k vanishes mod u^(n+1); all later ones do too.
    """
    P = [mpq(0)] * (ell + 1)
    for d in divisors(ell):
        P[ell - d] += moebius(ell // d)
    P = P[: n + 1] + [mpq(0)] * max(0, n + 1 - len(P))
    e = [mpq(0)] * (n + 1)
    if ell <= n:
        e[ell] = mpq(ell)
    e = _pmul(e, _pinv(P, n), n)
    # the r-range is computed, not guessed: e^(r+k-1) dies once l (r+k-1) > n
    top = n // ell + 2
    pows = _ppow_table(e, top + 1, n)

    def epow(j):
        return pows[j] if j < len(pows) else [mpq(0)] * (n + 1)

    one_minus = [mpq(0)] * (n + 1)
    if ell <= n:
        one_minus[ell] = mpq(-1)
    q = [mpq(0)] + P[1:]
    L1 = [x + y for x, y in zip(_plog1(one_minus, n), _plog1(q, n))]

    coeffs = [None]
    k = 1
    while True:
        if k == 1:
            a = [L1[i] + epow(1)[i] / 2 for i in range(n + 1)]
        else:
            a = [-epow(k - 1)[i] / (k * (k - 1)) + epow(k)[i] / (2 * k) for i in range(n + 1)]
        r = 2
        while ell * (r + k - 1) <= n:
            c = bernoulli(r)
            if c:
                c = mpq(c.numerator, c.denominator) / (r * (r - 1)) * math.comb(r + k - 2, k)
                er = epow(r + k - 1)
                a = [a[i] - c * er[i] for i in range(n + 1)]
            r += 2
        if k > 1 and ell * (k - 1) > n:
            break
        coeffs.append(a)
        k += 1
    return coeffs


def log_U(X: TruncSeries, ell: int, caps: Caps) -> TruncSeries:
    """log U_l(X) expanded as sum_k a_k(u) X^k under caps.

    X must not contain negative powers of u; such input would need caps that
    cannot be read off from the output order.
    """
    if X.data and min(X.data) < 0:
        raise ScopeError("log_U needs X without negative powers of u")
    coeffs = log_U_coefficients(ell, caps.u_max)
    out = TruncSeries(caps)
    power = TruncSeries.one(caps)
    for k in range(1, len(coeffs)):
        power = series_mul(power, X)
        if not power:
            break
        a = TruncSeries.u_poly(caps, {i: c for i, c in enumerate(coeffs[k]) if c})
        out = out + series_mul(a, power)
    return out


def max_ell(u_max: int) -> int:
    """Largest l whose factor can reach u^u_max.

    The l-th log-ratio has u-valuation at least l - l/p for the smallest prime
    p dividing l (and l for l = 1), so l <= 2 u_max suffices.
    """
    return max(1, 2 * u_max)


def _ell_log_ratio(args):
    ell, caps = args
    num = log_U(X_ell(ell, True, caps), ell, caps)
    den = log_U(X_ell(ell, False, caps), ell, caps)
    return (num - den).data


def log_ratio_sum(caps: Caps, ell_max: int, jobs: int = 1) -> TruncSeries:
    """sum_{l <= ell_max} log U_l(X_num) - log U_l(X_den)."""
    total = TruncSeries(caps)
    work = [(ell, caps) for ell in range(1, ell_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_ell_log_ratio, work))
    else:
        parts = [_ell_log_ratio(w) for w in work]
    for data in parts:
        part = TruncSeries(caps)
        part.data = data
        total = total + part
    return total


def _graded_exp(F: TruncSeries) -> TruncSeries:
    """exp(F) for F of positive u-valuation, via G_m = (1/m) sum_k k F_k G_{m-k}."""
    caps = F.caps
    if F.data and min(F.data) < 1:
        raise ValueError("graded exp needs positive u-valuation")
    wmax, pmax = caps.w_max, caps.p_max
    Fr = {k: [(w, mu, sum(mu), c) for (w, mu), c in row.items()] for k, row in F.data.items()}
    G = {0: {(0, ()): mpq(1)}}
    for m in range(1, caps.u_max + 1):
        acc: dict = {}
        for k, frow in Fr.items():
            if k > m or (m - k) not in G:
                continue
            grow = G[m - k]
            for (wg, mg), cg in grow.items():
                wl, pl = wmax - wg, pmax - sum(mg)
                cg = cg * k
                for wf, mf, df, cf in frow:
                    if wf > wl or df > pl:
                        continue
                    key = (wg + wf, _mono_mul(mg, mf))
                    acc[key] = acc.get(key, 0) + cf * cg
        acc = {key: v / m for key, v in acc.items() if v}
        if acc:
            G[m] = acc
    out = TruncSeries(caps)
    out.data = G
    return out


def generating_series(g_max: int, n_max: int, ell_max: int | None = None, jobs: int = 1) -> TruncSeries:
    """-u T_{<=14}(exp(sum of log ratios) - 1), truncated to u^(g_max + n_max)."""
    u_top = g_max + n_max
    inner = Caps(u_max=u_top - 1, p_max=n_max, w_max=W_CAP)
    if ell_max is None:
        ell_max = max_ell(inner.u_max)
    F = log_ratio_sum(inner, ell_max, jobs)
    G = _graded_exp(F)
    outer = Caps(u_max=u_top, p_max=n_max, w_max=W_CAP)
    res = TruncSeries(outer)
    for m, row in G.data.items():
        if m == 0:
            continue
        for (w, mu), c in row.items():
            res._add_term(m + 1, 0, mu, -c)
    return res


def chi_table(g_max: int, n_max: int, ell_max: int | None = None, jobs: int = 1) -> dict:
    """{(g, n): {Partition: int}} for 2g + n >= 3, g <= g_max, n <= n_max."""
    series = generating_series(g_max, n_max, ell_max, jobs)
    by_cell: dict = {}
    for (m, _w, mu), c in series.items():
        n = mu.size
        g = m - n
        by_cell.setdefault((g, n), {})[mu] = c
    table = {}
    for g in range(g_max + 1):
        for n in range(n_max + 1):
            if 2 * g + n < 3:
                continue
            schur = powersum_to_schur(SymFunc(by_cell.get((g, n), {}))) if (g, n) in by_cell else {}
            cell = {}
            for lam, c in schur.items():
                if c.denominator != 1:
                    raise ArithmeticError(f"non-integral Schur coefficient {c} at {(g, n)} {lam}")
                cell[lam] = int(c)
            table[(g, n)] = cell
    leftovers = {k for k in by_cell if k not in table and any(by_cell[k].values())}
    stray = [k for k in leftovers if k[0] < 0 or 2 * k[0] + k[1] < 3]
    if stray:
        raise ArithmeticError(f"unexpected coefficients outside the stable range: {sorted(stray)}")
    return table


# ---------------------------------------------------------------------------
# large genus asymptotics


def asymptotic_constants(tolerance: float = 1e-12) -> tuple[float, float]:
    """(D_ev, D_odd), summed until the tail is below tolerance.

    Past the peak the terms decrease faster than geometrically with ratio
    below 1/2, so the tail is bounded by the last term added.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    with mpmath.workdps(40):
        x = -4 * mpmath.pi**2
        f14 = mpmath.factorial(14)

        def total(term, j0):
            s = mpmath.mpf(0)
            j = j0
            prev = None
            while True:
                t = term(j)
                s += t
                if prev is not None and abs(t) < abs(prev) / 2 and abs(t) < tolerance:
                    return s
                prev = t
                j += 1

        ev = -total(lambda j: x**j / (j * mpmath.factorial(2 * j - 15) * f14), 8)
        odd = -total(lambda j: 4 * mpmath.pi * x**j / ((2 * j + 1) * mpmath.factorial(2 * j - 14) * f14), 7)
        return float(ev), float(odd)


def asymptotic_estimate(g: int) -> float:
    """Leading-order estimate of chi(gr_{15,0} H_c(M_g)) for large g."""
    if g < 20:
        raise ScopeError("the asymptotic estimate is only offered for g >= 20")
    d_ev, d_odd = asymptotic_constants()
    if g % 2 == 0:
        sign, d = (-1) ** (g // 2), d_ev
    else:
        sign, d = (-1) ** ((g - 1) // 2), d_odd
    return float(d * sign * mpmath.factorial(g - 2) / (2 * mpmath.pi) ** g)
