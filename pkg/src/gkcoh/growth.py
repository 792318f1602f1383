"""Graded symmetric powers of weight-zero cohomology and the degrees k for
which dim H_c^{2g+k}(M_g) is known to grow at least exponentially in g.

The base is a table of dimensions of W_0 H_c^k(M_h) = H^k(GC_0) in loop
order h, each entry tagged with where it came from.  Symmetric powers follow
the Koszul rule: even-degree classes generate a polynomial algebra, odd-degree
classes an exterior algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphcore import ScopeError

COMPUTED = "computed"
TRUSTED = "trusted"


@dataclass
class GradedDims:
    """{(h, k): dim} with a provenance tag per entry."""

    dims: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        for key, d in self.dims.items():
            if d < 0:
                raise ValueError(f"negative dimension at {key}")
        self.dims = {key: d for key, d in self.dims.items() if d}

    def add(self, h: int, k: int, dim: int, provenance: str = COMPUTED) -> "GradedDims":
        if dim < 0:
            raise ValueError("dimensions are nonnegative")
        out = GradedDims(dict(self.dims), dict(self.provenance))
        if dim:
            out.dims[(h, k)] = out.dims.get((h, k), 0) + dim
            out.provenance[(h, k)] = provenance
        return out

    def items(self):
        return sorted(self.dims.items())


def default_base() -> GradedDims:
    """Known weight-zero classes in low loop order.

    Loop orders 3, 5 and 6 are reproduced by :func:`gkcoh.complex15.cohomology`
    on GC_0 (loop order 4 and lower orders vanish there).  The class in loop
    order 10 is out of reach and enters as trusted data.
    """
    base = GradedDims()
    base = base.add(3, 6, 1, COMPUTED)
    base = base.add(5, 10, 1, COMPUTED)
    base = base.add(6, 15, 1, COMPUTED)
    base = base.add(10, 27, 1, TRUSTED)
    return base


def gc0_dims(h: int, k: int):
    """Compute one GC_0 entry; loop order 10 and beyond is out of scope."""
    if h >= 8:
        raise ScopeError(f"H^{k}(GC_0) in loop order {h} is beyond the supported range (loop order <= 7)")
    from .complex15 import cohomology

    return cohomology("GC0", loop_order=h).get(k, 0)


def _sym_table(base: GradedDims, r_max: int, g_max: int, k_max: int) -> dict:
    # coefficients of prod (1 - x y^h z^k)^{-1} over even classes times
    # prod (1 + x y^h z^k) over odd classes, truncated at (r_max, g_max, k_max)
    poly = {(0, 0, 0): 1}
    for (h, k), d in base.items():
        top = 1 if k % 2 else r_max
        for _ in range(d):
            new = dict(poly)
            for (r, gg, kk), v in poly.items():
                for m in range(1, top + 1):
                    t = (r + m, gg + m * h, kk + m * k)
                    if t[0] > r_max or t[1] > g_max or t[2] > k_max:
                        break
                    new[t] = new.get(t, 0) + v
            poly = new
    return poly


def sym_power_dim(base: GradedDims, r: int, g: int, k: int) -> int:
    """Dimension of the genus g, degree k part of Sym^r of the base."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if g < 0 or k < 0:
        return 0
    return _sym_table(base, r, g, k).get((r, g, k), 0)


# (p, delta, delta'): V^{p, k - delta}_{g - delta'} embeds into U^k_g
SUMMANDS = ((14, 29, 1), (14, 30, 2), (13, 30, 3), (10, 30, 5), (7, 30, 7), (4, 30, 9), (1, 30, 11))


def lower_bound_U(g: int, k: int, base: GradedDims | None = None) -> int:
    """Sum of the symmetric-power dimensions that inject into U^k_g."""
    base = default_base() if base is None else base
    if g < 1 or k < 0:
        return 0
    return sum(sym_power_dim(base, p, g - dg, k - dk) for p, dk, dg in SUMMANDS)


# ---------------------------------------------------------------------------
# degrees with exponential growth

KNOWN = frozenset(
    {0, 3}
    | {2, 3, 5, 6, 8, 9, 10, 12, 13}
    | {8, 11, 12} | set(range(14, 20)) | set(range(21, 51)) | {52, 53}
)
KAPPA_GROWING = (0, 3)  # W_0 H^{2g+κ}_c(M_g) grows exponentially
KAPPA_SINGLE = 7  # one odd class, H^27 in loop order 10
K_MAX = 73
CHART_WIDTH = 81


def summand_degrees(p: int, delta: int, delta_prime: int) -> set:
    """k = δ - 2δ' + κ_1 + ... + κ_p with κ_j in {0, 3, 7}, one κ in {0, 3}
    at least, and at most one 7 (the odd class has no higher powers)."""
    base = delta - 2 * delta_prime
    out = set()
    for sevens in (0, 1):
        rest = p - sevens
        if rest < 1:
            continue
        for threes in range(rest + 1):
            out.add(base + 3 * threes + KAPPA_SINGLE * sevens)
    return out


def summand_progressions(p: int, delta: int, delta_prime: int):
    """The two arithmetic progressions as closed sets (p >= 2), or {b, b+3} for p = 1."""
    b = delta - 2 * delta_prime
    if p == 1:
        return {b, b + 3}, set()
    return {b + 3 * j for j in range(p + 1)}, {b + 3 * j + 7 for j in range(p)}


@dataclass
class GrowthDegrees:
    per_summand: dict  # (p, δ, δ') -> set of k
    full_set: set
    known_set: set
    new_set: set
    open_set: set
    chart: str


def exp_growth_degrees() -> GrowthDegrees:
    per = {s: summand_degrees(*s) for s in SUMMANDS}
    union = set().union(*per.values())
    full = {k for k in range(K_MAX + 1) if k in KNOWN or k in union}
    new = {k for k in union if k <= K_MAX} - KNOWN
    open_ = set(range(K_MAX + 1)) - full
    return GrowthDegrees(per, full, set(KNOWN), new, open_, ascii_chart())


def chart_marker(k: int) -> str:
    if k in KNOWN:
        return "#"
    union = set().union(*(summand_degrees(*s) for s in SUMMANDS))
    if k in union and k <= K_MAX:
        return "+"
    return "."


def ascii_chart() -> str:
    """Row of markers for k = 0..80 ('#' known, '+' new, '.' open) over a decade ruler."""
    row = "".join(chart_marker(k) for k in range(CHART_WIDTH))
    ticks = "".join("|" if k % 10 == 0 else " " for k in range(CHART_WIDTH))
    labels = [" "] * (CHART_WIDTH + 2)
    for k in range(0, CHART_WIDTH, 10):
        for i, ch in enumerate(str(k)):
            labels[k + i] = ch
    return "\n".join([row, ticks, "".join(labels).rstrip()])
