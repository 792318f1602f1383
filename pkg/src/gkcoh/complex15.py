"""The weight-15 complexes B^15, C^15 (and the auxiliary X) and the
commutative graph complex GC_0.

B^t_{g,n} = (X / X^{<=t-1})[-2t] and C^t_{g,n} = X^{<=t-1}[-(2t-1)], where X
is spanned by graphs with a special genus-one vertex and a set A of marked
half-edges at it.  The weight-15 case is t = 15; smaller t gives the same
construction in a size where both sides can be built completely, which is how
the isomorphism H(B) = H(C) is tested.

The differential is

* splitting a plain vertex into two vertices of valence >= 3,
* pushing half-edges S off the special vertex (|S| >= 2, at most one marked),
* removing one half-edge from A (in B, only while |A| stays >= t).

Equivariant cohomology
----------------------
For a Young subgroup S_nu, the sign-twisted coinvariant complex (markings of
the same color anticommute) has cohomology (H tensor sgn)^{S_nu}, of dimension
sum_mu K_{mu,nu} m_{mu'} where m_lambda is the multiplicity of V_lambda in H.
Solving this unitriangular system along the reverse lexicographic order of nu
gives every multiplicity; we stop once the multiplicities account for the
whole cohomology of the fully labeled complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import SparseMat, cohomology_dims, rank_exact
from .graphcore import (
    BlownUpGraph,
    ScopeError,
    canonicalize,
    enumerate_generators,
    excess_budget,
    gc0_generators,
    graph_key,
    split_plain,
    split_special,
    unmark_terms,
    x_generators,
    degree_x,
)
from .symkit import Partition, enumerate_partitions, kostka, specht_dim

FAMILIES = ("B15", "C15", "X", "GC0")


@dataclass
class ChainComplex:
    family: str
    g: int
    n: int
    basis: dict  # degree -> [BlownUpGraph]
    diffs: dict = field(default_factory=dict)  # degree k -> SparseMat C^k -> C^{k+1}
    meta: dict = field(default_factory=dict)

    def dims(self) -> dict:
        return {k: len(v) for k, v in sorted(self.basis.items())}

    def cohomology(self) -> dict:
        return cohomology_dims(self.dims(), self.diffs, rank=rank_exact)

    def index(self):
        return {k: {graph_key(b): i for i, b in enumerate(v)} for k, v in self.basis.items()}


@dataclass
class EquivCohomology:
    """{degree: {Partition: multiplicity}}."""

    degrees: dict

    def dimension(self, k: int) -> int:
        return sum(m * specht_dim(lam) for lam, m in self.degrees.get(k, {}).items())

    def nonzero(self) -> dict:
        return {k: {lam: m for lam, m in v.items() if m} for k, v in self.degrees.items() if any(v.values())}

    def __eq__(self, other):
        if isinstance(other, EquivCohomology):
            return self.nonzero() == other.nonzero()
        if isinstance(other, dict):
            return self.nonzero() == {k: {Partition(l) if not isinstance(l, Partition) else l: m for l, m in v.items()} for k, v in other.items() if v}
        return NotImplemented


# ---------------------------------------------------------------------------
# differential


def differential(graph: BlownUpGraph, family: str = "B15", trunc: int = 15) -> dict:
    """{key: (canonical graph, coefficient)} for the image of a graph."""
    terms = []
    if family == "GC0":
        for x in range(graph.nv):
            terms.extend(split_plain(graph, x))
    elif family in ("B15", "C15", "X"):
        terms.extend(split_special(graph))
        for x in range(1, graph.nv):
            terms.extend(split_plain(graph, x))
        if not (family == "B15" and len(graph.marked) - 1 < trunc):
            terms.extend(unmark_terms(graph))
    else:
        raise ValueError(f"unknown family {family!r}")
    out: dict = {}
    for h, c in terms:
        rep, sign = canonicalize(h)
        if not sign:
            continue
        key = graph_key(rep)
        if key in out:
            out[key] = (out[key][0], out[key][1] + c * sign)
        else:
            out[key] = (rep, c * sign)
    return {k: v for k, v in out.items() if v[1]}


def _assemble(family, g, n, basis, trunc, meta) -> ChainComplex:
    cx = ChainComplex(family, g, n, basis, meta=meta)
    index = cx.index()
    for k, gens in basis.items():
        target = index.get(k + 1, {})
        entries = {}
        for j, gr in enumerate(gens):
            for key, (rep, c) in differential(gr, family, trunc).items():
                i = target.get(key)
                if i is None:
                    raise AssertionError(f"{family}({g},{n}): differential leaves the basis at degree {k + 1}: {rep.encode()}")
                entries[(i, j)] = entries.get((i, j), 0) + c
        if gens and target:
            cx.diffs[k] = SparseMat(len(target), len(gens), entries)
    return cx


def build_complex(family: str, g: int = 0, n: int = 0, loop_order: int | None = None, *, colors=None, odd_legs=False, trunc: int = 15, max_edges: int | None = None, generic: bool = False) -> ChainComplex:
    """Build B15, C15 (= X^{<= trunc-1}), X or GC0 with canonical bases and differentials.

    B15 uses the low-excess enumeration (excess <= 3) unless ``generic`` is
    set; C15, X and generic B15 use the closure of :func:`x_generators` and
    are only practical for small (g, n).
    """
    meta = {"trunc": trunc, "colors": colors, "odd_legs": odd_legs}
    if family == "GC0":
        if loop_order is None:
            raise ValueError("GC0 needs a loop order")
        if loop_order > 7:
            raise ScopeError("GC0 is supported up to loop order 7 (loop order 10 is beyond desk scale)")
        gens = gc0_generators(loop_order, max_edges=max_edges)
        meta["loop_order"] = loop_order
        basis = {k: v for k, v in sorted(gens.items())}
        return _assemble("GC0", loop_order, 0, basis, trunc, meta)
    if family == "B15" and generic:
        basis = {}
        for gr in x_generators(g, n, colors=colors, odd_legs=odd_legs):
            if len(gr.marked) >= trunc:
                basis.setdefault(degree_x(gr, trunc), []).append(gr)
        return _assemble("B15", g, n, dict(sorted(basis.items())), trunc, meta)
    if family == "B15":
        cap = 3 * g + 2 * n - 3 - 2 * trunc
        if cap > 3:
            raise ScopeError(f"B15 at (g,n)=({g},{n}) has excess {cap} > 3, outside the supported range")
        basis = enumerate_generators("wt15", g, n, colors=colors, odd_legs=odd_legs, trunc=trunc)
        meta["excess_budget"] = cap
        return _assemble("B15", g, n, dict(sorted(basis.items())), trunc, meta)
    if family in ("C15", "X"):
        gens = x_generators(g, n, colors=colors, odd_legs=odd_legs)
        basis: dict = {}
        for gr in gens:
            if family == "C15" and len(gr.marked) >= trunc:
                continue
            if family == "X":
                k = len(gr.edges) - len(gr.marked)
            else:
                k = degree_x(gr, trunc)
            basis.setdefault(k, []).append(gr)
        return _assemble(family, g, n, dict(sorted(basis.items())), trunc, meta)
    raise ValueError(f"unknown family {family!r}")


def cohomology(family: str, g: int = 0, n: int = 0, loop_order: int | None = None, **kw) -> dict:
    cx = build_complex(family, g, n, loop_order, **kw)
    return {k: h for k, h in cx.cohomology().items() if h}


# ---------------------------------------------------------------------------
# equivariant decomposition


def _nu_colors(nu) -> list:
    out = []
    for i, part in enumerate(nu):
        out += [i + 1] * part
    return out


def equivariant_cohomology(family: str, g: int, n: int, trunc: int = 15) -> EquivCohomology:
    """Multiplicities of V_lambda in each H^k (see the module docstring)."""
    full = build_complex(family, g, n, trunc=trunc).cohomology()
    full = {k: h for k, h in full.items() if h}
    if n == 0:
        return EquivCohomology({k: {Partition(()): h} for k, h in full.items()})
    mult: dict = {}  # mu (= lambda') -> {k: m}
    accounted = {k: 0 for k in full}
    for nu in enumerate_partitions(n):
        if all(accounted[k] == full[k] for k in full):
            break
        cx = build_complex(family, g, n, colors=_nu_colors(nu), odd_legs=True, trunc=trunc)
        d = cx.cohomology()
        for k in set(d) | set(full):
            m = d.get(k, 0) - sum(kostka(mu, nu) * mult[mu].get(k, 0) for mu in mult)
            if m < 0:
                raise ArithmeticError(f"negative multiplicity for {nu} in degree {k}")
            if m:
                mult.setdefault(nu, {})[k] = m
                if k not in full:
                    raise ArithmeticError(f"isotypic part in degree {k} where the full complex has no cohomology")
                accounted[k] += m * specht_dim(nu)
        mult.setdefault(nu, {})
    for k in full:
        if accounted[k] != full[k]:
            raise ArithmeticError(f"multiplicities account for {accounted[k]} of {full[k]} dimensions in degree {k}")
    out: dict = {}
    for mu, per_k in mult.items():
        for k, m in per_k.items():
            out.setdefault(k, {})[mu.conjugate()] = m
    return EquivCohomology(dict(sorted(out.items())))


def equivariant_decomposition(c: ChainComplex) -> EquivCohomology:
    """Equivariant cohomology of a complex built by :func:`build_complex`."""
    if c.family == "GC0":
        return EquivCohomology({k: {Partition(()): h} for k, h in c.cohomology().items() if h})
    return equivariant_cohomology(c.family, c.g, c.n, c.meta.get("trunc", 15))


def euler_schur(eq: EquivCohomology) -> dict:
    """sum_k (-1)^k [H^k] as a Schur expansion."""
    out: dict = {}
    for k, parts in eq.degrees.items():
        for lam, m in parts.items():
            out[lam] = out.get(lam, 0) + (-1) ** k * m
    return {lam: c for lam, c in out.items() if c}


def verify_vanishing(family: str, g: int, n: int) -> dict:
    """For E'(g,n) < 0: confirm there are no generators and no cohomology."""
    if family not in ("B15", "wt15"):
        raise ValueError("verify_vanishing covers the weight-15 family")
    e = excess_budget("wt15", g, n)
    if e >= 0:
        raise ValueError(f"E'({g},{n}) = {e} is not negative")
    gens = enumerate_generators("wt15", g, n)
    count = sum(len(v) for v in gens.values())
    if count:
        raise AssertionError(f"found {count} generators where none should exist")
    return {"family": "B15", "g": g, "n": n, "excess_budget": e, "generators": 0, "cohomology": {}}
