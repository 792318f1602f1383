"""The weight-13 quotient complex at excess E(g,n) = 3g + 2n - 25 <= 2.

Generators are blown-up graphs with eleven ω-legs and one crossed structure
(a crossed edge, a crossed ω-leg or a crossed self-loop).  Every generator is
a union of small components glued to ω-j legs (one per remaining marking) and
ωωω tripods; the components that survive the decoration relations are
catalogued in :data:`FAMILIES`.  A family is indexed by nothing, by one
marking i, or (genus one only) by a pair of markings.

The differential is a table of arrows between families.  Coefficients that
are only known to exist are sympy symbols; those asserted nonzero are listed
in :data:`NONZERO`.  A few coefficients are pinned by d∘d = 0 (see the
comments in :data:`ARROWS`).

Sₙ acts on a family through the sign representation twisted by permutations
of its indices, so

* an unindexed family spans V_{1^n},
* a family indexed by one marking spans V_{1^n} + V_{21^{n-2}},
* the pair-indexed family (genus one) spans V_{21^{n-2}} modulo relations.

The equivariant cohomology is computed isotype by isotype: on the V_{1^n}
part every family contributes one vector (the sum over its indices) and on
the V_{21^{n-2}} part only indexed families contribute.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .complex15 import EquivCohomology
from .exactla import DifferentialError, SparseMat, check_d_squared, matmul, rank_generic_report
from .graphcore import BlownUpGraph, ScopeError, components, excess_budget, excess_component
from .symkit import Partition

# ---------------------------------------------------------------------------
# parameters

c = sympy.symbols("c1:15")
NONZERO = frozenset({c[0]})  # the leading term of d Γ_s
HODGE_MULTIPLIER = 2  # LS_12 has Hodge types (12,1) and (1,12)


# ---------------------------------------------------------------------------
# components


class _Builder:
    """Accumulates one blown-up graph; vertex 0 is the deleted special vertex."""

    def __init__(self):
        self.nv = 1
        self.edges, self.kinds, self.legs, self.marked = [], [], [], set()

    def vertex(self) -> int:
        self.nv += 1
        return self.nv - 1

    def edge(self, a, b, kind="") -> int:
        self.edges.append((a, b))
        self.kinds.append(kind)
        return len(self.edges) - 1

    def omega(self, v, crossed=False):
        i = self.edge(0, v, "x" if crossed else "")
        self.marked.add(("h", i, 0))

    def leg(self, v, j):
        self.legs.append((v, j))

    def graph(self) -> BlownUpGraph:
        g = BlownUpGraph(nv=self.nv, edges=tuple(self.edges), legs=tuple(self.legs), marked=frozenset(self.marked), ekinds=tuple(self.kinds))
        return g.with_default_word()


def _star(b, n_omega, crossed=0, marks=()):
    v = b.vertex()
    for k in range(n_omega):
        b.omega(v, crossed=k < crossed)
    for j in marks:
        b.leg(v, j)
    return v


def _omega_j(b, j):
    b.leg(0, j)
    b.marked.add(("l", len(b.legs) - 1))


def _eps(b, _idx):
    i = b.edge(0, 0)
    b.marked.add(("h", i, 0))


def _tri(b, _idx):
    _star(b, 3)


def _jtri(b, idx):
    _star(b, 2, marks=idx[:1])


def _four(b, _idx):
    _star(b, 4)


def _b(b, _idx):
    b.edge(_star(b, 2), _star(b, 2))


def _irr(b, _idx):
    v = _star(b, 1)
    b.edge(v, v, "x")


def _bbar(b, _idx):
    b.edge(_star(b, 2), _star(b, 2), "x")


def _fourbar(b, _idx):
    _star(b, 4, crossed=1)


def _i(b, idx):
    b.edge(_star(b, 1, crossed=1, marks=idx[:1]), _star(b, 2))


def _ij(b, idx):
    _star(b, 1, crossed=1, marks=idx[:2])


def _Bbar(b, _idx):
    b.edge(_star(b, 3), _star(b, 2), "x")


def _Bbarp(b, _idx):
    b.edge(_star(b, 3, crossed=1), _star(b, 2))


def _fivebar(b, _idx):
    _star(b, 5, crossed=1)


def _fourbar_i(b, idx):
    _star(b, 3, crossed=1, marks=idx[:1])


def _bbar_i(b, idx):
    b.edge(_star(b, 1, marks=idx[:1]), _star(b, 2), "x")


def _bbarbbar(b, _idx):
    k, u, w = _star(b, 2), _star(b, 1), _star(b, 2)
    b.edge(k, u)
    b.edge(u, w, "x")


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Family:
    name: str
    excess: int
    offset: int  # degree is offset - n
    index: str  # "", "i" or "ij"
    parts: tuple
    omega: int  # ω-legs used by the parts
    genus: int  # genus contributed by the parts
    marks: int  # markings used by the parts


def _family(name, excess, offset, index, *parts):
    b = _Builder()
    idx = (1, 2)[: len(index)]
    for p in parts:
        p(b, idx)
    cs = components(b.graph())
    om = sum(x.n_omega for x in cs)
    gen = sum(x.h1 + x.n_eps + x.n_omega - 1 for x in cs)
    if sum(excess_component(x) for x in cs) != excess:
        raise AssertionError(f"{name}: component excess does not add up to {excess}")
    return Family(name, excess, offset, index, parts, om, gen, len(index))


FAMILIES = {
    f.name: f
    for f in [
        # excess 1
        _family("irr0", 1, 24, "", _irr),
        _family("delta0", 1, 24, "", _bbar),
        _family("s0", 1, 23, "", _fourbar),
        # excess 2, degree 25 - n
        _family("i", 2, 25, "i", _i),
        _family("ij", 2, 25, "ij", _ij),
        _family("jirr", 2, 25, "i", _jtri, _irr),
        _family("birr", 2, 25, "", _b, _irr),
        _family("bbbar", 2, 25, "", _b, _bbar),
        _family("jbbar", 2, 25, "i", _jtri, _bbar),
        _family("bbari", 2, 25, "i", _bbar_i),
        _family("bbarbbar", 2, 25, "", _bbarbbar),
        # degree 24 - n
        _family("4irr", 2, 24, "", _four, _irr),
        _family("4bbar", 2, 24, "", _four, _bbar),
        _family("j4bar", 2, 24, "i", _jtri, _fourbar),
        _family("epsirr", 2, 24, "", _eps, _irr),
        _family("Bbar", 2, 24, "", _Bbar),
        _family("4bari", 2, 24, "i", _fourbar_i),
        _family("Bbar'", 2, 24, "", _Bbarp),
        _family("b4bar", 2, 24, "", _b, _fourbar),
        _family("epsbbar", 2, 24, "", _eps, _bbar),
        # degree 23 - n
        _family("44bar", 2, 23, "", _four, _fourbar),
        _family("eps4bar", 2, 23, "", _eps, _fourbar),
        _family("5bar", 2, 23, "", _fivebar),
    ]
}

# source -> [(target, coefficient)].  An unindexed source hitting an indexed
# target means the sum over all indices; indexed to indexed keeps the index.
# Numbers are the stated leading coefficients, symbols the unknown constants.
ARROWS = {
    "s0": [("delta0", c[0]), ("irr0", c[1])],
    "44bar": [("b4bar", 3), ("4bbar", c[2]), ("4irr", c[3])],
    "eps4bar": [("epsbbar", -1), ("j4bar", 1), ("b4bar", c[4]), ("Bbar", c[5]), ("Bbar'", 3)],
    "5bar": [("Bbar'", 6), ("4irr", c[6]), ("Bbar", c[7])],
    "4irr": [("birr", 3)],
    "4bbar": [("bbbar", 3)],
    "j4bar": [("jbbar", -1), ("jirr", c[8])],
    "epsirr": [("jirr", 1), ("birr", c[9])],
    "Bbar": [("bbarbbar", 2)],
    "4bari": [("bbari", -1), ("jirr", c[10])],
    "Bbar'": [("bbarbbar", 1), ("birr", c[11])],
    "b4bar": [("bbbar", -1), ("birr", c[12])],
    "epsbbar": [("jbbar", -1), ("bbbar", c[13]), ("bbarbbar", 4)],
}

# Constants eliminated, in this order, by solving d∘d = 0 on each complex.
# The Bbar coefficient in d(eps4bar) is among them: with the other stated
# coefficients no sign choice for it makes d∘d vanish.
DEPENDENT = (c[2], c[3], c[5], c[6], c[7], c[8], c[11], c[13])


def _coef(x):
    return sympy.expand(sympy.sympify(x))


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class Wt13Generator:
    family: str
    index: tuple
    tripods: int
    graph: BlownUpGraph = field(compare=False, hash=False)

    @property
    def degree(self) -> int:
        return 13 + sum(1 for k in self.graph.ekinds if k != "x")

    def __str__(self):
        idx = ",".join(map(str, self.index))
        return f"Γ_{self.family}" + (f"[{idx}]" if idx else "") + f" (+{self.tripods} tripods)"


def _build_graph(fam: Family, index: tuple, n: int, tripods: int) -> BlownUpGraph:
    b = _Builder()
    for p in fam.parts:
        p(b, index)
    for j in range(1, n + 1):
        if j not in index:
            _omega_j(b, j)
    for _ in range(tripods):
        _tri(b, ())
    return b.graph()


def family_tripods(fam: Family, g: int, n: int):
    """Number of tripods completing the family at (g, n), or None if it does not exist."""
    legs = n - fam.marks
    rest = 11 - fam.omega - legs
    if legs < 0 or rest < 0 or rest % 3:
        return None
    t = rest // 3
    if 1 + fam.genus + 2 * t != g:
        return None
    return t


def _indices(fam: Family, g: int, n: int) -> list:
    if fam.index == "":
        return [()]
    if fam.index == "i":
        return [(i,) for i in range(1, n + 1)]
    # pair-indexed: present in genus one only, where Γ_{1j} span modulo relations
    if g != 1:
        return []
    return [(1, j) for j in range(2, n + 1)]


def _check_scope(g: int, n: int):
    if g < 0 or n < 0:
        raise ValueError("genus and markings must be nonnegative")
    if 3 * g + 2 * n >= 28:
        raise ScopeError(f"weight 13 at (g,n)=({g},{n}) has excess {excess_budget('wt13', g, n)} > 2, outside the supported range")


def enumerate_wt13(g: int, n: int) -> dict:
    """Generators {degree: [Wt13Generator]} for E(g,n) in {0, 1, 2}."""
    _check_scope(g, n)
    e = excess_budget("wt13", g, n)
    if e < 0:
        raise ScopeError(f"E({g},{n}) = {e} is negative; the complex is empty by excess counting")
    out: dict = {}
    for fam in FAMILIES.values():
        if fam.excess != e:
            continue
        t = family_tripods(fam, g, n)
        if t is None:
            continue
        for idx in _indices(fam, g, n):
            gen = Wt13Generator(fam.name, idx, t, _build_graph(fam, idx, n, t))
            if gen.degree != fam.offset - n:
                raise AssertionError(f"{gen}: degree {gen.degree} disagrees with the family table")
            out.setdefault(gen.degree, []).append(gen)
    return dict(sorted(out.items()))


def differential13(gen: Wt13Generator, g: int, n: int) -> dict:
    """{(family, index): coefficient} for the image of a generator."""
    out = {}
    for target, coef in ARROWS.get(gen.family, []):
        fam = FAMILIES[target]
        if family_tripods(fam, g, n) is None:
            continue
        if fam.index == "i" and FAMILIES[gen.family].index == "":
            keys = [(target, (i,)) for i in range(1, n + 1)]
        else:
            keys = [(target, gen.index)]
        for k in keys:
            out[k] = out.get(k, 0) + _coef(coef)
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# complexes


@dataclass
class Wt13Complex:
    g: int
    n: int
    basis: dict
    diffs: dict
    solution: dict = field(default_factory=dict)  # dependent constant -> expression

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.basis.items()}

    def free_parameters(self) -> set:
        out = set()
        for d in self.diffs.values():
            for v in d.entries.values():
                if isinstance(v, sympy.Basic):
                    out |= v.free_symbols
        return out


def _solve_dd(diffs: dict) -> dict:
    eqs = []
    for k, d in diffs.items():
        if k + 1 in diffs:
            eqs += list(matmul(diffs[k + 1], d).entries.values())
    if not eqs:
        return {}
    unknowns = [s for s in DEPENDENT if any(s in sympy.sympify(e).free_symbols for e in eqs)]
    sols = sympy.solve(eqs, unknowns, dict=True)
    if not sols:
        raise DifferentialError("no choice of the dependent constants makes d∘d vanish")
    return sols[0]


def _substitute(diffs: dict, sol: dict) -> dict:
    if not sol:
        return diffs
    return {k: SparseMat(d.nrows, d.ncols, {ij: sympy.expand(sympy.sympify(v).subs(sol)) for ij, v in d.entries.items()}) for k, d in diffs.items()}


def build_wt13(g: int, n: int) -> Wt13Complex:
    """The complex at (g, n) with d∘d = 0 imposed on the dependent constants."""
    basis = enumerate_wt13(g, n) if excess_budget("wt13", g, n) >= 0 else {}
    index = {k: {(b.family, b.index): i for i, b in enumerate(v)} for k, v in basis.items()}
    diffs = {}
    for k, gens in basis.items():
        target = index.get(k + 1, {})
        entries = {}
        for j, gen in enumerate(gens):
            for key, v in differential13(gen, g, n).items():
                if key not in target:
                    raise AssertionError(f"image of {gen} leaves the catalog: {key}")
                entries[(target[key], j)] = v
        if gens and target:
            diffs[k] = SparseMat(len(target), len(gens), entries)
    sol = _solve_dd(diffs)
    return Wt13Complex(g, n, basis, _substitute(diffs, sol), sol)


def _isotypes(n: int) -> list:
    out = [Partition((1,) * n)]
    if n >= 2:
        out.append(Partition((2,) + (1,) * (n - 2)))
    return out


def _isotypic_complex(cx: Wt13Complex, lam: Partition):
    """Multiplicity-space complex of the V_lam part."""
    hook = 0 < len(lam) < cx.n
    names = {}
    for k, gens in cx.basis.items():
        fams = []
        for gen in gens:
            idx = FAMILIES[gen.family].index
            keep = (idx in ("", "i")) if not hook else (idx in ("i", "ij"))
            if keep and gen.family not in fams:
                fams.append(gen.family)
        names[k] = fams
    diffs = {}
    for k, fams in names.items():
        target = {f: i for i, f in enumerate(names.get(k + 1, []))}
        entries = {}
        for j, f in enumerate(fams):
            for t, coef in ARROWS.get(f, []):
                if t in target:
                    entries[(target[t], j)] = _coef(coef)
        if fams and target:
            diffs[k] = SparseMat(len(target), len(fams), entries)
    return {k: len(v) for k, v in names.items()}, _substitute(diffs, cx.solution)


def _generic_cohomology(dims, diffs, trials, seed, report):
    check_d_squared(dims, diffs)
    ranks = {}
    for k, d in diffs.items():
        if d.entries:
            r = rank_generic_report(d, NONZERO, trials=trials, seed=None if seed is None else seed + k)
            ranks[k] = r.rank
            report.append({"degree": k, "rank": r.rank, "trials": r.trials, "parametric": d.is_parametric()})
    return {k: dims[k] - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in dims}


@dataclass
class Wt13Result:
    cohomology: EquivCohomology
    dims: dict
    rank_reports: list
    parametric: bool


def cohomology13_report(g: int, n: int, trials: int = 5, seed: int | None = None) -> Wt13Result:
    """Equivariant cohomology with the generic-rank trial record."""
    _check_scope(g, n)
    cx = build_wt13(g, n)
    report: list = []
    full = _generic_cohomology(cx.dims(), cx.diffs, trials, seed, report)
    full = {k: h for k, h in full.items() if h}
    degrees: dict = {}
    for lam in (_isotypes(n) if n else [Partition(())]):
        dims, diffs = _isotypic_complex(cx, lam)
        for k, h in _generic_cohomology(dims, diffs, trials, seed, report).items():
            if h:
                degrees.setdefault(k, {})[lam] = h
    eq = EquivCohomology(dict(sorted(degrees.items())))
    for k in set(full) | set(degrees):
        if eq.dimension(k) != full.get(k, 0):
            raise ArithmeticError(f"isotypic parts give {eq.dimension(k)} dimensions in degree {k}, the full complex {full.get(k, 0)}")
    parametric = any(r["parametric"] for r in report)
    return Wt13Result(eq, cx.dims(), report, parametric)


def cohomology13(g: int, n: int, trials: int = 5, seed: int | None = None) -> EquivCohomology:
    """Sₙ-equivariant cohomology {degree: {partition: multiplicity}}."""
    return cohomology13_report(g, n, trials, seed).cohomology


def expected_degree(g: int, n: int) -> int:
    return 3 * g + n - 2 - (1 if n == 0 else 0)


def representation_dim(fam: Family, g: int, n: int) -> int:
    return len(_indices(fam, g, n))


__all__ = [
    "ARROWS",
    "FAMILIES",
    "HODGE_MULTIPLIER",
    "NONZERO",
    "Wt13Complex",
    "Wt13Generator",
    "Wt13Result",
    "build_wt13",
    "cohomology13",
    "cohomology13_report",
    "differential13",
    "enumerate_wt13",
    "expected_degree",
    "family_tripods",
]
