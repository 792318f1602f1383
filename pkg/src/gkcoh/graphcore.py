"""Decorated graphs, canonical forms with orientation signs, excess, and
generator enumeration for the low-excess weight-15 complexes.

A :class:`BlownUpGraph` is stored un-blown-up: vertex 0 may be the special
genus-one vertex, all other vertices are genus zero.  The blown-up picture is
recovered by deleting vertex 0; its half-edges become the ω-legs (marked, in
the set A) and ε-legs (unmarked).

Half-edges are named ``('h', i, s)`` for end s of edge i and ``('l', j)`` for
the leg of marking j.  The odd objects are

* every edge ``('E', i)``,
* every marked half-edge at the special vertex,
* every marking leg ``('L', j)`` when ``odd_legs`` is set (the sign-twisted
  variant used for equivariant decompositions),

and the orientation is the ordered tuple ``word`` of all odd objects.  Two
orderings differ by the sign of the permutation between them; a graph with an
automorphism acting oddly on its odd objects is zero.

Canonical labeling is delegated to nauty (via pynauty) on an auxiliary simple
graph with one node per vertex, edge, half-edge and leg.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace

import pynauty

SPECIAL = "special"
PLAIN = "plain"


class ScopeError(ValueError):
    """A request outside the supported range of a computation."""


@dataclass(frozen=True)
class BlownUpGraph:
    nv: int
    edges: tuple  # ((a, b), ...)
    legs: tuple = ()  # ((vertex, color), ...)
    marked: frozenset = frozenset()  # half-edge ids at vertex 0
    word: tuple = ()
    vkinds: tuple | None = None  # per vertex; default: vertex 0 special
    ekinds: tuple | None = None  # per edge; default all ""
    odd_legs: bool = False

    def __post_init__(self):
        if self.vkinds is None:
            object.__setattr__(self, "vkinds", (SPECIAL,) + (PLAIN,) * (self.nv - 1))
        if self.ekinds is None:
            object.__setattr__(self, "ekinds", ("",) * len(self.edges))

    # basic structure

    @property
    def has_special(self) -> bool:
        return self.nv > 0 and self.vkinds[0] == SPECIAL

    def half_edges_at(self, x: int) -> list:
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == x:
                out.append(("h", i, 0))
            if b == x:
                out.append(("h", i, 1))
        for j, (y, _c) in enumerate(self.legs):
            if y == x:
                out.append(("l", j))
        return out

    def valence(self, x: int) -> int:
        return len(self.half_edges_at(x))

    def odd_objects(self) -> list:
        objs = [("E", i) for i in range(len(self.edges))]
        objs += sorted(self.marked)
        if self.odd_legs:
            objs += [("L", j) for j in range(len(self.legs))]
        return objs

    def default_word(self):
        return tuple(self.odd_objects())

    def with_default_word(self) -> "BlownUpGraph":
        return replace(self, word=self.default_word())

    def num_marked(self) -> int:
        return len(self.marked)

    def loop_order(self) -> int:
        """First Betti number of the whole graph."""
        return len(self.edges) - self.nv + 1

    def genus(self) -> int:
        return self.loop_order() + (1 if self.has_special else 0)

    def has_plain_self_loop(self) -> bool:
        return any(a == b and self.vkinds[a] == PLAIN for a, b in self.edges)

    def is_connected(self) -> bool:
        if self.nv == 0:
            return True
        adj = {x: set() for x in range(self.nv)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        return len(seen) == self.nv

    def plain_valences_ok(self) -> bool:
        return all(self.valence(x) >= 3 for x in range(self.nv) if self.vkinds[x] == PLAIN)

    def check(self):
        """Raise ValueError if the graph is malformed."""
        if sorted(self.word, key=repr) != sorted(self.odd_objects(), key=repr):
            raise ValueError("orientation word must list every odd object exactly once")
        for h in self.marked:
            if h[0] == "h":
                i, s = h[1], h[2]
                if self.edges[i][s] != 0:
                    raise ValueError(f"marked half-edge {h} is not at the special vertex")
            elif self.legs[h[1]][0] != 0:
                raise ValueError(f"marked leg {h} is not at the special vertex")
        for a, b in self.edges:
            if not (0 <= a < self.nv and 0 <= b < self.nv):
                raise ValueError("edge endpoint out of range")
        return self

    # text form

    def encode(self) -> str:
        """One-line text form: vertices, edges, legs, marked half-edges, word."""
        vk = "".join("s" if k == SPECIAL else ("p" if k == PLAIN else k[0]) for k in self.vkinds)
        es = " ".join(f"{a}-{b}" + (f"[{k}]" if k else "") for (a, b), k in zip(self.edges, self.ekinds))
        ls = " ".join(f"{x}:{c}" for x, c in self.legs)
        ms = " ".join(_obj_text(h) for h in sorted(self.marked))
        ws = " ".join(_obj_text(o) for o in self.word)
        tw = " odd-legs" if self.odd_legs else ""
        return f"V={vk} E=[{es}] L=[{ls}] A=[{ms}] W=[{ws}]{tw}"

    def blown_up_text(self) -> str:
        """Legs of the deleted special vertex, as ω/ε labels per edge or leg."""
        if not self.has_special:
            return self.encode()
        parts = []
        for i, (a, b) in enumerate(self.edges):
            for s, x in ((0, a), (1, b)):
                if x == 0:
                    parts.append(("ω" if ("h", i, s) in self.marked else "ε") + f"@e{i}")
        for j, (x, c) in enumerate(self.legs):
            if x == 0:
                parts.append(("ω" if ("l", j) in self.marked else "ε") + f"-j{c}")
        return " ".join(parts)


def _obj_text(o):
    return "".join(str(p) for p in o)


# ---------------------------------------------------------------------------
# canonical forms


def _perm_parity(seq) -> int:
    """Parity (0 even, 1 odd) of a permutation given as a list of 0..k-1."""
    seen = [False] * len(seq)
    parity = 0
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@dataclass
class _Aux:
    n: int
    adj: dict
    colors: list  # color key per node
    vnode: list
    enode: list
    hnode: dict
    lnode: list
    leg_hnode: list


def _aux(g: BlownUpGraph) -> _Aux:
    colors = []
    adj: dict = {}

    def node(color):
        colors.append(color)
        adj[len(colors) - 1] = []
        return len(colors) - 1

    def link(a, b):
        adj[a].append(b)
        adj[b].append(a)

    vnode = [node("v:" + k) for k in g.vkinds]
    enode, hnode = [], {}
    for i, (a, b) in enumerate(g.edges):
        e = node("E:" + g.ekinds[i])
        enode.append(e)
        for s, x in ((0, a), (1, b)):
            h = ("h", i, s)
            hn = node("h:%d" % (h in g.marked))
            hnode[h] = hn
            link(hn, vnode[x])
            link(hn, e)
    lnode, leg_hnode = [], []
    for j, (x, c) in enumerate(g.legs):
        h = ("l", j)
        hn = node("h:%d" % (h in g.marked))
        hnode[h] = hn
        ln = node("L:%08d" % c)
        link(hn, vnode[x])
        link(hn, ln)
        lnode.append(ln)
        leg_hnode.append(hn)
    return _Aux(len(colors), adj, colors, vnode, enode, hnode, lnode, leg_hnode)


def _obj_node(aux: _Aux, obj):
    if obj[0] == "E":
        return aux.enode[obj[1]]
    if obj[0] == "L":
        return aux.lnode[obj[1]]
    return aux.hnode[obj]


def _nauty(aux: _Aux):
    keys = sorted(set(aux.colors))
    classes = {k: set() for k in keys}
    for i, c in enumerate(aux.colors):
        classes[c].add(i)
    ng = pynauty.Graph(aux.n, directed=False, adjacency_dict=aux.adj, vertex_coloring=[classes[k] for k in keys])
    return ng


def canonicalize(g: BlownUpGraph, allow_zero: bool = False):
    """(canonical representative, sign).

    The representative is the relabeled graph whose word lists the odd
    objects in canonical order; sign is the parity of the reordering from the
    input word.  When some automorphism acts by an odd permutation on the odd
    objects the sign is 0 (the representative is still returned when
    ``allow_zero`` is set, otherwise it is None).
    """
    aux = _aux(g)
    ng = _nauty(aux)
    lab = pynauty.canon_label(ng)
    pos = [0] * aux.n
    for p, node_id in enumerate(lab):
        pos[node_id] = p
    odd_nodes = [_obj_node(aux, o) for o in g.word]
    odd_set = set(odd_nodes)
    if len(odd_set) != len(odd_nodes) or len(odd_nodes) != len(g.odd_objects()):
        raise ValueError("malformed orientation word")

    zero = False
    gens = pynauty.autgrp(ng)[0]
    if gens:
        index = {nd: k for k, nd in enumerate(odd_nodes)}
        for perm in gens:
            if _perm_parity([index[perm[nd]] for nd in odd_nodes]):
                zero = True
                break

    rep = _relabel(g, aux, pos)
    if zero:
        return (rep if allow_zero else None), 0
    ranks = sorted(range(len(odd_nodes)), key=lambda k: pos[odd_nodes[k]])
    # ranks[r] = input index of the object at canonical rank r
    inv = [0] * len(ranks)
    for r, k in enumerate(ranks):
        inv[k] = r
    sign = -1 if _perm_parity(inv) else 1
    return rep, sign


def _relabel(g: BlownUpGraph, aux: _Aux, pos) -> BlownUpGraph:
    vorder = sorted(range(g.nv), key=lambda x: (g.vkinds[x] != SPECIAL, pos[aux.vnode[x]]))
    vnew = {x: k for k, x in enumerate(vorder)}
    eorder = sorted(range(len(g.edges)), key=lambda i: pos[aux.enode[i]])
    enew = {i: k for k, i in enumerate(eorder)}
    edges, ekinds, hmap = [], [], {}
    for i in eorder:
        ends = sorted((0, 1), key=lambda s: pos[aux.hnode[("h", i, s)]])
        a, b = g.edges[i]
        xy = (a, b)
        edges.append((vnew[xy[ends[0]]], vnew[xy[ends[1]]]))
        ekinds.append(g.ekinds[i])
        for new_s, old_s in enumerate(ends):
            hmap[("h", i, old_s)] = ("h", enew[i], new_s)
    lorder = sorted(range(len(g.legs)), key=lambda j: pos[aux.lnode[j]])
    lnew = {j: k for k, j in enumerate(lorder)}
    legs = tuple((vnew[g.legs[j][0]], g.legs[j][1]) for j in lorder)
    for j in range(len(g.legs)):
        hmap[("l", j)] = ("l", lnew[j])

    def obj_map(o):
        if o[0] == "E":
            return ("E", enew[o[1]])
        if o[0] == "L":
            return ("L", lnew[o[1]])
        return hmap[o]

    word = tuple(obj_map(o) for o in sorted(g.word, key=lambda o: pos[_obj_node(aux, o)]))
    return BlownUpGraph(
        nv=g.nv,
        edges=tuple(edges),
        legs=legs,
        marked=frozenset(hmap[h] for h in g.marked),
        word=word,
        vkinds=tuple(g.vkinds[x] for x in vorder),
        ekinds=tuple(ekinds),
        odd_legs=g.odd_legs,
    )


def canonical_key(g: BlownUpGraph):
    """Isomorphism-class key that ignores the orientation (zero graphs included)."""
    rep, _ = canonicalize(g, allow_zero=True)
    return graph_key(rep)


def graph_key(rep: BlownUpGraph):
    return (rep.nv, rep.vkinds, rep.edges, rep.ekinds, rep.legs, tuple(sorted(rep.marked)), rep.odd_legs)


# ---------------------------------------------------------------------------
# splitting


def _move(g: BlownUpGraph, moved: set, x: int, y: int):
    """Edges and legs after moving the half-edges in ``moved`` from x to y."""
    edges = []
    for i, (a, b) in enumerate(g.edges):
        a2 = y if ("h", i, 0) in moved else a
        b2 = y if ("h", i, 1) in moved else b
        edges.append((a2, b2))
    legs = [(y if ("l", j) in moved else v, c) for j, (v, c) in enumerate(g.legs)]
    return edges, legs


def split_plain(g: BlownUpGraph, x: int, min_side: int = 2):
    """All splittings of plain vertex x into two vertices joined by a new edge.

    Yields (graph, sign) with the new edge placed first in the word; each
    unordered bipartition of the half-edges at x appears once.
    """
    hs = g.half_edges_at(x)
    k = len(hs)
    if k < 2 * min_side:
        return
    first, rest = hs[0], hs[1:]
    y = g.nv
    for r in range(min_side - 1, k - min_side + 1):
        for stay_rest in itertools.combinations(rest, r):
            stay = {first, *stay_rest}
            moved = {h for h in hs if h not in stay}
            if len(moved) < min_side:
                continue
            edges, legs = _move(g, moved, x, y)
            ne = len(edges)
            edges.append((x, y))
            yield BlownUpGraph(
                nv=g.nv + 1,
                edges=tuple(edges),
                legs=tuple(legs),
                marked=g.marked,
                word=(("E", ne),) + g.word,
                vkinds=g.vkinds + (PLAIN,),
                ekinds=g.ekinds + ("",),
                odd_legs=g.odd_legs,
            ), 1


def split_special(g: BlownUpGraph):
    """Push a set S of half-edges off the special vertex onto a new vertex.

    |S| >= 2 and S contains at most one marked half-edge; the new half-edge at
    the special vertex inherits that mark and its place in the word.  Terms
    in which the new vertex would carry a self-loop are dropped.
    """
    hs = g.half_edges_at(0)
    marked = [h for h in hs if h in g.marked]
    unmarked = [h for h in hs if h not in g.marked]
    y = g.nv
    ne = len(g.edges)
    new_h = ("h", ne, 0)
    for m in [None] + marked:
        for r in range(0 if m is not None else 2, len(unmarked) + 1):
            if m is not None and r < 1:
                continue
            for rest in itertools.combinations(unmarked, r):
                S = set(rest)
                if m is not None:
                    S.add(m)
                if any(("h", i, 0) in S and ("h", i, 1) in S for i in range(ne)):
                    continue
                edges, legs = _move(g, S, 0, y)
                edges.append((0, y))
                if m is None:
                    marked_new = g.marked
                    word = (("E", ne),) + g.word
                else:
                    marked_new = (g.marked - {m}) | {new_h}
                    word = (("E", ne),) + tuple(new_h if o == m else o for o in g.word)
                yield BlownUpGraph(
                    nv=g.nv + 1,
                    edges=tuple(edges),
                    legs=tuple(legs),
                    marked=frozenset(marked_new),
                    word=word,
                    vkinds=g.vkinds + (PLAIN,),
                    ekinds=g.ekinds + ("",),
                    odd_legs=g.odd_legs,
                ), 1


def unmark_terms(g: BlownUpGraph):
    """Remove one half-edge from A, with sign (-1)^(position in the word)."""
    for p, o in enumerate(g.word):
        if o in g.marked:
            yield replace(g, marked=g.marked - {o}, word=g.word[:p] + g.word[p + 1:]), (-1) ** p


# ---------------------------------------------------------------------------
# components and excess


@dataclass(frozen=True)
class Component:
    """A blown-up component: counts plus the vertices/edges/legs it uses."""

    h1: int
    n_omega: int
    n_eps: int
    n_mark: int
    vertices: frozenset = field(default_factory=frozenset)
    edges: frozenset = field(default_factory=frozenset)
    legs: frozenset = field(default_factory=frozenset)

    @property
    def excess(self) -> int:
        return excess_component(self)


def excess_component(c: Component) -> int:
    """3 h1 + 3 #ε + #ω + 2 n - 3."""
    return 3 * c.h1 + 3 * c.n_eps + c.n_omega + 2 * c.n_mark - 3


def components(g: BlownUpGraph) -> list[Component]:
    """Blown-up components (the pieces left after deleting the special vertex)."""
    if not g.has_special:
        raise ValueError("graph has no special vertex")
    parent = list(range(g.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        if a and b:
            parent[find(a)] = find(b)
    groups: dict = {}
    for x in range(1, g.nv):
        groups.setdefault(find(x), set()).add(x)
    out = []
    for verts in groups.values():
        es = {i for i, (a, b) in enumerate(g.edges) if a in verts or b in verts}
        inner = [i for i in es if g.edges[i][0] in verts and g.edges[i][1] in verts]
        ls = {j for j, (x, _c) in enumerate(g.legs) if x in verts}
        om = ep = 0
        for i in es:
            for s in (0, 1):
                if g.edges[i][s] == 0:
                    if ("h", i, s) in g.marked:
                        om += 1
                    else:
                        ep += 1
        out.append(Component(len(inner) - len(verts) + 1, om, ep, len(ls), frozenset(verts), frozenset(es), frozenset(ls)))
    for i, (a, b) in enumerate(g.edges):
        if a == 0 and b == 0:
            om = sum(("h", i, s) in g.marked for s in (0, 1))
            out.append(Component(0, om, 2 - om, 0, frozenset(), frozenset({i}), frozenset()))
    for j, (x, _c) in enumerate(g.legs):
        if x == 0:
            om = int(("l", j) in g.marked)
            out.append(Component(0, om, 1 - om, 1, frozenset(), frozenset(), frozenset({j})))
    return out


def excess_budget(family: str, g: int, n: int) -> int:
    """E(g,n) = 3g + 2n - 25 (wt13) or E'(g,n) = 3g + 2n - 33 (wt15)."""
    if family == "wt13":
        return 3 * g + 2 * n - 25
    if family == "wt15":
        return 3 * g + 2 * n - 33
    raise ValueError(f"unknown family {family!r}")


def graph_excess(g: BlownUpGraph, n: int | None = None) -> int:
    """E(Γ) = 3(g-1) + 2n - 2#ω."""
    n = len(g.legs) if n is None else n
    return 3 * (g.genus() - 1) + 2 * n - 2 * len(g.marked)


# ---------------------------------------------------------------------------
# component catalog


def component_types(max_excess: int):
    """All (h1, #ω, #ε, n) with 1 <= excess <= max_excess attached to the special vertex."""
    out = []
    for h1 in range(0, max_excess // 3 + 2):
        for eps in range(0, max_excess // 3 + 2):
            for nm in range(0, max_excess + 2):
                for om in range(0, max_excess + 4):
                    c = Component(h1, om, eps, nm)
                    e = excess_component(c)
                    if 1 <= e <= max_excess and om + eps >= 1:
                        out.append((h1, om, eps, nm))
    return out


def _component_seed(h1, om, eps, nm):
    """v plus one plain vertex carrying all external half-edges and h1 self-loops."""
    edges, marked = [], set()
    for k in range(om + eps):
        edges.append((0, 1))
        if k < om:
            marked.add(("h", len(edges) - 1, 0))
    for _ in range(h1):
        edges.append((1, 1))
    legs = [(1, 0)] * nm
    g = BlownUpGraph(nv=2, edges=tuple(edges), legs=tuple(legs), marked=frozenset(marked))
    return g.with_default_word()


def _bare_components(h1, om, eps, nm):
    if h1 == 0 and nm == 1 and om + eps == 1:
        g = BlownUpGraph(nv=1, edges=(), legs=((0, 0),), marked=frozenset({("l", 0)}) if om else frozenset())
        return [g.with_default_word()]
    if h1 == 0 and nm == 0 and om + eps == 2:
        marked = frozenset(("h", 0, s) for s in range(om))
        return [BlownUpGraph(nv=1, edges=((0, 0),), marked=marked).with_default_word()]
    return []


_CATALOG: dict = {}


def component_catalog(max_excess: int) -> list[BlownUpGraph]:
    """Isomorphism classes of single components with 1 <= excess <= max_excess.

    Markings carry the placeholder color 0.  Generated by closing the one-vertex
    seed of each type under vertex splitting and keeping the graphs without
    self-loops at plain vertices.  Components that vanish for every coloring
    are kept; vanishing is decided after colors are assigned.
    """
    if max_excess in _CATALOG:
        return _CATALOG[max_excess]
    out = []
    for t in component_types(max_excess):
        out.extend(_bare_components(*t))
        seed = _component_seed(*t)
        if seed.valence(1) < 3:
            continue
        seen = {canonical_key(seed): seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for g in frontier:
                for x in range(1, g.nv):
                    for h, _s in split_plain(g, x):
                        k = canonical_key(h)
                        if k not in seen:
                            seen[k] = h
                            nxt.append(h)
            frontier = nxt
        out.extend(g for g in seen.values() if not g.has_plain_self_loop())
    _CATALOG[max_excess] = out
    return out


def component_signature(g: BlownUpGraph):
    (c,) = [c for c in components(g)]
    return c


# ---------------------------------------------------------------------------
# assembling generators


def _glue(parts: list[BlownUpGraph]) -> BlownUpGraph:
    """Disjoint union of single-component graphs along their special vertex."""
    nv, edges, legs, marked = 1, [], [], set()
    for p in parts:
        vmap = {0: 0}
        for x in range(1, p.nv):
            vmap[x] = nv
            nv += 1
        e0, l0 = len(edges), len(legs)
        edges += [(vmap[a], vmap[b]) for a, b in p.edges]
        legs += [(vmap[x], c) for x, c in p.legs]
        for h in p.marked:
            marked.add(("h", h[1] + e0, h[2]) if h[0] == "h" else ("l", h[1] + l0))
    return BlownUpGraph(nv=nv, edges=tuple(edges), legs=tuple(legs), marked=frozenset(marked))


def _tripod():
    g = BlownUpGraph(nv=2, edges=((0, 1),) * 3, marked=frozenset(("h", i, 0) for i in range(3)))
    return g


def _omega_leg():
    return BlownUpGraph(nv=1, edges=(), legs=((0, 0),), marked=frozenset({("l", 0)}))


def _multisets_by_excess(catalog_sigs, target):
    """Multisets of catalog indices whose excesses sum to target."""
    idx = sorted(range(len(catalog_sigs)), key=lambda i: catalog_sigs[i].excess)

    def rec(start, remaining):
        if remaining == 0:
            yield []
            return
        for pos in range(start, len(idx)):
            i = idx[pos]
            e = catalog_sigs[i].excess
            if e <= remaining:
                for rest in rec(pos, remaining - e):
                    yield [i] + rest

    yield from rec(0, target)


def enumerate_generators(family: str, g: int, n: int, excess_cap: int | None = None, colors=None, odd_legs=False, trunc: int = 15):
    """Canonical nonzero generators of B^15_{g,n} as {degree: [graph, ...]}.

    ``colors`` is the multiset of marking colors (default: all distinct, i.e.
    the fully labeled complex).  The generators are all graphs with at least
    ``trunc`` ω-legs; their excess is at most 3g + 2n - 3 - 2 trunc, which
    must not exceed ``excess_cap`` (default 3).
    """
    if family != "wt15":
        raise ValueError("enumerate_generators handles the weight-15 family; see complex13 for weight 13")
    cap = 3 if excess_cap is None else excess_cap
    if cap > 3:
        raise ScopeError("generator enumeration is supported for excess <= 3 only")
    top = 3 * g + 2 * n - 3 - 2 * trunc
    if top > cap:
        raise ScopeError(f"excess {top} at (g,n)=({g},{n}) exceeds the supported cap {cap}")
    colors = list(range(1, n + 1)) if colors is None else sorted(colors)
    if len(colors) != n:
        raise ValueError("need one color per marking")
    out: dict = {}
    if top < 0:
        return out
    catalog = component_catalog(max(top, 1))
    sigs = [component_signature(c) for c in catalog]
    seen = set()
    for E in range(top, -1, -2):
        n_omega = (3 * (g - 1) + 2 * n - E) // 2
        for combo in _multisets_by_excess(sigs, E):
            s_n = sum(sigs[i].n_mark for i in combo)
            s_loops = sum(sigs[i].h1 + sigs[i].n_omega + sigs[i].n_eps - 1 for i in combo)
            a = n - s_n
            rest = g - 1 - s_loops
            if a < 0 or rest < 0 or rest % 2:
                continue
            b = rest // 2
            if sum(sigs[i].n_omega for i in combo) + a + 3 * b != n_omega:
                raise AssertionError("excess bookkeeping mismatch")
            base = _glue([catalog[i] for i in combo] + [_tripod()] * b)
            for choice in set(itertools.permutations(colors, s_n)):
                left = Counter(colors)
                left.subtract(choice)
                leftover = sorted(left.elements())
                legs = tuple((x, choice[k]) for k, (x, _c) in enumerate(base.legs))
                gr = _glue([replace(base, legs=legs)] + [_omega_leg()] * a)
                gr = BlownUpGraph(
                    nv=gr.nv,
                    edges=gr.edges,
                    legs=gr.legs[: len(legs)] + tuple((0, c) for c in leftover),
                    marked=gr.marked,
                    odd_legs=odd_legs,
                ).with_default_word()
                rep, sign = canonicalize(gr)
                if not sign:
                    continue
                key = graph_key(rep)
                if key in seen:
                    continue
                seen.add(key)
                out.setdefault(degree_x(rep, trunc), []).append(rep)
    return out


def degree_x(g: BlownUpGraph, trunc: int = 15) -> int:
    """Degree in B (#ω >= trunc) or C (#ω < trunc): |E| - |A| + 2 trunc (- 1 on the C side)."""
    shift = 2 * trunc if len(g.marked) >= trunc else 2 * trunc - 1
    return len(g.edges) - len(g.marked) + shift


# ---------------------------------------------------------------------------
# generic closure, for small complete complexes


def x_generators(g: int, n: int, colors=None, odd_legs=False, max_count: int = 200000):
    """All nonzero generators of the auxiliary complex X_{g,n} (any number of marks).

    Obtained by pushing unmarked half-edges off the special vertex, starting
    from the one-vertex graphs, and keeping graphs without plain self-loops.
    Only feasible for small (g, n).
    """
    colors = list(range(1, n + 1)) if colors is None else sorted(colors)
    seeds = []
    nloops = g - 1
    if nloops < 0:
        return []
    base_edges = ((0, 0),) * nloops
    base_legs = tuple((0, c) for c in colors)
    hs = [("h", i, s) for i in range(nloops) for s in (0, 1)] + [("l", j) for j in range(n)]
    for r in range(len(hs) + 1):
        for A in itertools.combinations(hs, r):
            seeds.append(BlownUpGraph(nv=1, edges=base_edges, legs=base_legs, marked=frozenset(A), odd_legs=odd_legs).with_default_word())
    seen = {}
    frontier = []
    for s in seeds:
        k = canonical_key(s)
        if k not in seen:
            seen[k] = s
            frontier.append(s)
    while frontier:
        nxt = []
        for gr in frontier:
            for h in _generation_splits(gr):
                k = canonical_key(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
                    if len(seen) > max_count:
                        raise ScopeError("X_{g,n} is too large for the generic closure")
        frontier = nxt
    out = []
    for gr in seen.values():
        rep, sign = canonicalize(gr)
        if sign:
            out.append(rep)
    return out


def _generation_splits(g: BlownUpGraph):
    hs = [h for h in g.half_edges_at(0) if h not in g.marked]
    ne = len(g.edges)
    y = g.nv
    for r in range(2, len(hs) + 1):
        for S in itertools.combinations(hs, r):
            S = set(S)
            if any(("h", i, 0) in S and ("h", i, 1) in S for i in range(ne)):
                continue
            edges, legs = _move(g, S, 0, y)
            edges.append((0, y))
            for mark in (False, True):
                marked = g.marked | {("h", ne, 0)} if mark else g.marked
                h = BlownUpGraph(
                    nv=g.nv + 1, edges=tuple(edges), legs=tuple(legs), marked=frozenset(marked),
                    vkinds=g.vkinds + (PLAIN,), odd_legs=g.odd_legs,
                )
                yield h.with_default_word()


def gc0_generators(loop_order: int, max_edges: int | None = None):
    """Nonzero generators of GC_0 at the given loop order, grouped by edge count."""
    if loop_order < 1:
        return {}
    rose = BlownUpGraph(nv=1, edges=((0, 0),) * loop_order, vkinds=(PLAIN,)).with_default_word()
    seen = {canonical_key(rose): rose}
    frontier = [rose]
    while frontier:
        nxt = []
        for gr in frontier:
            for x in range(gr.nv):
                for h, _s in split_plain(gr, x):
                    if max_edges is not None and len(h.edges) > max_edges:
                        continue
                    k = canonical_key(h)
                    if k not in seen:
                        seen[k] = h
                        nxt.append(h)
        frontier = nxt
    out: dict = {}
    for gr in seen.values():
        if gr.has_plain_self_loop():
            continue
        rep, sign = canonicalize(gr)
        if sign:
            out.setdefault(len(rep.edges), []).append(rep)
    return out
