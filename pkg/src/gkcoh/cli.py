"""Command-line interface: ``gkcoh <command> ...``.

Commands
--------
euler15 table|cell|asymptotics
cohomology --family {b15,c15,gc0,wt13} --genus G --markings N [--equivariant]
growth degrees|chart|bound
check --suite <name>

Results can be cached on disk: set ``GKCOH_CACHE_DIR`` (or pass
``--cache-dir``).  Progress goes to stderr; stdout carries only the result.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from importlib import resources

from . import __version__
from .symkit import Partition, parse_schur_text, schur_text, specht_dim

SCHEMA = "gkcoh-report/1"
CACHE_ENV = "GKCOH_CACHE_DIR"
SOFT_GMAX, SOFT_NMAX = 30, 10


# ---------------------------------------------------------------------------
# cache


class ResultCache:
    """Content-addressed JSON store keyed by operation, arguments and code version."""

    def __init__(self, root: str | None):
        self.root = root

    def key(self, module: str, op: str, args: dict) -> str:
        blob = json.dumps({"module": module, "op": op, "args": args, "version": __version__}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str):
        if not self.root:
            return None
        path = os.path.join(self.root, key + ".json")
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            return json.load(fh)

    def put(self, key: str, value) -> None:
        if not self.root:
            return
        os.makedirs(self.root, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(value, fh, sort_keys=True)
        os.replace(tmp, os.path.join(self.root, key + ".json"))

    def cached(self, module: str, op: str, args: dict, compute):
        k = self.key(module, op, args)
        hit = self.get(k)
        if hit is not None:
            return hit
        value = compute()
        # store what a later hit would return, so hits and misses agree
        value = json.loads(json.dumps(value, sort_keys=True))
        self.put(k, value)
        return value


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------
# data files


def load_figure1() -> dict:
    """{(g, n): Schur text} for the golden Euler characteristic table."""
    text = resources.files("gkcoh").joinpath("data/figure1.tsv").read_text()
    out = {}
    for line in text.strip().splitlines():
        g, n, cell = line.split("\t")
        out[(int(g), int(n))] = cell.strip()
    return out


def _load_table(name: str) -> dict:
    raw = json.loads(resources.files("gkcoh").joinpath(f"data/{name}").read_text())
    out = {}
    for key, degrees in raw.items():
        g, n = map(int, key.split(","))
        out[(g, n)] = {int(k): {Partition.parse(l): m for l, m in v.items()} for k, v in degrees.items()}
    return out


def load_wt15_tables() -> dict:
    return _load_table("wt15_tables.json")


def load_wt13_table() -> dict:
    return _load_table("wt13_table.json")


# ---------------------------------------------------------------------------
# euler15


def _chi_cells(gmax, nmax, jobs, cache):
    from .euler15 import chi_table

    def compute():
        t = chi_table(gmax, nmax, jobs=jobs)
        return {f"{g},{n}": schur_text(cell) for (g, n), cell in sorted(t.items())}

    raw = cache.cached("euler15", "chi_table", {"gmax": gmax, "nmax": nmax}, compute)
    return {tuple(map(int, k.split(","))): v for k, v in raw.items()}


def format_table(cells: dict, gmin: int, gmax: int, nmax: int, fmt: str) -> str:
    rows = [(g, [cells.get((g, n), "0") for n in range(nmax + 1)]) for g in range(gmin, gmax + 1)]
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "table": {f"{g},{n}": c for g, r in rows for n, c in enumerate(r)}}, indent=1, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g"] + [str(n) for n in range(nmax + 1)])
        for g, r in rows:
            w.writerow([g] + r)
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        lines = ["\\hline \\rowcolor{Gray} $g$,$n$ & " + " & ".join(str(n) for n in range(nmax + 1)) + "\\\\  ", "\\hline"]
        for g, r in rows:
            lines.append(f" {g} & " + " & ".join(f"$ {c} $" for c in r) + " \\\\  ")
            lines.append("\\hline")
        return "\n".join(lines)
    width = max(len(c) for _g, r in rows for c in r)
    return "\n".join(f"{g:>3} | " + " | ".join(c.ljust(width) for c in r) for g, r in rows)


def cmd_euler(args, cache) -> int:
    from .euler15 import asymptotic_constants, asymptotic_estimate

    if args.action == "asymptotics":
        d_ev, d_odd = asymptotic_constants()
        out = {"schema": SCHEMA, "D_even": d_ev, "D_odd": d_odd}
        if args.genus is not None:
            out["estimate"] = {"g": args.genus, "value": asymptotic_estimate(args.genus)}
        print(json.dumps(out, indent=1) if args.format == "json" else "\n".join(f"{k} = {v}" for k, v in out.items() if k != "schema"))
        return 0
    if args.cell:
        args.action, (args.g, args.n) = "cell", args.cell
    if args.action == "cell":
        g, n = args.g, args.n
        if g is None or n is None:
            raise SystemExit("euler15 cell needs G and N")
        if 2 * g + n < 3 or g < 7:
            print("0")
            return 0
        cells = _chi_cells(g, n, args.jobs, cache)
        print(cells[(g, n)])
        return 0
    if (args.gmax > SOFT_GMAX or args.nmax > SOFT_NMAX) and not args.force:
        raise SystemExit(f"table size above the soft cap gmax <= {SOFT_GMAX}, nmax <= {SOFT_NMAX}; pass --force")
    cells = _chi_cells(args.gmax, args.nmax, args.jobs, cache)
    print(format_table(cells, args.gmin, args.gmax, args.nmax, args.format))
    return 0


# ---------------------------------------------------------------------------
# cohomology


def _decomp(parts: dict) -> list:
    return [{"partition": str(lam), "mult": m} for lam, m in sorted(parts.items(), key=lambda t: tuple(t[0]))]


def cohomology_report(family: str, g: int, n: int, equivariant: bool, trunc: int = 15) -> dict:
    from . import complex13, complex15

    checks: dict = {"d_squared": True}
    report = {"schema": SCHEMA, "family": family, "g": g, "n": n}
    if family == "wt13":
        res = complex13.cohomology13_report(g, n)
        eq = res.cohomology
        report["parametric"] = res.parametric
        report["hodge_multiplier"] = complex13.HODGE_MULTIPLIER
        report["rank_trials"] = [{"degree": r["degree"], "rank": r["rank"], "primes": [p for p, _ in r["trials"]]} for r in res.rank_reports]
        checks["generic_rank_trials"] = min((len(r["trials"]) for r in res.rank_reports), default=0)
        degrees = [{"k": k, "dim": eq.dimension(k), "decomposition": _decomp(v)} for k, v in eq.nonzero().items()]
    elif family == "gc0":
        h = complex15.cohomology("GC0", loop_order=g)
        degrees = [{"k": k, "dim": d} for k, d in sorted(h.items())]
        report["loop_order"] = g
    else:
        fam = {"b15": "B15", "c15": "C15"}[family]
        if equivariant:
            eq = complex15.equivariant_cohomology(fam, g, n, trunc)
            degrees = [{"k": k, "dim": eq.dimension(k), "decomposition": _decomp(v)} for k, v in eq.nonzero().items()]
        else:
            h = complex15.cohomology(fam, g, n, trunc=trunc)
            degrees = [{"k": k, "dim": d} for k, d in sorted(h.items())]
        report["trunc"] = trunc
    report["degrees"] = degrees
    report["checks"] = checks
    return report


def cmd_cohomology(args, cache) -> int:
    params = {"family": args.family, "g": args.genus, "n": args.markings, "equivariant": args.equivariant, "trunc": args.trunc}
    t = time.time()
    rep = cache.cached("cohomology", "report", params, lambda: cohomology_report(args.family, args.genus, args.markings, args.equivariant, args.trunc))
    _progress(f"cohomology {args.family} ({args.genus},{args.markings}) done in {time.time() - t:.1f}s")
    if args.format == "json":
        print(json.dumps(rep, indent=1, sort_keys=True))
    else:
        if not rep["degrees"]:
            print("0")
        for d in rep["degrees"]:
            dec = " + ".join(f"{x['mult']}V[{x['partition']}]" for x in d.get("decomposition", []))
            print(f"H^{d['k']}: dim {d['dim']}" + (f"  = {dec}" if dec else ""))
    return 0


# ---------------------------------------------------------------------------
# growth


def cmd_growth(args, cache) -> int:
    from .growth import default_base, exp_growth_degrees, lower_bound_U

    if args.action == "bound":
        if args.genus is None or args.degree is None:
            raise SystemExit("growth bound needs --genus and --degree")
        b = lower_bound_U(args.genus, args.degree, default_base())
        print(json.dumps({"schema": SCHEMA, "g": args.genus, "k": args.degree, "lower_bound": b}) if args.format == "json" else b)
        return 0
    res = exp_growth_degrees()
    if args.action == "chart":
        print(res.chart)
        return 0
    if args.format == "json":
        out = {
            "schema": SCHEMA,
            "full": sorted(res.full_set),
            "new": sorted(res.new_set),
            "open": sorted(res.open_set),
            "summands": [{"p": p, "delta": d, "delta_prime": dp, "k": sorted(ks)} for (p, d, dp), ks in res.per_summand.items()],
        }
        print(json.dumps(out, indent=1))
    else:
        for (p, d, dp), ks in res.per_summand.items():
            print(f"Sym^{p}, shift ({d},{dp}): {sorted(ks)}")
        print(f"new: {sorted(res.new_set)}")
        print(f"open (k <= 73): {sorted(res.open_set)}")
    return 0


# ---------------------------------------------------------------------------
# check suites


def suite_figure1(jobs: int = 1):
    from .euler15 import chi_table

    gold = load_figure1()
    table = chi_table(18, 6, jobs=jobs)
    bad = [key for key, cell in gold.items() if parse_schur_text(cell) != {lam: c for lam, c in table.get(key, {}).items() if c}]
    return not bad, f"{len(gold) - len(bad)}/{len(gold)} cells agree" + (f"; differ: {bad}" if bad else "")


def suite_wt15(jobs: int = 1):
    from .complex15 import equivariant_cohomology

    bad = []
    tables = load_wt15_tables()
    for (g, n), want in tables.items():
        if equivariant_cohomology("B15", g, n) != want:
            bad.append((g, n))
    return not bad, f"{len(tables) - len(bad)}/{len(tables)} cases agree" + (f"; differ: {bad}" if bad else "")


CROSS_CELLS = ((7, 6), (8, 5), (9, 3), (9, 4), (10, 2), (10, 3), (11, 0), (11, 1), (12, 0))


def suite_euler_vs_complex(jobs: int = 1):
    from .complex15 import equivariant_cohomology, euler_schur
    from .euler15 import chi_table

    table = chi_table(12, 6, jobs=jobs)
    bad = []
    for g, n in CROSS_CELLS:
        lhs = euler_schur(equivariant_cohomology("B15", g, n))
        rhs = {lam: c for lam, c in table[(g, n)].items() if c}
        if lhs != rhs:
            bad.append((g, n))
    return not bad, f"{len(CROSS_CELLS) - len(bad)}/{len(CROSS_CELLS)} cells agree" + (f"; differ: {bad}" if bad else "")


def suite_wt13(jobs: int = 1):
    from .complex13 import cohomology13

    bad = []
    table = load_wt13_table()
    for (g, n), want in table.items():
        if cohomology13(g, n) != want:
            bad.append((g, n))
    return not bad, f"{len(table) - len(bad)}/{len(table)} cases agree" + (f"; differ: {bad}" if bad else "")


def suite_growth(jobs: int = 1):
    from .growth import exp_growth_degrees

    res = exp_growth_degrees()
    new = {20, 51, *range(54, 71), 72, 73}
    ok = res.new_set == new and res.open_set == {1, 4, 7, 71}
    return ok, f"new={len(res.new_set)} open={sorted(res.open_set)}"


def suite_asymptotics(jobs: int = 1):
    from .euler15 import asymptotic_constants

    d_ev, d_odd = asymptotic_constants()
    ok = abs(d_ev - 0.498203) <= 5e-7 and abs(d_odd - 1.24975) <= 5e-6
    return ok, f"D_even={d_ev:.10f} D_odd={d_odd:.10f}"


def suite_gc0(jobs: int = 1):
    from .complex15 import cohomology

    h2 = cohomology("GC0", loop_order=2)
    h3 = cohomology("GC0", loop_order=3)
    ok = not h2 and h3.get(6, 0) == 1
    return ok, f"loop 2: {h2 or 0}, loop 3: {h3}"


SUITES = {
    "figure1": suite_figure1,
    "wt15-lowexcess": suite_wt15,
    "euler-vs-complex": suite_euler_vs_complex,
    "wt13": suite_wt13,
    "growth": suite_growth,
    "asymptotics": suite_asymptotics,
    "gc0": suite_gc0,
}


def cmd_check(args, cache) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        t = time.time()
        ok, detail = SUITES[name](args.jobs)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail} ({time.time() - t:.1f}s)")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkcoh", description="Weight 13 and 15 graph complexes of moduli of curves.")
    p.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV), help=f"result cache directory (default: ${CACHE_ENV})")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("euler15", help="equivariant Euler characteristics")
    e.add_argument("action", choices=["table", "cell", "asymptotics"], nargs="?", default="table")
    e.add_argument("g", type=int, nargs="?")
    e.add_argument("n", type=int, nargs="?")
    e.add_argument("--gmin", type=int, default=7)
    e.add_argument("--gmax", type=int, default=18)
    e.add_argument("--nmax", type=int, default=6)
    e.add_argument("--cell", type=int, nargs=2, metavar=("G", "N"), help="same as the cell action")
    e.add_argument("--genus", type=int, help="genus for the asymptotic estimate")
    e.add_argument("--format", choices=["text", "csv", "json", "latex"], default="text")
    e.add_argument("--force", action="store_true")
    e.set_defaults(func=cmd_euler)

    c = sub.add_parser("cohomology", help="graph complex cohomology")
    c.add_argument("--family", choices=["b15", "c15", "gc0", "wt13"], required=True)
    c.add_argument("--genus", type=int, required=True, help="genus, or loop order for gc0")
    c.add_argument("--markings", type=int, default=0)
    c.add_argument("--equivariant", action="store_true")
    c.add_argument("--trunc", type=int, default=15)
    c.add_argument("--format", choices=["text", "json"], default="json")
    c.set_defaults(func=cmd_cohomology)

    g = sub.add_parser("growth", help="exponential growth degrees")
    g.add_argument("action", choices=["degrees", "chart", "bound"])
    g.add_argument("--genus", type=int)
    g.add_argument("--degree", type=int)
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.set_defaults(func=cmd_growth)

    k = sub.add_parser("check", help="run a consistency suite")
    k.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    k.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    from .graphcore import ScopeError as GraphScope
    from .euler15 import ScopeError as EulerScope

    args = build_parser().parse_args(argv)
    cache = ResultCache(args.cache_dir)
    try:
        return args.func(args, cache)
    except (GraphScope, EulerScope) as exc:
        print(f"unsupported scope: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
