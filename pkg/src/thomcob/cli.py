"""Command-line entry point: ``thomcob <command> ...``.

Exit codes: 0 success, 2 bad input, 3 taint under ``--strict``.
"""

import argparse
import json
import os
import sys

from . import bockstein, cellular, thom
from .fpalg import ParseError, enumerate_basis, format_element, parse_element, Element
from .liegroups import SpecError, build_group, catalog_record
from .steenrod import apply_word, parse_word

SCHEMA = "thomcob/1"
FORMATS = ("text", "json", "dot")
EXIT_USAGE = 2
EXIT_TAINT = 3


class UsageError(Exception):
    pass


class Output:
    def __init__(self, fmt):
        self.fmt = fmt
        self.tainted = False
        self.text = []
        self.record = None

    def line(self, s=""):
        self.text.append(s)

    def emit(self, stream):
        if self.fmt == "json":
            body = {"schema": SCHEMA, **self.record}
            stream.write(json.dumps(body, indent=2, sort_keys=True) + "\n")
        else:
            stream.write("\n".join(self.text) + ("\n" if self.text and not self.text[-1].endswith("\n") else ""))


def _group(text):
    try:
        return build_group(text)
    except SpecError as e:
        raise UsageError(str(e))


def _prime(group, p):
    if p not in group.data:
        raise UsageError(f"{group.name} has no mod-{p} data (available: {list(group.primes)})")
    return p


def _no_dot(args):
    if args.format == "dot":
        raise UsageError(f"--format dot is not available for '{args.command}'")


def cmd_basis(args, out):
    _no_dot(args)
    g = _group(args.spec)
    pres = g.presentation(_prime(g, args.p))
    names = [format_element(pres, Element.monomial(m)) for m in enumerate_basis(pres, args.degree)]
    out.record = {"command": "basis", "group": g.name, "prime": args.p, "degree": args.degree,
                  "basis": names}
    out.line(f"{g.name} mod {args.p}, degree {args.degree}: {len(names)}")
    for n in names:
        out.line(f"  {n}")


def cmd_apply(args, out):
    _no_dot(args)
    g = _group(args.spec)
    p = _prime(g, args.p)
    pres, table = g.data[p]
    word = parse_word(args.word)
    e = parse_element(pres, args.element)
    r = apply_word(pres, table, word, e)
    value = format_element(pres, r.value)
    out.tainted = r.tainted
    out.record = {"command": "apply", "group": g.name, "prime": p, "word": str(word),
                  "element": format_element(pres, e), "value": value, "tainted": r.tainted}
    out.line(f"[{word}]({format_element(pres, e)}) = {value}" + ("  (tainted)" if r.tainted else ""))


def cmd_bockstein(args, out):
    g = _group(args.spec)
    p = _prime(g, args.p)
    if args.diagram or args.format == "dot":
        out.fmt = "text"
        out.line(bockstein.bockstein_diagram(g, p, args.max_degree).rstrip("\n"))
        return
    top = g.presentation(p).top_degree
    rows = []
    for d in range(top + 1):
        bh = bockstein.bockstein_cohomology(g, p, d)
        pres = g.presentation(p)
        rows.append({"degree": d, "dimension": bh.dimension, "tainted": bh.tainted,
                     "representatives": [format_element(pres, r) for r in bh.representatives]})
        out.tainted = out.tainted or bh.tainted
    out.record = {"command": "bockstein", "group": g.name, "prime": p, "degrees": rows}
    out.line(f"BH^*({g.name}; Z/{p})")
    for r in rows:
        reps = ", ".join(r["representatives"])
        mark = "  (tainted)" if r["tainted"] else ""
        out.line(f"  {r['degree']:>3}  {r['dimension']}  {reps}{mark}")


def cmd_integral(args, out):
    _no_dot(args)
    g = _group(args.spec)
    p = _prime(g, args.p)
    try:
        pat = bockstein.reconstruct_integral(g, p)
    except bockstein.InconsistentPattern as e:
        raise UsageError(str(e))
    out.tainted = pat.tainted
    rows = [{"degree": n, "free": pat.f[n], "z_p": pat.z1[n], "z_p_higher": pat.zk[n],
             "group": pat.describe(n)} for n in range(len(pat.f))]
    out.record = {"command": "integral", "group": g.name, "prime": p, "tainted": pat.tainted,
                  "degrees": rows}
    out.line(f"H^*({g.name}; Z), {p}-primary part" + ("  (tainted)" if pat.tainted else ""))
    for r in rows:
        out.line(f"  {r['degree']:>3}  {r['group']}")


def _verdict_primes(args, g):
    if args.prime is not None:
        return [_prime(g, args.prime)]
    return list(g.torsion_primes)


def cmd_verdict(args, out):
    _no_dot(args)
    g = _group(args.spec)
    f = g.free_ranks()
    if not 0 <= args.degree <= g.dim or f[args.degree] < 1:
        raise UsageError(f"{g.name} has no free summand in degree {args.degree}")
    verdicts = []
    for p in _verdict_primes(args, g):
        v = thom.obstruction_verdict(g, p, args.degree, args.max_length, args.max_degree)
        verdicts.append(v)
        out.tainted = out.tainted or v.status == thom.TAINTED
    out.record = {"command": "verdict", "group": g.name, "degree": args.degree,
                  "verdicts": [v.record() for v in verdicts]}
    if not verdicts:
        out.line(f"{g.name} degree {args.degree}: no torsion, every class is in the image")
    for v in verdicts:
        rec = v.record()
        out.line(f"{g.name} degree {v.degree} mod {v.prime}: {v.status}"
                 f" ({rec['candidates']} candidate{'s' if rec['candidates'] != 1 else ''}"
                 f"{', ambiguous' if v.ambiguous else ''})")
        for w in rec["witnesses"]:
            out.line(f"  [{w['word']}]({w['candidate']}) = {w['value']}")


def _row_text(r):
    deg = "-" if r.min_degree is None else str(r.min_degree)
    return f"{r.group}: {r.surjective}, min degree {deg}"


def cmd_scan(args, out):
    _no_dot(args)
    g = _group(args.spec)
    r = thom.surjectivity_scan(g, args.max_length, args.max_degree)
    out.tainted = r.surjective == "conditional"
    out.record = {"command": "scan", **r.record()}
    out.line(_row_text(r))
    if r.verdict is not None:
        for w in r.verdict.record()["witnesses"]:
            out.line(f"  mod {r.prime}: [{w['word']}]({w['candidate']}) = {w['value']}")
    for c in r.caveats:
        out.line(f"  caveat: {c}")


def cmd_table1(args, out):
    _no_dot(args)
    names = args.groups if args.groups and not args.all_defaults else thom.DEFAULT_INSTANCES
    rows = [thom.surjectivity_scan(_group(n), args.max_length, args.max_degree) for n in names]
    out.tainted = any(r.surjective == "conditional" for r in rows)
    out.record = {"command": "table1", "rows": [r.record() for r in rows]}
    out.line(thom.format_table1(rows).rstrip("\n"))


def cmd_cells(args, out):
    if args.n < 1:
        raise UsageError("n must be at least 1")
    if args.diagram or args.format == "dot":
        if args.n < 2:
            raise UsageError("the incidence diagram needs n >= 2")
        out.fmt = "text"
        out.line(cellular.incidence_diagram(args.n).rstrip("\n"))
        return
    if args.homology:
        hom = cellular.integral_homology_so(args.n)
        out.record = {"command": "cells", "n": args.n, "homology": [h.record() for h in hom]}
        out.line(f"H_*(SO({args.n}); Z)")
        for h in hom:
            out.line(f"  {h.degree:>3}  {h.describe()}")
        return
    levels = cellular.cells_by_dimension(args.n)
    out.record = {"command": "cells", "n": args.n,
                  "cells": [{"dimension": k, "cells": [c.label for c in cs]}
                            for k, cs in enumerate(levels)]}
    out.line(f"cells of SO({args.n}): {sum(map(len, levels))}")
    for k, cs in enumerate(levels):
        out.line(f"  {k:>3}  {' '.join(c.label for c in cs)}")


def cmd_bound(args, out):
    _no_dot(args)
    g = _group(args.spec)
    if not 0 <= args.degree <= g.dim:
        raise UsageError(f"degree must lie in 0..{g.dim}")
    b = thom.multiplier_bound(g, args.degree)
    out.record = {"command": "bound", "group": g.name, "degree": args.degree, "bound": b}
    out.line(f"{g.name} degree {args.degree}: multiplier bound {b}")


def cmd_catalog(args, out):
    _no_dot(args)
    g = _group(args.spec)
    rec = catalog_record(g)
    out.record = {"command": "catalog", **rec}
    out.line(f"{g.name}: dim {g.dim}, rational degrees {list(g.rational_degrees)},"
             f" torsion primes {list(g.torsion_primes)}")
    for p, data in rec["primes"].items():
        gens = ", ".join(f"{x['name']}({x['degree']})^{x['nilpotency']}" for x in data["generators"])
        out.line(f"  mod {p}: {gens}")
        for a in data["actions"]:
            out.line(f"    {a['op']} {a['generator']} = {a['value']}")


def build_parser():
    default_fmt = os.environ.get("THOMCOB_FORMAT", "text")
    ap = argparse.ArgumentParser(prog="thomcob",
                                 description="Steenrod, Bockstein and Thom-image computations for compact Lie groups.")
    ap.add_argument("--format", choices=FORMATS, default=default_fmt if default_fmt in FORMATS else "text",
                    help="output format (default from THOMCOB_FORMAT, else text)")
    ap.add_argument("--strict", action="store_true", help="exit 3 if a result used unlisted operation data")
    ap.add_argument("--prime", type=int, default=None, help="restrict verdicts to one prime")
    ap.add_argument("--max-length", type=int, default=thom.DEFAULT_MAX_LENGTH, help="longest composite word")
    ap.add_argument("--max-degree", type=int, default=None, help="largest total degree of a composite")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("basis", help="monomial basis in one degree")
    s.add_argument("spec"), s.add_argument("p", type=int), s.add_argument("degree", type=int)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("apply", help="apply an operation word, e.g. Sq1,Sq2 or Q1")
    s.add_argument("spec"), s.add_argument("p", type=int), s.add_argument("word"), s.add_argument("element")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("bockstein", help="Bockstein cohomology, or the beta diagram")
    s.add_argument("spec"), s.add_argument("p", type=int)
    s.add_argument("--diagram", action="store_true")
    s.set_defaults(func=cmd_bockstein)

    s = sub.add_parser("integral", help="p-primary integral cohomology pattern")
    s.add_argument("spec"), s.add_argument("p", type=int)
    s.set_defaults(func=cmd_integral)

    s = sub.add_parser("verdict", help="is a free class of this degree in the Thom image")
    s.add_argument("spec"), s.add_argument("degree", type=int)
    s.set_defaults(func=cmd_verdict)

    s = sub.add_parser("scan", help="surjectivity verdict and minimal failing degree")
    s.add_argument("spec")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("table1", help="scan a list of groups (default: the standard instance list)")
    s.add_argument("groups", nargs="*")
    s.add_argument("--all-defaults", action="store_true")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("cells", help="cells of SO(n), incidence diagram or integral homology")
    s.add_argument("n", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--diagram", action="store_true")
    g.add_argument("--homology", action="store_true")
    s.set_defaults(func=cmd_cells)

    s = sub.add_parser("bound", help="multiplier bound for a degree")
    s.add_argument("spec"), s.add_argument("degree", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("catalog", help="dump the cohomology data of a group")
    s.add_argument("spec")
    s.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code
    if args.max_length < 1 or (args.max_degree is not None and args.max_degree < 1):
        stderr.write("thomcob: bounds must be positive\n")
        return EXIT_USAGE
    out = Output(args.format)
    try:
        args.func(args, out)
    except (UsageError, ParseError, SpecError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        stderr.write(f"thomcob: {msg}\n")
        return EXIT_USAGE
    out.emit(stdout)
    if args.strict and out.tainted:
        stderr.write("thomcob: result depends on unlisted operation data\n")
        return EXIT_TAINT
    return 0


if __name__ == "__main__":
    sys.exit(main())
