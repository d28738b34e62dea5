"""Command-line interface.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 bad input,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .dsl import PresentationError, format_presentation, load_presentation, parse_path
from .field import format_scalar, parse_field
from .groebner import groebner_basis
from .modules import (ModuleInvariantError, PointError, build_module, decide_iso,
                      detour_bijection, iso_system, layered_graph, transport_mast)
from .polynomial import PolynomialSyntaxError, parse_polynomials
from .quiver import QuiverError
from .realize import format_system, realize_variety, verify_realization
from .variety import (NonTermination, enumerate_detours, enumerate_masts, is_route,
                      variety_generators)

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _read_text(spec: str) -> str:
    """A literal value, or the contents of a file when written as ``@path``."""
    if spec.startswith("@"):
        with open(spec[1:], encoding="utf-8") as fh:
            return fh.read()
    return spec


def _parse_point(spec: str, field, n: int, what: str = "point"):
    text = _read_text(spec).strip()
    items = [s.strip() for s in text.replace("\n", ",").split(",") if s.strip()]
    try:
        point = tuple(field(s) for s in items)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from None
    if len(point) != n:
        raise UsageError(f"{what} has {len(point)} coordinates, expected {n}")
    return point


def _fmt_point(point) -> str:
    return ",".join(format_scalar(c) for c in point)


def _load(args):
    pres = load_presentation(args.presentation)
    mast = parse_path(args.mast, pres.quiver) if getattr(args, "mast", None) else None
    return pres, mast


def _ideal_text(ideal) -> str:
    return "\n".join(str(f) for f in ideal.polys)


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args, out):
    pres, _ = _load(args)
    q = pres.quiver
    out.write(f"vertices {len(q.vertices)}, arrows {len(q.arrows)}, "
              f"relations {len(pres.relations)}, field {pres.field}\n")
    for note in pres.notes:
        out.write(f"note: {note}\n")
    out.write(format_presentation(pres))
    return EXIT_YES


def cmd_detours(args, out):
    pres, mast = _load(args)
    table = enumerate_detours(pres, mast)
    out.write((table.to_json() if args.json else table.to_text()) + "\n")
    return EXIT_YES


def cmd_route(args, out):
    pres, mast = _load(args)
    q = parse_path(args.path, pres.quiver)
    verdict = is_route(q, mast)
    out.write(f"{q.to_text()}: {'route' if verdict else 'not a route'} on {mast.to_text()}\n")
    return EXIT_YES if verdict else EXIT_NO


def cmd_variety(args, out):
    pres, mast = _load(args)
    v = variety_generators(pres, mast, extra_length=args.extra)
    ideal = groebner_basis(v.ideal) if args.groebner else v.ideal
    if args.json:
        doc = {
            "schema": "uniserial.ideal/1",
            "mast": mast.to_text(),
            "nvars": v.nvars,
            "order": ideal.order,
            "groebner": bool(args.groebner),
            "variables": v.table.to_rows(),
            "generators": [str(f) for f in ideal.polys],
        }
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(f"# mast {mast.to_text()}, N = {v.nvars}, "
                  f"{'reduced Groebner basis' if args.groebner else 'generators'}\n")
        if ideal.polys:
            out.write(_ideal_text(ideal) + "\n")
        else:
            out.write("# zero ideal: the variety is all of affine space\n")
    return EXIT_YES


def cmd_nonempty(args, out):
    pres, mast = _load(args)
    verdict = variety_generators(pres, mast).is_nonempty()
    out.write("nonempty\n" if verdict else "empty\n")
    return EXIT_YES if verdict else EXIT_NO


def cmd_module(args, out):
    pres, mast = _load(args)
    v = variety_generators(pres, mast)
    point = _parse_point(args.point, pres.field, v.nvars)
    m = build_module(pres, mast, point, v)
    top = None
    if args.top:
        top = _parse_point(args.top, pres.field, m.dimension, "top element")
    if args.graph == "dot":
        out.write(layered_graph(m, top).to_dot())
    elif args.graph == "text":
        out.write(layered_graph(m, top).to_text())
    else:
        out.write(m.to_text() + "\n")
    return EXIT_YES


def cmd_isosys(args, out):
    pres, mast = _load(args)
    out.write(iso_system(pres, mast).to_text() + "\n")
    return EXIT_YES


def cmd_iso(args, out):
    pres, mast = _load(args)
    system = iso_system(pres, mast)
    k = _parse_point(args.point_a, pres.field, system.n, "first point")
    k2 = _parse_point(args.point_b, pres.field, system.n, "second point")
    result = decide_iso(system, k, k2)
    if result.isomorphic:
        out.write("isomorphic\n")
        out.write("witness Z = (" + _fmt_point(result.witness) + ")\n")
        return EXIT_YES
    out.write("not isomorphic\n")
    return EXIT_NO


def cmd_transport(args, out):
    pres, mast = _load(args)
    q = parse_path(args.to, pres.quiver)
    v = variety_generators(pres, mast)
    point = _parse_point(args.point, pres.field, v.nvars)
    result = transport_mast(pres, mast, q, point, source_variety=v)
    if result is None:
        out.write("not in overlap\n")
        return EXIT_NO
    out.write(_fmt_point(result.point) + "\n")
    return EXIT_YES


def cmd_bijection(args, out):
    pres, mast = _load(args)
    q = parse_path(args.to, pres.quiver)
    rho = detour_bijection(pres, mast, q)
    tp, tq = enumerate_detours(pres, mast), enumerate_detours(pres, q)
    for d in tp:
        a, ul = rho[(d.arrow, d.u_length)]
        e = tq.lookup(a, ul)
        out.write(f"({d.arrow}, {tp.u(d).to_text()}) -> ({e.arrow}, {tq.u(e).to_text()})"
                  f"  size {d.size}\n")
    return EXIT_YES


def cmd_masts(args, out):
    pres, _ = _load(args)
    vertices = [s.strip() for s in args.vertices.split(",") if s.strip()]
    masts = enumerate_masts(pres, vertices)
    for p in masts:
        if args.variety_all:
            v = variety_generators(pres, p)
            gens = "; ".join(str(f) for f in groebner_basis(v.ideal).polys) or "0"
            out.write(f"{p.to_text()}\tN={v.nvars}\t{gens}\n")
        else:
            out.write(p.to_text() + "\n")
    return EXIT_YES if masts else EXIT_NO


def cmd_realize(args, out):
    field = parse_field(args.field)
    with open(args.polynomials, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    polys = parse_polynomials(lines, nvars=args.nvars, field=field)
    nvars = args.nvars if args.nvars is not None else (polys[0].nvars if polys else 0)
    if nvars < 1:
        raise UsageError("cannot infer the number of variables; pass --nvars")
    r = realize_variety(polys, nvars, field)
    text = format_presentation(r.presentation)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(r.correspondence_json() + "\n")
    ok = verify_realization(r)
    out.write(f"# mast {r.mast.to_text()}\n")
    out.write("# multilinear system:\n")
    for line in format_system(r).splitlines():
        out.write(f"#   {line}\n")
    out.write(f"# verification: {'ok' if ok else 'FAILED'}\n")
    return EXIT_YES if ok else EXIT_INTERNAL


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uniserial",
                                 description="Uniserial varieties of path algebras with relations.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, mast=True, mast_required=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("presentation", help="presentation file")
        if mast:
            sp.add_argument("-p", "--mast", required=mast_required,
                            help="mast as a path literal, e.g. 'beta*alpha'")
        sp.set_defaults(func=func)
        return sp

    command("validate", cmd_validate, "parse a presentation and print it normalized", mast=False)
    sp = command("detours", cmd_detours, "list detours and variables of a mast")
    sp.add_argument("--json", action="store_true")
    sp = command("route", cmd_route, "decide whether a path is a route on the mast")
    sp.add_argument("--path", required=True)
    sp = command("variety", cmd_variety, "polynomial generators of the variety of a mast")
    sp.add_argument("--groebner", action="store_true", help="print the reduced Groebner basis")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--extra", type=int, default=0, metavar="C",
                    help="also use left multipliers up to length l + C")
    command("nonempty", cmd_nonempty, "exit 0 if the variety is nonempty, 1 otherwise")
    sp = command("module", cmd_module, "matrices of the module at a point")
    sp.add_argument("--point", required=True, help="comma-separated coordinates or @file")
    sp.add_argument("--graph", choices=("dot", "text"))
    sp.add_argument("--top", help="alternative top element as coordinates in b0..bl")
    command("isosys", cmd_isosys, "print the isomorphism system in X, Y, Z")
    sp = command("iso", cmd_iso, "decide isomorphism of the modules at two points")
    sp.add_argument("--point-a", required=True)
    sp.add_argument("--point-b", required=True)
    sp = command("transport", cmd_transport, "move a point to another mast")
    sp.add_argument("--to", required=True, help="target mast")
    sp.add_argument("--point", required=True)
    sp = command("bijection", cmd_bijection, "match the detours of two parallel masts")
    sp.add_argument("--to", required=True, help="second mast")
    sp = command("masts", cmd_masts, "paths through a vertex sequence", mast=False)
    sp.add_argument("--vertices", required=True, help="comma-separated vertex ids")
    sp.add_argument("--variety-all", action="store_true",
                    help="also print the reduced ideal of every mast")

    sp = sub.add_parser("realize", help="realize a polynomial system as a uniserial variety")
    sp.add_argument("polynomials", help="file with one polynomial per line")
    sp.add_argument("--nvars", type=int)
    sp.add_argument("--field", default="Q")
    sp.add_argument("-o", "--output", help="write the presentation here")
    sp.add_argument("--json-out", help="write the variable correspondence as JSON")
    sp.set_defaults(func=cmd_realize)
    return ap


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    try:
        return args.func(args, out)
    except (PresentationError, PolynomialSyntaxError, QuiverError, PointError,
            UsageError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ModuleInvariantError, NonTermination) as exc:
        err.write(f"internal invariant violated: {exc}\n")
        return EXIT_INTERNAL
    except (ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
