"""Command line interface.

    ecad build FORMULA --order v,u,x,y,z --ec z:x-y+z^2,y:... [--no-prune]
    ecad propagate FORMULA --order ...
    ecad designations FORMULA --order ... [--enumerate]
    ecad verify FORMULA --order ... --n 1000 --seed 42
    ecad bounds --n 5 --m 6 --d 2 --l 4 --mode ec-full

Exit status: 0 on success, 1 on usage or input errors, 2 when the input is
not well oriented (a lifting polynomial is nullified).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .ecprop import (Designation, designate_heuristic, enumerate_designations,
                     explicit_ecs, propagate)
from .errors import ECADError
from .formula import parse_formula
from .lifting import COMPLETE, CAD, MODES, TRIVIAL, build_cad
from .polycore import Polynomial, VariableOrder
from .verify import (BOUND_MODES, audit_structure, cell_bound, check_truth_invariance,
                     dominant_EC_full, dominant_EC_projection, dominant_P)

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers --------------------------------------------------------

def resolve_order(text, formula):
    if text:
        return VariableOrder([v.strip() for v in text.split(",") if v.strip()])
    names = sorted(set(_IDENT.findall(formula)))
    if not names:
        raise UsageError("formula has no variables; pass --order")
    return VariableOrder(names)


def parse_designation(specs, order):
    """``["z:x-y+z^2,y:y"]`` -> Designation; entries may also be repeated."""
    mapping = {}
    for spec in specs or []:
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            var, sep, poly = item.partition(":")
            var = var.strip()
            if not sep or var not in order:
                raise UsageError(f"bad --ec entry {item!r}; expected VAR:POLY")
            k = order.index(var) + 1
            if k in mapping:
                raise UsageError(f"two ECs designated for {var}")
            mapping[k] = Polynomial.parse(poly, order)
    return Designation.from_map(mapping)


def parse_levels(text, order):
    if text is None:
        return None
    levels = set()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        levels.add(order.index(item) + 1 if item in order else int(item))
    return levels


def _setup(args):
    order = resolve_order(args.order, args.formula)
    phi = parse_formula(args.formula, order)
    return order, phi


def _designation_for(args, order, phi):
    if getattr(args, "ec", None):
        return parse_designation(args.ec, order), "manual"
    if getattr(args, "no_ec", False):
        return Designation(), "none"
    ecs = explicit_ecs(phi)
    if not ecs:
        return Designation(), "none"
    return designate_heuristic(propagate(ecs, order)), "heuristic"


def _build_kwargs(args, order):
    return dict(prune=not args.no_prune, strict=args.strict_coeffs,
                complement=args.complement, mode=args.mode,
                prune_levels=parse_levels(args.prune_levels, order))


def _emit(args, payload, text):
    out = json.dumps(payload, indent=2) if args.json else text
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# -- subcommands -------------------------------------------------------------

def _cell_line(cad, cell):
    coords = ", ".join(f"{cad.order[i]}={c.describe(cad.order[i])}"
                       for i, c in enumerate(cell.sample))
    return f"  {list(cell.index)}  {coords}"


def cad_text(cad, source, show_cells=False):
    lines = [f"order: {' < '.join(cad.order)}",
             f"designation ({source}): {cad.designation.describe(cad.order)}"]
    if cad.layers is not None:
        lines.append(f"operators (k={cad.n}..2): {', '.join(cad.layers.trace())}")
    opts = cad.options
    lines.append(f"mode: {opts['mode']}, prune: {'on' if opts['prune'] else 'off'}"
                 + (f" at levels {opts['prune_levels']}" if opts.get("prune_levels") else ""))
    lines.append(f"status: {cad.status}")
    if cad.status != COMPLETE:
        w = cad.witness
        lines.append(f"witness: {w.poly} nullified over cell {list(w.cell_index)} "
                     f"(lifting to level {w.level})")
        return "\n".join(lines)
    counts = cad.level_counts()
    lines.append("cells per level: " + ", ".join(str(c) for c in counts))
    trivial = [c for c in cad.root.walk() if c.liftset == TRIVIAL]
    lines.append(f"leaves: {counts[-1]}  true: {len(cad.true_leaves())}  "
                 f"trivially extended cells: {len(trivial)}")
    if show_cells:
        lines.append("true cells:")
        lines.extend(_cell_line(cad, c) for c in cad.true_leaves())
        for k in range(1, cad.n):
            lifted = [c for c in cad.cells(k) if c.children and c.liftset != TRIVIAL]
            ext = [c for c in cad.cells(k) if c.liftset == TRIVIAL]
            lines.append(f"level {k}: {len(lifted)} lifted, {len(ext)} extended trivially")
            lines.extend("  lifted " + str(list(c.index)) for c in lifted)
            lines.extend("  cylinder " + str(list(c.index)) for c in ext)
    return "\n".join(lines)


def cmd_build(args):
    order, phi = _setup(args)
    D, source = _designation_for(args, order, phi)
    cad = build_cad(phi, order, D, **_build_kwargs(args, order))
    payload = cad.to_json()
    payload["formula"] = str(phi)
    if args.show_layers and cad.layers is not None:
        payload["layers"] = cad.layers.to_json()
    text = cad_text(cad, source, args.show_cells)
    if args.show_layers and cad.layers is not None:
        text += "\n" + cad.layers.to_text()
    _emit(args, payload, text)
    return EXIT_OK if cad.status == COMPLETE else EXIT_FAIL


def cmd_propagate(args):
    order, phi = _setup(args)
    ecs = explicit_ecs(phi)
    if not ecs:
        raise UsageError("formula has no equational constraints")
    table = propagate(ecs, order)
    counts = ", ".join(f"{order[k - 1]}: {c}" for k, c in table.counts().items())
    text = table.to_text() + f"\ncandidates per variable: {counts}"
    for w in table.warnings:
        text += f"\nwarning: {w}"
    _emit(args, {"candidates": table.to_json(), "warnings": table.warnings}, text)
    return EXIT_OK


def cmd_designations(args):
    order, phi = _setup(args)
    ecs = explicit_ecs(phi)
    if not ecs:
        raise UsageError("formula has no equational constraints")
    designations = enumerate_designations(propagate(ecs, order))
    rows = []
    lines = [f"{len(designations)} designations"]
    finals = []
    status = EXIT_OK
    for i, D in enumerate(designations, start=1):
        row = {"designation": D.to_json(order)}
        line = f"{i:3d}  {D.describe(order)}"
        if args.enumerate:
            cad = build_cad(phi, order, D, **_build_kwargs(args, order))
            row["status"] = cad.status
            if cad.status == COMPLETE:
                counts = cad.level_counts()
                row["counts"] = counts
                row["true"] = len(cad.true_leaves())
                finals.append(counts[-1])
                line += f"  cells {', '.join(map(str, counts))}  true {row['true']}"
            else:
                line += "  FAIL"
        rows.append(row)
        lines.append(line)
    payload = {"count": len(designations), "designations": rows}
    if args.enumerate:
        distinct = sorted(set(finals))
        payload["final_counts"] = distinct
        lines.append("distinct final cell counts: " + ", ".join(map(str, distinct)))
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_verify(args):
    order, phi = _setup(args)
    if args.cad:
        with open(args.cad) as fh:
            cad = CAD.from_json(json.load(fh))
        if list(cad.order) != list(order):
            raise UsageError("--order does not match the stored CAD")
        source = "loaded"
    else:
        D, source = _designation_for(args, order, phi)
        cad = build_cad(phi, order, D, **_build_kwargs(args, order))
    if cad.status != COMPLETE:
        _emit(args, {"status": cad.status}, f"status: {cad.status}; nothing to verify")
        return EXIT_FAIL
    audit = audit_structure(cad)
    truth = check_truth_invariance(cad, phi, args.n, args.seed)
    ok = audit.ok and truth.ok
    payload = {"counts": cad.level_counts(), "audit": audit.violations,
               "truth": truth.to_json(), "ok": ok}
    text = "\n".join([f"designation ({source}), cells per level: "
                      + ", ".join(map(str, cad.level_counts())),
                      audit.to_text(), truth.to_text(), "OK" if ok else "FAILED"])
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_USAGE


def cmd_bounds(args):
    if args.mode not in BOUND_MODES:
        raise UsageError(f"--mode must be one of {', '.join(BOUND_MODES)}")
    n, m, d, ell = args.n, args.m, args.d, args.l
    bound = cell_bound(n, m, d, ell, args.mode)
    if args.mode == "p-full" or ell == 0:
        dom = dominant_P(n, m, d)
    elif args.mode == "ec-projection":
        dom = dominant_EC_projection(n, m, d, ell)
    else:
        dom = dominant_EC_full(n, m, d, ell)
    payload = {"n": n, "m": m, "d": d, "l": ell, "mode": args.mode,
               "bound": str(bound), "dominant": str(dom)}
    text = f"bound: {bound}\ndominant term: {dom}"
    _emit(args, payload, text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _formula_args(p):
    p.add_argument("formula", help=r"e.g. 'x+y^2+z=0 /\ x^2+y^2+z^2-1>=0'")
    p.add_argument("--order", help="variables smallest first, e.g. v,u,x,y,z")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("-o", "--output", help="write output to a file")


def _lift_args(p):
    p.add_argument("--ec", action="append", metavar="VAR:POLY[,...]",
                   help="designate ECs by main variable (default: heuristic choice)")
    p.add_argument("--no-ec", action="store_true", help="designate no ECs")
    p.add_argument("--no-prune", action="store_true", help="lift over every cell")
    p.add_argument("--prune-levels", metavar="K,...",
                   help="apply the section test only when lifting to these levels")
    p.add_argument("--strict-coeffs", action="store_true",
                   help="include every coefficient in projections")
    p.add_argument("--complement", choices=("disc", "res"), default="disc",
                   help="extra projection factors for the non-EC basis")
    p.add_argument("--mode", choices=MODES, default="ec")


def make_parser():
    parser = _Parser(prog="ecad", description="CAD with multiple equational constraints")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("build", help="build a truth-invariant CAD")
    _formula_args(p)
    _lift_args(p)
    p.add_argument("--show-cells", action="store_true", help="list true cells and lifting")
    p.add_argument("--show-layers", action="store_true", help="print projection layers")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("propagate", help="explicit and propagated ECs")
    _formula_args(p)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("designations", help="list admissible designations")
    _formula_args(p)
    _lift_args(p)
    p.add_argument("--enumerate", action="store_true", help="build a CAD for each")
    p.set_defaults(func=cmd_designations)

    p = sub.add_parser("verify", help="audit a CAD and sample its truth invariance")
    _formula_args(p)
    _lift_args(p)
    p.add_argument("--cad", help="check a CAD saved with build --json instead")
    p.add_argument("--n", type=int, default=1000, help="number of random points")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="cell-count bounds, evaluated exactly")
    p.add_argument("--n", type=int, required=True, help="variables")
    p.add_argument("--m", type=int, required=True, help="polynomials")
    p.add_argument("--d", type=int, required=True, help="maximum degree")
    p.add_argument("--l", type=int, default=0, help="equational constraints")
    p.add_argument("--mode", default="p-full", help="/".join(BOUND_MODES))
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ECADError, ValueError) as e:
        print(f"ecad: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
