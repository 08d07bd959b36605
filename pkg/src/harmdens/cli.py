"""``harmdens`` command line.

Subcommands: expand, flatten, prescribe, classify, verify. Exact values are
printed as reduced ``p/q`` strings; floats appear only in grid rows.
Exit status is 1 for a violated precondition and 2 when ``verify`` fails.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .asymptotics import SUPPORTED_ORDERS, HSequence, eval_H, extract_H
from .deformation import (TOL_NEWTON, TOL_QUAD, DeformationProblem, achieved_sequence,
                          flatten_series, prescribe, solve_numeric)
from .errors import ConfigError, HarmdensError
from .models import catalog, family_names, make_space, spaces_in_dimension, theta_tilde_series, trace_table
from .verification import run_all
from .weyl import odd_product_spectrum, weyl_spectrum

EXIT_DOMAIN = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def parse_grid(text):
    try:
        a, b, h = (float(x) for x in text.split(":"))
    except ValueError:
        raise ConfigError(f"grid must look like start:stop:step, got {text!r}") from None
    if not h > 0:
        raise ConfigError(f"grid step must be positive, got {h}")
    if not 0 < a <= b:
        raise ConfigError(f"grid needs 0 < start <= stop, got {a}:{b}")
    n = int(math.floor((b - a) / h + 1e-9))
    return [round(a + i * h, 12) for i in range(n + 1)]


def parse_coeffs(text):
    try:
        vals = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"coefficients must be p/q rationals separated by commas: {text!r}") from None
    if vals[0] != 1:
        raise ConfigError("target coefficient list must begin with 1")
    return HSequence(vals)


def _space(args, required=True):
    if args.space is None:
        if required:
            raise ConfigError("--space is required")
        return None
    return make_space(args.space, k=args.k, m=args.m)


def _fr(values):
    return [str(v) for v in values]


def _g(x):
    return f"{x:.17g}"


# -- subcommands -------------------------------------------------------------
# Each returns (json_document, header, rows); rows feed the csv and table formats.

def cmd_expand(args):
    space = _space(args)
    order = 8 if args.order is None else args.order
    dens = theta_tilde_series(space, order)
    table = trace_table(space)
    seq = extract_H(dens)
    formula = {nu: eval_H(table, nu) for nu in SUPPORTED_ORDERS if nu <= order}
    doc = {"space": space.name, "m": space.dim, "order": order}
    doc.update({f"H{nu}": str(v) for nu, v in enumerate(seq)})
    doc["formula"] = {f"H{nu}": str(v) for nu, v in formula.items()}
    doc["agreement"] = all(seq[nu] == v for nu, v in formula.items())
    rows = [[nu, str(v), str(formula[nu]) if nu in formula else ""] for nu, v in enumerate(seq)]
    return doc, ["nu", "series", "formula"], rows


def _grid_rows(sol):
    return [[_g(x) for x in row] for row in sol.grid]


def cmd_flatten(args):
    space = _space(args)
    order = 10 if args.order is None else args.order
    sol = flatten_series(theta_tilde_series(space, order), space.dim, order)
    doc = {"space": space.name, "m": space.dim, "order": order,
           "psi": _fr(sol.psi_series), "eta": _fr(sol.eta_series)}
    if args.grid:
        num = solve_numeric(DeformationProblem.for_space(space), parse_grid(args.grid),
                            tol_newton=args.tol_newton, tol_quad=args.tol_quad)
        doc["grid"] = [row._asdict() for row in num.grid]
        doc["grid_complete"] = num.complete
        doc["reached_r"] = num.reached_r
        return doc, ["r", "beta", "eta", "psi", "residual"], _grid_rows(num)
    return doc, ["k", "psi", "eta"], _coeff_rows(sol)


def _coeff_rows(sol, extra=()):
    eta, psi = sol.eta_series, sol.psi_series
    rows = []
    for k in range(eta.order + 1):
        rows.append([k, str(psi[k]) if k <= psi.order else "", str(eta[k])]
                    + [str(col[k]) if k < len(col) else "" for col in extra])
    return rows


def cmd_prescribe(args):
    space = _space(args)
    if not args.coeffs:
        raise ConfigError("--coeffs is required for prescribe")
    target = parse_coeffs(args.coeffs)
    order = target.order if args.order is None else args.order
    sol = prescribe(space, target, order)
    achieved = achieved_sequence(space, sol)
    padded = list(target[:order + 1]) + [Fraction(0)] * (order + 1 - len(target))
    doc = {"space": space.name, "m": space.dim, "order": order,
           "target": _fr(padded), "psi": _fr(sol.psi_series), "eta": _fr(sol.eta_series),
           "achieved": achieved.to_json(), "round_trip": list(achieved) == padded}
    return doc, ["k", "psi", "eta", "target", "achieved"], _coeff_rows(sol, (padded, achieved))


def _classify_spaces(args):
    if args.space is not None:
        return [_space(args)]
    if args.m is not None:
        base = args.m - 1 if args.odd else args.m
        return spaces_in_dimension(base)
    return [s for s in catalog() if s.family in family_names()[:7] and s.dim >= 4]


def cmd_classify(args):
    docs, rows = [], []
    for space in _classify_spaces(args):
        sig = (odd_product_spectrum if args.odd else weyl_spectrum)(space)
        m = sig.dim
        label = f"{space.name} (flattened) x R" if args.odd else space.name
        docs.append({"space": label, "m": m, **sig.to_json()})
        rows += [[label, m, str(ev), mult] for ev, mult in sig.spectrum]
    return docs, ["space", "m", "eigenvalue", "multiplicity"], rows


def cmd_verify(args):
    results = run_all()
    doc = [{"criterion": r.number, "name": r.name, "passed": r.passed,
            "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results]
    rows = [[r.number, "PASS" if r.passed else "FAIL", r.name, r.detail] for r in results]
    return doc, ["criterion", "status", "name", "detail"], rows


COMMANDS = {"expand": cmd_expand, "flatten": cmd_flatten, "prescribe": cmd_prescribe,
            "classify": cmd_classify, "verify": cmd_verify}


def render(fmt, doc, header, rows):
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def build_parser():
    p = _Parser(prog="harmdens", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--space", help="cp, hp, op2, chp, hhp, hop2, flat, sphere, hsphere")
        s.add_argument("--k", type=int)
        s.add_argument("--m", type=int)
        s.add_argument("--order", type=int)
        s.add_argument("--grid", metavar="A:B:H")
        s.add_argument("--coeffs", metavar="P/Q,...")
        s.add_argument("--odd", action="store_true", help="odd-dimensional product construction")
        s.add_argument("--format", choices=("json", "csv", "table"),
                       default="table" if name == "verify" else "json")
        s.add_argument("--out")
        s.add_argument("--tol-newton", type=float, default=TOL_NEWTON, help=argparse.SUPPRESS)
        s.add_argument("--tol-quad", type=float, default=TOL_QUAD, help=argparse.SUPPRESS)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.order is not None and args.order < 0:
            raise ConfigError(f"--order must be >= 0, got {args.order}")
        doc, header, rows = COMMANDS[args.command](args)
    except (HarmdensError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"harmdens {args.command}: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_DOMAIN
    text = render(args.format, doc, header, rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify":
        failed = [d for d in doc if not d["passed"]]
        if failed:
            for d in failed:
                print(f"FAILED criterion {d['criterion']} ({d['name']}): {d['detail']}",
                      file=sys.stderr)
            return EXIT_VERIFY
    return 0


if __name__ == "__main__":
    sys.exit(main())
