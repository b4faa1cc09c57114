"""Batch command-line frontend.

Subcommands: `verify` runs named invariant suites, `dims` emits the
(n, l) dimension table, `grt solve` computes one graded component of the
relation solutions, `char` tabulates the dihedral characters, and
`soule-bracket` expands brackets of the low-weight generators with their
depth-2 coordinates.  Output is deterministic: running any command twice
with the same flags produces byte-identical bytes.

Exit codes: 0 success / verified, 1 verification failure, 2 usage error.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .depth2 import depth2_coordinates, dims_row, d12_characters, f_seq, \
    chi13_multiplicity
from .exactla import format_scalar
from .freealg import weight_cap
from .lie import lie_terms_json, soule
from .tder import ihara
from .verify import SCHEMA_VERSION, SUITES, run_suite

DIMS_FIELDS = ("n", "l", "weight", "kernel_dim", "poly_dim",
               "chi13_multiplicity", "agree")
CHAR_FIELDS = ("n", "chi_e", "chi_s", "chi_r", "chi_r2", "chi_r3", "chi_rs",
               "f_n", "chi13_multiplicity")


class _Output:
    def __init__(self, path):
        self.path = path
        self.handle = open(path, "w") if path else sys.stdout

    def write(self, text):
        self.handle.write(text)

    def close(self):
        if self.path:
            self.handle.close()


def _cell(value):
    if value is None:
        return "n/a"
    if value is True:
        return "yes"
    if value is False:
        return "NO"
    return str(value)


def _emit_rows(out, rows, fields, fmt):
    """Stream rows one at a time in the requested format."""
    if fmt == "json":
        out.write('{"schema": %d, "rows": [\n' % SCHEMA_VERSION)
        for i, row in enumerate(rows):
            sep = ",\n" if i else ""
            out.write(sep + json.dumps({k: row[k] for k in fields}))
        out.write("\n]}\n")
    elif fmt == "csv":
        out.write(",".join(fields) + "\n")
        for row in rows:
            out.write(",".join(_cell(row[k]) for k in fields) + "\n")
    else:
        widths = {k: max(len(k), 6) for k in fields}
        out.write("  ".join(k.ljust(widths[k]) for k in fields) + "\n")
        for row in rows:
            out.write("  ".join(_cell(row[k]).ljust(widths[k]) for k in fields) + "\n")


def _parse_orders(text):
    try:
        orders = tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}")
    if not orders or any(l < 1 for l in orders):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return orders


def _dims_cell(args):
    n, l = args
    return dims_row(n, l)


def cmd_dims(args, out):
    cells = [(n, l) for n in range(args.n_min, args.n_max + 1) for l in args.l]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = pool.map(_dims_cell, cells)
            _emit_rows(out, rows, DIMS_FIELDS, args.format)
    else:
        _emit_rows(out, (dims_row(n, l) for n, l in cells), DIMS_FIELDS, args.format)
    return 0


def cmd_char(args, out):
    fs = f_seq(args.n_max)
    def rows():
        for n in range(args.n_max + 1):
            chi = d12_characters(n)
            yield {
                "n": n, "chi_e": chi[0], "chi_s": chi[1], "chi_r": chi[2],
                "chi_r2": chi[3], "chi_r3": chi[4], "chi_rs": chi[5],
                "f_n": fs[n], "chi13_multiplicity": chi13_multiplicity(n),
            }
    _emit_rows(out, rows(), CHAR_FIELDS, args.format)
    return 0


def cmd_verify(args, out):
    report = run_suite(args.suite, seed=args.seed, max_weight=args.max_weight,
                       jobs=args.jobs)
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for check in report["checks"]:
            status = "PASS" if check["pass"] else "FAIL"
            detail = check.get("detail", "")
            out.write(f"{status}  {check['suite']}/{check['name']}"
                      + (f"  ({detail})" if detail else "") + "\n")
        out.write(f"{'PASS' if report['pass'] else 'FAIL'}  suite={report['suite']} "
                  f"seed={report['seed']} max-weight={report['max_weight']}\n")
    return 0 if report["pass"] else 1


def cmd_grt_solve(args, out):
    from .grt import grt_solve
    sol = grt_solve(args.weight)
    if args.format == "json":
        out.write(json.dumps({"schema": SCHEMA_VERSION, **sol.to_json()}, indent=2) + "\n")
    else:
        out.write(f"weight {sol.weight}: dimension {sol.dimension}\n")
        for vec, elem in zip(sol.coordinates, sol.elements):
            out.write("  coordinates: ["
                      + ", ".join(format_scalar(v) for v in vec) + "]\n")
            from .freealg import format_poly
            out.write("  expansion: " + format_poly(elem.poly) + "\n")
    return 0


def cmd_soule_bracket(args, out):
    m1, m2 = args.weights
    elems = {}
    for m in (m1, m2):
        elems[m] = soule(m) if m in (3, 5) else None
    if None in elems.values():
        from .grt import grt_solve
        for m, e in elems.items():
            if e is None:
                sol = grt_solve(m)
                if sol.dimension != 1:
                    raise ValueError(f"weight {m} has solution dimension {sol.dimension}")
                elems[m] = sol.elements[0]
    psi = ihara(elems[m1], elems[m2])
    n = m1 + m2 - args.depth
    part = psi.component(y_degree=args.depth)
    payload = {
        "schema": SCHEMA_VERSION,
        "weights": [m1, m2],
        "depth": args.depth,
        "bracket": lie_terms_json(psi),
        "depth_component": lie_terms_json(part),
    }
    if args.depth == 2:
        coords = depth2_coordinates(part, n)
        payload["bracket_basis_coordinates"] = (
            None if coords is None else [format_scalar(v) for v in coords])
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        from .freealg import format_poly
        out.write(f"bracket of weights {m1},{m2}; depth-{args.depth} part:\n")
        out.write("  " + format_poly(part.poly) + "\n")
        if args.depth == 2:
            out.write("  coordinates over [ad_x^k y, ad_x^(n-k) y]: "
                      + _cell(payload["bracket_basis_coordinates"]) + "\n")
    return 0


def _add_common(parser, fmt_choices=("json", "csv", "text"), default_fmt="text"):
    parser.add_argument("--format", choices=fmt_choices, default=default_fmt)
    parser.add_argument("--out", metavar="PATH", default=None,
                        help="write output to a file instead of stdout")
    parser.add_argument("--max-weight", type=int, default=12,
                        help="weight cap for the run (default 12)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks (default 0)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for independent cells")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="liediv",
        description="Exact free Lie algebra calculus: divergence cocycles, "
                    "grt/krv membership, depth-2 kernel tables.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("suite", choices=["all"] + list(SUITES))
    _add_common(p, fmt_choices=("json", "text"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dims", help="kernel/polynomial/character dimension table")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--l", type=_parse_orders, default=(1,),
                   help="comma-separated list of orders, e.g. 1,2,3")
    _add_common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("grt", help="Grothendieck-Teichmuller computations")
    grt_sub = p.add_subparsers(dest="grt_command", required=True)
    ps = grt_sub.add_parser("solve", help="solve the relations in one weight")
    ps.add_argument("--weight", type=int, required=True)
    _add_common(ps, fmt_choices=("json", "text"), default_fmt="json")
    ps.set_defaults(func=cmd_grt_solve)

    p = sub.add_parser("char", help="dihedral character table")
    p.add_argument("--n-max", type=int, default=12)
    _add_common(p)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("soule-bracket", help="bracket of two generators")
    p.add_argument("--weights", type=_parse_orders, default=(3, 5),
                   help="two odd weights, e.g. 3,5")
    p.add_argument("--depth", type=int, default=2)
    _add_common(p, fmt_choices=("json", "text"), default_fmt="json")
    p.set_defaults(func=cmd_soule_bracket)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "weights", None) is not None and len(args.weights) != 2:
        parser.error("--weights takes exactly two weights")
    if args.max_weight < 1:
        parser.error("--max-weight must be positive")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    out = _Output(args.out)
    try:
        with weight_cap(args.max_weight):
            return args.func(args, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
