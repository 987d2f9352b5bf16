"""Command-line front end.

Subcommands: ``eigs``, ``solve``, ``table1``, ``fig3``, ``gapcheck`` and
``oracle-compare``.  Output is CSV (``#``-prefixed config header, ``%.17g``
numbers) or JSON, written to ``--output`` atomically or to stdout.

Exit status: 0 on success, 2 on invalid input, 3 on numerical failure.
"""

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .convergence import (check_gap_bound, eigen_gap_table, grid_l2,
                          solution_convergence)
from .eigen import BoundarySpec, eigenpairs
from .errors import NumericalError
from .oracle import fd_solve
from .quadrature import Integrand
from .solver import DEFAULT_N, solve_spectral

EXIT_USAGE = 2
EXIT_NUMERICAL = 3

U0_PRESETS = {
    "sin-pi": Integrand(lambda x: np.sin(np.pi * x), math.pi),
    "sin-2pi": Integrand(lambda x: np.sin(2.0 * np.pi * x), 2.0 * math.pi),
    "bump": Integrand(lambda x: 4.0 * x * (1.0 - x), 0.0),
    "zero": Integrand(lambda x: 0.0, 0.0),
}


class UsageError(Exception):
    pass


def fmt(v):
    return "%.17g" % v


def parse_floats(text):
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not vals or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected finite numbers: {text!r}")
    return vals


def parse_u0(text):
    """A preset name, or comma-separated coefficients ``b_k`` of ``sum_k b_k sin(k pi x)``."""
    if text in U0_PRESETS:
        return U0_PRESETS[text]
    coeffs = np.array(parse_floats(text))
    ks = np.arange(1, coeffs.size + 1)

    def series(x):
        x = np.asarray(x, dtype=float)
        return np.sin(np.pi * np.multiply.outer(x, ks)) @ coeffs

    return Integrand(series, math.pi * coeffs.size)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="fracspec", description="Spectral solver for time-fractional diffusion "
                "with Dirichlet or Robin boundaries.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_opts(sp):
        sp.add_argument("--output", "-o", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    def boundary_opts(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--dirichlet", action="store_true", help="homogeneous Dirichlet boundary")
        g.add_argument("--beta", type=float, help="Robin coefficient beta > 0")

    sp = sub.add_parser("eigs", help="eigenvalue/amplitude table")
    boundary_opts(sp)
    sp.add_argument("--N", type=int, default=10, help="number of eigenpairs")
    output_opts(sp)

    sp = sub.add_parser("solve", help="evaluate the series solution on an (x, t) grid")
    sp.add_argument("--alpha", type=float, required=True)
    boundary_opts(sp)
    sp.add_argument("--u0", type=parse_u0, default="sin-pi",
                    help="sin-pi | sin-2pi | bump | zero | b1,b2,... (sine coefficients)")
    sp.add_argument("--N", type=int, default=DEFAULT_N)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--nx", type=int, default=101, help="number of equispaced x points")
    sp.add_argument("--ts", type=parse_floats, default=None,
                    help="comma-separated evaluation times (default 0,0.01,0.1,T)")
    output_opts(sp)

    for name, helptext in (("table1", "Robin eigenvalues for a beta sweep"),
                           ("gapcheck", "eigenvalue gap report")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--betas", type=parse_floats, default=[1e2, 1e3, 1e4, 1e5, 1e6])
        sp.add_argument("--kmax", type=int, default=10)
        output_opts(sp)

    sp = sub.add_parser("fig3", help="Robin and Dirichlet profiles at one time")
    sp.add_argument("--alpha", type=float, default=0.8)
    sp.add_argument("--u0", type=parse_u0, default="sin-pi")
    sp.add_argument("--betas", type=parse_floats, default=[1e1, 1e2, 1e3, 1e4, 1e5])
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--N", type=int, default=16)
    sp.add_argument("--nx", type=int, default=101, help="number of equispaced x points")
    output_opts(sp)

    sp = sub.add_parser("oracle-compare", help="spectral vs finite-difference distances")
    sp.add_argument("--alpha", type=float, default=0.8)
    boundary_opts(sp)
    sp.add_argument("--u0", type=parse_u0, default="sin-pi")
    sp.add_argument("--N", type=int, default=DEFAULT_N)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--nx", type=int, default=127)
    sp.add_argument("--nt", type=int, default=512)
    sp.add_argument("--refinements", type=int, default=2,
                    help="number of successive (nx, nt) doublings")
    sp.add_argument("--grid-output", help="write the coarsest finite-difference grid as CSV")
    output_opts(sp)
    return p


def _boundary(args):
    if args.dirichlet:
        return BoundarySpec.dirichlet()
    return BoundarySpec.robin(args.beta)


def _workers():
    raw = os.environ.get("FRACSPEC_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"FRACSPEC_THREADS must be a positive integer, got {raw!r}")
    return n


def _csv(header, columns, rows):
    lines = [f"# {k}: {v}" for k, v in header]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fracspec-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _floats(vals):
    return ",".join(fmt(v) for v in vals)


def cmd_eigs(args, workers):
    bc = _boundary(args)
    pairs = eigenpairs(bc, args.N)
    if args.format == "json":
        return _json({"boundary": bc.to_dict(),
                      "pairs": [{"k": p.index, "lambda": p.lam, "amplitude": p.amplitude}
                                for p in pairs]})
    return _csv([("command", "eigs"), ("boundary", bc), ("N", args.N)],
                ["k", "lambda", "amplitude"],
                [(str(p.index), p.lam, p.amplitude) for p in pairs])


def cmd_solve(args, workers):
    bc = _boundary(args)
    sol = solve_spectral(args.alpha, bc, args.u0, N=args.N, T=args.T)
    xs = np.linspace(0.0, 1.0, args.nx)
    ts = args.ts if args.ts is not None else sorted({0.0, 0.01, 0.1, args.T})
    grid = sol.evaluate_grid(xs, ts)
    if args.format == "json":
        return _json({"solution": sol.to_dict(), "xs": list(map(float, xs)),
                      "ts": list(map(float, ts)), "values": grid.tolist()})
    header = [("command", "solve"), ("alpha", fmt(args.alpha)), ("boundary", bc),
              ("N", args.N), ("T", fmt(args.T)), ("ts", _floats(ts))]
    cols = ["x"] + ["t=" + fmt(t) for t in ts]
    return _csv(header, cols, [(x, *row) for x, row in zip(xs, grid)])


def cmd_table1(args, workers):
    report = eigen_gap_table(args.betas, args.kmax, workers=workers)
    betas = report.metadata["betas"]
    lam = {(r.k, r.beta): r for r in report.eigen_rows}
    if args.format == "json":
        return _json({"betas": betas, "rows": [
            {"k": k, "lambda_beta": [lam[k, b].lam_robin for b in betas],
             "lambda_dirichlet": lam[k, betas[0]].lam_dirichlet}
            for k in range(1, args.kmax + 1)]})
    cols = ["k"] + ["beta=" + fmt(b) for b in betas] + ["k2pi2"]
    rows = [(str(k), *(lam[k, b].lam_robin for b in betas), lam[k, betas[0]].lam_dirichlet)
            for k in range(1, args.kmax + 1)]
    return _csv([("command", "table1"), ("betas", _floats(betas)), ("kmax", args.kmax)], cols, rows)


def cmd_gapcheck(args, workers):
    report = eigen_gap_table(args.betas, args.kmax, workers=workers)
    check = check_gap_bound(report)
    if args.format == "json":
        out = report.to_dict()
        out["check"] = check._asdict()
        return _json(out)
    header = [("command", "gapcheck"), ("betas", _floats(report.metadata["betas"])),
              ("kmax", args.kmax), ("passes", str(check.passes).lower()),
              ("c1_hat", fmt(check.c1_hat)),
              ("gaps_decreasing", str(check.gaps_decreasing).lower())]
    cols = ["k", "beta", "lambda_beta", "lambda_dirichlet", "gap", "normalized"]
    rows = [(str(r.k), r.beta, r.lam_robin, r.lam_dirichlet, r.gap, r.normalized)
            for r in report.eigen_rows]
    return _csv(header, cols, rows)


def cmd_fig3(args, workers):
    if not args.t > 0.0:
        raise UsageError("--t must be positive")
    xs = np.linspace(0.0, 1.0, args.nx)
    profiles = []
    for b in args.betas:
        sol = solve_spectral(args.alpha, BoundarySpec.robin(b), args.u0, N=args.N, T=args.t)
        profiles.append(sol.evaluate_grid(xs, [args.t])[:, 0])
    ref = solve_spectral(args.alpha, BoundarySpec.dirichlet(), args.u0, N=args.N, T=args.t)
    u_d = ref.evaluate_grid(xs, [args.t])[:, 0]
    sup = [float(np.abs(p - u_d).max()) for p in profiles]
    l2 = [grid_l2(xs, p - u_d) for p in profiles]
    if args.format == "json":
        return _json({"alpha": args.alpha, "t": args.t, "N": args.N, "betas": args.betas,
                      "x": list(map(float, xs)), "u_beta": [p.tolist() for p in profiles],
                      "u_D": u_d.tolist(), "sup_distance": sup, "l2_distance": l2})
    header = [("command", "fig3"), ("alpha", fmt(args.alpha)), ("t", fmt(args.t)),
              ("N", args.N), ("betas", _floats(args.betas)),
              ("sup_distance", _floats(sup)), ("l2_distance", _floats(l2))]
    cols = ["x"] + ["u_beta=" + fmt(b) for b in args.betas] + ["u_D"]
    rows = [(x, *(p[i] for p in profiles), u_d[i]) for i, x in enumerate(xs)]
    return _csv(header, cols, rows)


def oracle_compare(alpha, boundary, u0, N, T, nx, nt, refinements):
    """Distances at ``t = T`` between the spectral solution and ``fd_solve`` on doubling grids.

    Returns a list of ``(nx, nt, sup, l2, grid)`` tuples; ``grid`` is the
    finite-difference :class:`GridSolution`.
    """
    sol = solve_spectral(alpha, boundary, u0, N=N, T=T)
    out = []
    for level in range(refinements + 1):
        m = (nx + 1) * 2**level - 1
        steps = nt * 2**level
        grid = fd_solve(alpha, boundary, u0, m, steps, T)
        ref = sol.evaluate_grid(grid.xs, [T])[:, 0]
        diff = grid.values[-1] - ref
        out.append((m, steps, float(np.abs(diff).max()), grid_l2(grid.xs, diff), grid))
    return out


def cmd_oracle_compare(args, workers):
    bc = _boundary(args)
    if args.refinements < 0:
        raise UsageError("--refinements must be non-negative")
    results = oracle_compare(args.alpha, bc, args.u0, args.N, args.T, args.nx, args.nt,
                             args.refinements)
    if args.grid_output:
        write_atomic(args.grid_output, results[0][4].to_csv())
    ratios = [float("nan")] + [a[2] / b[2] if b[2] > 0 else float("inf")
                               for a, b in zip(results, results[1:])]
    if args.format == "json":
        return _json({"alpha": args.alpha, "boundary": bc.to_dict(), "T": args.T, "N": args.N,
                      "rows": [{"nx": r[0], "nt": r[1], "sup_distance": r[2],
                                "l2_distance": r[3], "ratio": q if math.isfinite(q) else None}
                               for r, q in zip(results, ratios)]})
    header = [("command", "oracle-compare"), ("alpha", fmt(args.alpha)), ("boundary", bc),
              ("T", fmt(args.T)), ("N", args.N)]
    rows = [(str(r[0]), str(r[1]), r[2], r[3], q) for r, q in zip(results, ratios)]
    return _csv(header, ["nx", "nt", "sup_distance", "l2_distance", "sup_ratio"], rows)


COMMANDS = {
    "eigs": cmd_eigs,
    "solve": cmd_solve,
    "table1": cmd_table1,
    "gapcheck": cmd_gapcheck,
    "fig3": cmd_fig3,
    "oracle-compare": cmd_oracle_compare,
}


def run(argv=None, stdout=None):
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        workers = _workers()
        text = COMMANDS[args.command](args, workers)
    except UsageError as exc:
        print(f"fracspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"fracspec: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"fracspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        write_atomic(args.output, text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())
