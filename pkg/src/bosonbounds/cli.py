"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bounds import bound_pair, constant_A, constant_B, lower_bound, nr_bounds, upper_bound
from .errors import ConvergenceFailure, DomainError, NonPhysicalParameter
from .jacobi import jacobi_matrix, orthogonality_residual, pair_sum_identity_residual, random_configuration
from .model import SystemSpec, validate_system
from .spectral import reduced_problem_energy
from .variational import gaussian_energy, minimize_gaussian_numeric, optimal_a

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3
IDENTITY_THRESHOLD = 1e-10
SWEEP_COLUMNS = ("n", "lower", "upper", "mean", "rel_half_gap")

_FLAGS = {"n": "--n", "gamma": "--gamma", "lambda": "--lambda", "mass": "--mass", "a": "--a",
          "grid_points": "--grid-points", "samples": "--samples"}


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    results: dict
    diagnostics: dict = field(default_factory=dict)
    rows: list | None = None
    exit_code: int = EXIT_OK

    def to_json(self):
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": self.diagnostics,
        }
        if self.rows is not None:
            payload["results"] = dict(self.results, rows=self.rows)
        # repr of a float is the shortest string that round-trips: full precision
        return json.dumps(payload, allow_nan=False)

    def _table(self):
        if self.rows is not None:
            return list(self.rows[0].keys()) if self.rows else list(SWEEP_COLUMNS), self.rows
        row = {**self.inputs, **self.results, **self.diagnostics}
        return list(row.keys()), [row]

    def to_csv(self):
        header, rows = self._table()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row[k]) for k in header])
        return buf.getvalue().rstrip("\n")

    def to_text(self):
        lines = [f"# {self.command}"]
        if self.rows is not None:
            header, rows = self._table()
            lines.append("  ".join(f"{h:>15}" for h in header))
            for row in rows:
                lines.append("  ".join(f"{_text_cell(row[h]):>15}" for h in header))
            return "\n".join(lines)
        for section in ("inputs", "results", "diagnostics"):
            values = getattr(self, section)
            if values:
                lines.append(f"{section}:")
                lines.extend(f"  {k}: {_text_cell(v)}" for k, v in values.items())
        return "\n".join(lines)

    def render(self, fmt):
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value


def _text_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def cmd_bounds(args):
    res = bound_pair(args.n, args.gamma)
    return OutputRecord("bounds", {"n": args.n, "gamma": args.gamma}, res.as_dict(),
                        {"A": constant_A(), "B": constant_B()})


def cmd_nrbounds(args):
    res = nr_bounds(args.n, args.lam, args.mass)
    return OutputRecord("nrbounds", {"n": args.n, "lambda": args.lam, "mass": args.mass},
                        res.as_dict(), {"A": constant_A(), "B": constant_B()})


def cmd_trial(args):
    if (args.a is None) == (not args.optimize):
        raise _Usage("trial: give exactly one of --a or --optimize")
    inputs = {"n": args.n, "gamma": args.gamma}
    if args.a is not None:
        inputs["a"] = args.a
        t = gaussian_energy(args.n, args.gamma, args.a)
        upper = upper_bound(args.n, args.gamma)
        return OutputRecord("trial", inputs,
                            {"a": t.a, "energy": t.energy, "kinetic_part": t.kinetic_part,
                             "potential_part": t.potential_part},
                            {"upper_bound": upper, "excess_over_minimum": t.energy - upper})
    inputs["optimize"] = True
    a_star = optimal_a(args.n, args.gamma)
    e_star = gaussian_energy(args.n, args.gamma, a_star).energy
    a_num, e_num = minimize_gaussian_numeric(args.n, args.gamma, args.tol)
    return OutputRecord(
        "trial", inputs,
        {"a_analytic": a_star, "energy_analytic": e_star, "a_numeric": a_num, "energy_numeric": e_num},
        {"a_discrepancy": abs(a_num - a_star) / a_star,
         "energy_discrepancy": abs(e_num - e_star) / e_star,
         "tol": args.tol, "upper_bound": upper_bound(args.n, args.gamma)},
    )


def cmd_verify(args):
    validate_system(SystemSpec.oscillator(args.n, args.gamma))
    lower, upper = lower_bound(args.n, args.gamma), upper_bound(args.n, args.gamma)
    res = reduced_problem_energy(args.n, args.gamma, args.grid_points)
    # estimated discretization error, doubled for safety
    grid_tol = 2.0 * res.discretization_error + 1e-12 * lower
    sandwich_ok = lower - grid_tol <= res.energy <= upper
    tight = abs(res.energy - lower) <= grid_tol
    rec = OutputRecord(
        "verify", {"n": args.n, "gamma": args.gamma, "grid_points": args.grid_points},
        {"oracle_energy": res.energy, "richardson_estimate": res.richardson_estimate,
         "lower": lower, "upper": upper, "oracle_minus_lower": res.energy - lower,
         "sandwich_ok": sandwich_ok, "lower_is_tight": tight},
        {"grid_tolerance": grid_tol, "residual": res.residual, "converged": res.converged,
         **res.diagnostics},
    )
    rec.exit_code = EXIT_OK if sandwich_ok else EXIT_FAILED
    return rec


def _sweep_rows(n_min, n_max, gamma):
    rows = []
    for n in range(n_min, n_max + 1):
        r = bound_pair(n, gamma)
        rows.append({"n": n, "lower": r.lower, "upper": r.upper, "mean": r.mean,
                     "rel_half_gap": r.rel_half_gap})
    return rows


def cmd_sweep(args):
    if args.n_min > args.n_max:
        raise _Usage(f"sweep: --n-min ({args.n_min}) exceeds --n-max ({args.n_max})")
    validate_system(SystemSpec.oscillator(args.n_min, args.gamma))
    validate_system(SystemSpec.oscillator(args.n_max, args.gamma))
    rows = _sweep_rows(args.n_min, args.n_max, args.gamma)
    gaps = [row["rel_half_gap"] for row in rows]
    return OutputRecord("sweep", {"n_min": args.n_min, "n_max": args.n_max, "gamma": args.gamma},
                        {}, {"gap_spread": max(gaps) - min(gaps)}, rows=rows)


def cmd_identity_check(args):
    frame = jacobi_matrix(args.n)
    if args.samples < 1:
        raise NonPhysicalParameter("samples", f"need at least one sample, got {args.samples}")
    rng = np.random.default_rng(args.seed)
    worst = max(pair_sum_identity_residual(frame, random_configuration(args.n, rng))
                for _ in range(args.samples))
    ortho = orthogonality_residual(frame)
    ok = worst < IDENTITY_THRESHOLD and ortho < IDENTITY_THRESHOLD
    rec = OutputRecord("identity-check", {"n": args.n, "samples": args.samples, "seed": args.seed},
                       {"max_pair_sum_residual": worst, "orthogonality_residual": ortho, "ok": ok},
                       {"threshold": IDENTITY_THRESHOLD, "generator": "numpy PCG64 (default_rng)"})
    rec.exit_code = EXIT_OK if ok else EXIT_FAILED
    return rec


class _Usage(Exception):
    pass


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS,
                     help="output format (default: text; csv for sweep)")

    parser = argparse.ArgumentParser(
        prog="bosonbounds",
        description="Energy bounds for N massless bosons with oscillator pair potentials "
                    "(natural units, hbar = c = 1).",
        parents=[fmt],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def system(p):
        p.add_argument("--n", type=int, required=True, help="particle count N >= 2")
        p.add_argument("--gamma", type=float, default=1.0, help="oscillator coupling (default 1)")

    p = sub.add_parser("bounds", parents=[fmt], help="lower/upper/mean energy and relative half-gap")
    system(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("nrbounds", parents=[fmt],
                       help="bounds for nonrelativistic bosons with linear pair potential")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="linear coupling > 0")
    p.add_argument("--mass", type=float, required=True, help="particle mass > 0")
    p.set_defaults(func=cmd_nrbounds)

    p = sub.add_parser("trial", parents=[fmt], help="Gaussian trial energy")
    system(p)
    p.add_argument("--a", type=float, help="evaluate at this width parameter")
    p.add_argument("--optimize", action="store_true", help="minimize analytically and numerically")
    p.add_argument("--tol", type=float, default=1e-9, help="numeric minimizer tolerance")
    p.set_defaults(func=cmd_trial)

    p = sub.add_parser("verify", parents=[fmt], help="check the bounds against the grid oracle")
    system(p)
    p.add_argument("--grid-points", type=int, default=2048)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[fmt], help="bounds for a range of N")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("identity-check", parents=[fmt], help="Jacobi pair-sum and orthogonality residuals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_identity_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", None) or ("csv" if args.command == "sweep" else "text")
    try:
        record = args.func(args)
    except NonPhysicalParameter as exc:
        flag = _FLAGS.get(exc.field, exc.field)
        print(f"bosonbounds {args.command}: error: {flag}: {exc.reason}", file=sys.stderr)
        return EXIT_USAGE
    except (_Usage, DomainError) as exc:
        print(f"bosonbounds {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceFailure as exc:
        print(f"bosonbounds {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(record.render(fmt))
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
