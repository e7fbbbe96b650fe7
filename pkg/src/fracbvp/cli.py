"""Command-line front end.

Commands::

    fracbvp certify CONFIG
    fracbvp solve CONFIG [--n N] [--tol TOL] [--max-iter K] [--out FILE]
    fracbvp verify CONFIG SOLUTION.csv
    fracbvp examples

Exit codes: 0 success, 1 input error, 2 no certificate (or degenerate
problem), 3 non-convergence, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings

import numpy as np

from . import builtin
from .config import load_config
from .errors import ConfigError, DegenerateProblemError, DomainError, FracBVPError
from .fracops import Grid, GridFunction
from .problem import certify, nondegeneracy_thresholds
from .solver import SolverConfig, solve
from .verify import verify_solution

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CERTIFICATE = 2
EXIT_NOT_CONVERGED = 3
EXIT_VERIFY_FAILED = 4

FIXED_POINT_LIMIT = 1e-6
BC_LIMIT = 1e-4

DEGENERATE_MESSAGE = (
    "degenerate: nondegeneracy condition violated "
    "(alpha = Gamma(p+1)/eta^p or beta = Gamma(2-nu)/eta^(1-nu))"
)


def _streams(out, err):
    return (out if out is not None else sys.stdout, err if err is not None else sys.stderr)


def _verdict(flag) -> str:
    if flag is None:
        return "not checked"
    return "satisfied" if flag else "not satisfied"


def _load(path, err):
    try:
        return load_config(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror or exc}", file=err)
    except ConfigError as exc:
        print(f"error: {path}: {exc}", file=err)
    return None


def cmd_certify(config_path, out=None, err=None) -> int:
    out, err = _streams(out, err)
    spec = _load(config_path, err)
    if spec is None:
        return EXIT_INPUT
    cert = certify(spec)
    print(f"Delta1 = {cert.delta1:.6f}", file=out)
    print(f"Delta2 = {cert.delta2:.6f}", file=out)
    print(f"Delta3 = {cert.delta3:.6f}", file=out)
    if not cert.nondegenerate:
        print(DEGENERATE_MESSAGE, file=out)
        return EXIT_NO_CERTIFICATE
    print(f"Omega = {cert.omega:.6f}", file=out)
    print(f"Omega - 1/Gamma(q+1) = {cert.omega_minus:.6f}", file=out)
    if cert.lipschitz_used is None:
        print("L = (not supplied)", file=out)
    else:
        print(f"L = {cert.lipschitz_used:.6g} ({cert.lipschitz_source})", file=out)
        print(f"L*Omega = {cert.l_omega:.6f}", file=out)
        print(f"L*(Omega - 1/Gamma(q+1)) = {cert.l_omega_minus:.6f}", file=out)
    if cert.abs_substituted:
        print("note: |alpha|, |beta| used in Omega (negative coefficient)", file=out)
    print(f"banach: {_verdict(cert.banach_ok)}", file=out)
    print(f"krasnoselskii: {_verdict(cert.krasnoselskii_ok)}", file=out)
    schaefer = cert.schaefer_ok if spec.rhs_bound is not None else None
    print(f"schaefer: {_verdict(schaefer)}", file=out)
    if cert.schaefer_ok and cert.lipschitz_used is None:
        print("note: Lipschitz hypothesis not checked (no lipschitz supplied)", file=out)
    return EXIT_OK if cert.any_ok else EXIT_NO_CERTIFICATE


def _format_x(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def write_csv(solution: GridFunction, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["t", "x"])
    for t, x in zip(solution.grid.nodes, solution.values):
        writer.writerow([f"{t:.12f}", _format_x(x)])


def read_csv(stream) -> GridFunction:
    """Read a ``t,x`` solution table; the t column must be the uniform grid."""
    rows = list(csv.reader(stream))
    if not rows or [c.strip() for c in rows[0]] != ["t", "x"]:
        raise ValueError("expected header 't,x'")
    try:
        data = np.array([[float(a), float(b)] for a, b in (r for r in rows[1:] if r)], dtype=float)
    except ValueError:
        raise ValueError("non-numeric or malformed row") from None
    if data.ndim != 2 or data.shape[0] < 2:
        raise ValueError("need at least two data rows")
    grid = Grid(data.shape[0])
    if np.max(np.abs(data[:, 0] - grid.nodes)) > 1e-9:
        raise ValueError("t column is not the uniform grid i/(n-1)")
    return GridFunction(grid, data[:, 1])


def cmd_solve(config_path, n=1025, tol=1e-10, max_iter=200, out_path=None,
              out=None, err=None) -> int:
    out, err = _streams(out, err)
    spec = _load(config_path, err)
    if spec is None:
        return EXIT_INPUT
    try:
        config = SolverConfig(grid_n=n, tol=tol, max_iter=max_iter)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = solve(spec, config)
    except DegenerateProblemError:
        print(DEGENERATE_MESSAGE, file=err)
        return EXIT_NO_CERTIFICATE
    except (DomainError, FracBVPError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    for w in caught:
        print(f"warning: {w.message}", file=err)

    summary = out if out_path is not None else err
    if out_path is None:
        write_csv(report.solution, out)
    else:
        try:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                write_csv(report.solution, fh)
        except OSError as exc:
            print(f"error: cannot write {out_path}: {exc.strerror or exc}", file=err)
            return EXIT_INPUT

    def fmt(v):
        return "n/a" if v is None else f"{v:.6e}"

    print(f"iterations = {report.iterations}", file=summary)
    print(f"final_diff = {report.final_diff:.6e}", file=summary)
    print(f"observed_ratio = {fmt(report.observed_ratio)}", file=summary)
    print(f"apriori_bound = {fmt(report.apriori_bound)}", file=summary)
    print(f"aposteriori_bound = {fmt(report.aposteriori_bound)}", file=summary)
    if report.diverged:
        print(f"diverged: iterate not finite after {report.iterations} iterations", file=err)
        return EXIT_NOT_CONVERGED
    if not report.converged:
        print(f"not converged after {report.iterations} iterations "
              f"(final_diff {report.final_diff:.3e} > tol {tol:.3e})", file=err)
        return EXIT_NOT_CONVERGED
    print("converged", file=summary)
    return EXIT_OK


def cmd_verify(config_path, solution_csv, out=None, err=None) -> int:
    out, err = _streams(out, err)
    spec = _load(config_path, err)
    if spec is None:
        return EXIT_INPUT
    try:
        with open(solution_csv, encoding="utf-8", newline="") as fh:
            x = read_csv(fh)
        report = verify_solution(spec, x)
    except OSError as exc:
        print(f"error: cannot read {solution_csv}: {exc.strerror or exc}", file=err)
        return EXIT_INPUT
    except DegenerateProblemError:
        print(DEGENERATE_MESSAGE, file=err)
        return EXIT_NO_CERTIFICATE
    except (ValueError, FracBVPError) as exc:
        print(f"error: {solution_csv}: {exc}", file=err)
        return EXIT_INPUT
    for key, value in report.as_dict().items():
        print(f"{key} = {value:.6e}", file=out)
    ok = (
        report.fixed_point_residual <= FIXED_POINT_LIMIT
        and report.bc1_residual <= BC_LIMIT
        and report.bc2_residual <= BC_LIMIT
    )
    print("verification: " + ("passed" if ok else "FAILED"), file=out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def example_rows():
    """``(example, quantity, computed, published, |diff|, tol)`` for every published constant."""
    computed = {}
    for name, factory in builtin.EXAMPLES.items():
        spec = factory()
        cert = certify(spec)
        a_thr, b_thr = nondegeneracy_thresholds(spec)
        values = {
            "Omega": cert.omega,
            "Omega-1/Gamma(q+1)": cert.omega_minus,
            "Delta1": cert.delta1,
            "|Delta2|": abs(cert.delta2),
            "Delta3": cert.delta3,
            "|Delta3|": abs(cert.delta3),
            "alpha_threshold": a_thr,
            "beta_threshold": b_thr,
        }
        if cert.lipschitz_used is not None:
            values["L*Omega"] = cert.l_omega
            values["L*(Omega-1/Gamma(q+1))"] = cert.l_omega_minus
        computed[name] = values
    rows = []
    for ref in builtin.PUBLISHED:
        value = computed[ref.example].get(ref.quantity, math.nan)
        rows.append((ref.example, ref.quantity, value, ref.value, abs(value - ref.value), ref.tol))
    return rows


def cmd_examples(out=None, err=None) -> int:
    out, err = _streams(out, err)
    rows = example_rows()
    print(f"{'example':<9} {'quantity':<24} {'computed':>12} {'published':>12} "
          f"{'|diff|':>10} {'tol':>7}  status", file=out)
    ok = True
    for example, quantity, value, ref, diff, tol in rows:
        good = diff <= tol
        ok &= good
        print(f"{example:<9} {quantity:<24} {value:>12.6f} {ref:>12.4f} "
              f"{diff:>10.2e} {tol:>7.0e}  {'ok' if good else 'MISMATCH'}", file=out)
    return EXIT_OK if ok else EXIT_NO_CERTIFICATE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbvp",
        description="Certify, solve and verify a Caputo fractional BVP with "
                    "nonlocal boundary conditions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="evaluate existence certificates")
    p.add_argument("config")

    p = sub.add_parser("solve", help="Picard iteration; writes a t,x CSV")
    p.add_argument("config")
    p.add_argument("--n", type=int, default=1025, help="grid nodes (default 1025)")
    p.add_argument("--tol", type=float, default=1e-10, help="stopping tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=200, help="iteration cap (default 200)")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")

    p = sub.add_parser("verify", help="residuals of a solution CSV")
    p.add_argument("config")
    p.add_argument("solution")

    sub.add_parser("examples", help="compare the built-in problems with published constants")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out, err = _streams(out, err)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "certify":
        return cmd_certify(args.config, out, err)
    if args.command == "solve":
        return cmd_solve(args.config, args.n, args.tol, args.max_iter, args.out, out, err)
    if args.command == "verify":
        return cmd_verify(args.config, args.solution, out, err)
    return cmd_examples(out, err)


def run(argv) -> tuple[int, str, str]:
    """Run the CLI in-process and capture ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
