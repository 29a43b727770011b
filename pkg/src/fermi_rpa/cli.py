"""Command-line surface: energy reports, convergence tables, oracle runs.

Subcommands
-----------
ball     shell information for a particle count
nk       CSV of exact vs continuum lune norms over the potential support
hf       Hartree-Fock energy parts as JSON
corr     one correlation-energy number by method
compare  full energy report per N (CSV or JSON)
errors   log-space rigorous error budget as JSON
oracle   brute-force operator-identity verification reports
ratio    the delocalized/optimal second-order weight ratio

Exit codes: 0 success, 1 validation error (message names the violated
invariant), 2 numerical failure (quadrature convergence or pair-sector
overflow).  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .config import load_config
from .error_budget import assemble_error_budget
from .errors import (
    BoundViolation,
    ConvergenceFailure,
    FermiRpaError,
    TruncationOverflow,
)
from .fock_oracle import (
    build_mode_set,
    verify_almost_ccr,
    verify_c_commutator,
    verify_quadratic_interaction,
)
from .hf import hf_energy
from .lattice import (
    ModelParams,
    build_fermi_ball,
    lune_count,
    nk_asymptotic,
)
from .potential import Potential, load_potential, make_potential
from .report import energy_report, format_float, report_csv
from .rpa_delocalized import correlation_delocalized, second_order_delocalized
from .rpa_optimal import gmb_correlation, second_order_optimal, second_order_ratio

DEMO_POTENTIAL = {
    (1, 0, 0): 0.5,
    (0, 1, 0): 0.5,
    (0, 0, 1): 0.5,
    (1, 1, 0): 0.25,
}


def _demo_potential() -> Potential:
    return make_potential(DEMO_POTENTIAL, support_radius_sq=2)


def _potential_arg(path) -> Potential:
    return load_potential(path) if path else _demo_potential()


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermi-rpa",
        description="Correlation energy of the mean-field Fermi gas",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", default=None, help="JSON config overriding defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ball", help="closed-shell information")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("nk", help="exact vs continuum lune norms (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--potential", default=None)

    p = sub.add_parser("hf", help="Hartree-Fock energy parts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--potential", default=None)
    p.add_argument(
        "--hf-half-prefactor",
        action="store_true",
        help="multiply direct/exchange by 1/2 (pair-sum convention)",
    )

    p = sub.add_parser("corr", help="correlation energy by method")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--potential", default=None)
    p.add_argument(
        "--method",
        required=True,
        choices=[
            "delocalized-exact",
            "delocalized-asym",
            "optimal",
            "so-deloc",
            "so-opt",
        ],
    )
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("compare", help="full energy report per N")
    p.add_argument("--potential", default=None)
    p.add_argument("--n-list", required=True, help="comma-separated particle counts")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("errors", help="log-space rigorous error budget")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--potential", default=None)
    p.add_argument("--backend", choices=["asymptotic", "exact"], default="asymptotic")

    p = sub.add_parser("oracle", help="operator-identity verification suite")
    p.add_argument("--holes-n", type=int, default=7)
    p.add_argument("--lambda-sq", type=int, default=2)
    p.add_argument("--pairs", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--potential", default=None)

    sub.add_parser("ratio", help="second-order delocalized/optimal ratio")
    return parser


def _cmd_ball(args) -> int:
    ball = build_fermi_ball(args.n)
    params = ModelParams(args.n)
    _emit(
        {
            "n": ball.n,
            "shell_radius_sq": ball.shell_radius_sq,
            "kf_continuum": ball.kf_continuum,
            "hbar": params.hbar,
        }
    )
    return 0


def _cmd_nk(args) -> int:
    ball = build_fermi_ball(args.n)
    params = ModelParams(args.n)
    v = _potential_arg(args.potential)
    lines = ["k,n_exact,n_asym,rel_err"]
    for k in v.correlation_support():
        exact = math.sqrt(lune_count(ball, k).count)
        asym = nk_asymptotic(params, k)
        rel = abs(exact / asym - 1.0) if asym > 0 else math.inf
        lines.append(
            f"({k[0]} {k[1]} {k[2]}),{format_float(exact)},"
            f"{format_float(asym)},{format_float(rel)}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_hf(args) -> int:
    ball = build_fermi_ball(args.n)
    v = _potential_arg(args.potential)
    energy = hf_energy(ball, v, ModelParams(args.n), half_prefactor=args.hf_half_prefactor)
    _emit(
        {
            "kinetic": energy.kinetic,
            "direct": energy.direct,
            "exchange": energy.exchange,
            "total": energy.total,
        }
    )
    return 0


def _cmd_corr(args, tol: float) -> int:
    v = _potential_arg(args.potential)
    params = ModelParams(args.n)
    method = args.method
    if method == "delocalized-exact":
        value = correlation_delocalized(build_fermi_ball(args.n), v, backend="exact")
    elif method == "delocalized-asym":
        value = correlation_delocalized(params, v, backend="asymptotic")
    elif method == "optimal":
        if v.value((0, 0, 0)) != 0.0:
            sys.stderr.write(
                "warning: V(0) != 0 is excluded from the correlation sum\n"
            )
        value = gmb_correlation(v, params, tol=tol).total
    elif method == "so-deloc":
        value = second_order_delocalized(params, v, backend="asymptotic")
    else:
        value = second_order_optimal(v, params)
    sys.stdout.write(format_float(value) + "\n")
    return 0


def _cmd_compare(args, tol: float) -> int:
    v = _potential_arg(args.potential)
    try:
        ns = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError as exc:
        raise FermiRpaError(f"invalid --n-list: {exc}") from exc
    reports = [energy_report(n, v, tol=tol) for n in ns]
    if args.format == "csv":
        sys.stdout.write(report_csv(reports))
    else:
        _emit([rep.as_dict() for rep in reports])
    return 0


def _cmd_errors(args) -> int:
    v = _potential_arg(args.potential)
    if args.backend == "exact":
        source = build_fermi_ball(args.n)
    else:
        source = ModelParams(args.n)
    _emit(assemble_error_budget(source, v, backend=args.backend).as_dict())
    return 0


def _cmd_oracle(args, max_pairs: int) -> int:
    modes = build_mode_set(args.holes_n, args.lambda_sq)
    v = _potential_arg(args.potential)
    params = ModelParams(args.holes_n)
    e1, e2 = (1, 0, 0), (0, 1, 0)
    reports = [
        verify_almost_ccr(modes, e1, e1, args.trials, args.seed, max_pairs),
        verify_almost_ccr(modes, e1, e2, args.trials, args.seed, max_pairs),
        verify_c_commutator(modes, e1, e1, args.trials, args.seed, max_pairs),
        verify_c_commutator(modes, e1, e2, args.trials, args.seed, max_pairs),
        verify_quadratic_interaction(modes, v, params, max_pairs, args.seed),
    ]
    for report in reports:
        _emit(report.as_dict())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        tol = getattr(args, "tol", None) or config.tol
        if args.command == "ball":
            return _cmd_ball(args)
        if args.command == "nk":
            return _cmd_nk(args)
        if args.command == "hf":
            return _cmd_hf(args)
        if args.command == "corr":
            return _cmd_corr(args, tol)
        if args.command == "compare":
            return _cmd_compare(args, tol)
        if args.command == "errors":
            return _cmd_errors(args)
        if args.command == "oracle":
            pairs = args.pairs if args.pairs is not None else config.max_pairs
            return _cmd_oracle(args, pairs)
        if args.command == "ratio":
            sys.stdout.write(format_float(second_order_ratio()) + "\n")
            return 0
        parser.error(f"unknown command {args.command}")
    except (ConvergenceFailure, TruncationOverflow) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BoundViolation as exc:
        if exc.report is not None:
            _emit(exc.report.as_dict())
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (FermiRpaError, ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
