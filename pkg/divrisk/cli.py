"""divrisk CLI: worst case values over divergence balls from the command line.

Usage:
    divrisk example burg2r --out burg2r.csv
    divrisk vk --scenario burg2r.csv --divergence burg --k 1.0
    divrisk classify --scenario burg2r.csv --divergence burg
    divrisk certify --scenario burg2r.csv --divergence burg --p p.csv --k 1 --eps 0.45 --gamma 0
    divrisk gcurve --scenario burg2r.csv --divergence burg --theta2-from -8 --theta2-to 0 --steps 81 --out g.csv
    divrisk check --gcurve g.csv
    divrisk version

Exit codes: 0 success, 1 invalid input, 2 no convergence, 3 failed certificate or check.
"""

import argparse
import logging
import math
import sys
import time
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .catalog import CATALOG, get_scenario
from .config import SolverConfig
from .errors import ConvergenceError, DivriskError, ValidationError
from .integrands import IntegrandSpec
from .scenario import load_scenario_csv, write_scenario_csv
from .solver import WorstCaseSolver
from .trace_logger import configure_trace_logging, get_trace_logger
from .types import GeneratorId
from .utils import format_number, read_table, to_key_value_lines, write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CONVERGENCE = 2
EXIT_FAILED = 3

GCURVE_HEADER = ("theta2", "G", "theta1_star", "case", "mass", "payoff_moment")


def _print_lines(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _load_config(args: argparse.Namespace) -> SolverConfig:
    if args.config:
        return SolverConfig.load_from_file(args.config)
    return SolverConfig()


def _build_solver(args: argparse.Namespace) -> WorstCaseSolver:
    """Scenario file + divergence flags -> solver."""
    if not args.scenario:
        raise ValidationError(f"--scenario is required for {args.command}")
    config = _load_config(args)
    space = load_scenario_csv(args.scenario, density_tol=config.density_tol)
    if args.bregman:
        spec = IntegrandSpec.bregman(args.divergence, space)
    else:
        spec = IntegrandSpec.f_divergence(args.divergence)
    return WorstCaseSolver(spec, space, config)


def _grid(start: float, stop: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValidationError(f"--steps must be >= 1, got {steps}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ValidationError("curve endpoints must be finite")
    return np.linspace(start, stop, steps)


def _load_p(path: str, node_ids: List[str]) -> np.ndarray:
    """Read a ``node_id,p`` table and order it like the scenario atoms."""
    header, rows = read_table(path)
    if "node_id" not in header or "p" not in header:
        raise ValidationError(f"{path}: header must contain node_id,p, got {','.join(header)}")
    values = {}
    for row in rows:
        try:
            values[row["node_id"].strip()] = float(row["p"])
        except (TypeError, ValueError):
            raise ValidationError(f"{path}: p is not a number for node {row.get('node_id')!r}") from None
    missing = [n for n in node_ids if n not in values]
    if missing:
        raise ValidationError(f"{path}: no p value for {len(missing)} atoms (first: {missing[0]})")
    return np.array([values[n] for n in node_ids], dtype=float)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_vk(args: argparse.Namespace) -> int:
    """Print the worst case report at threshold k."""
    solver = _build_solver(args)
    _print_lines(solver.value_at_k(args.k).to_lines())
    return EXIT_OK


def cmd_wlambda(args: argparse.Namespace) -> int:
    """Print the penalised value W(lambda)."""
    solver = _build_solver(args)
    w = solver.penalised_value(args.lam)
    ge = solver.solve_inner(-1.0 / args.lam)
    _print_lines(to_key_value_lines({
        "lambda": args.lam,
        "W": w,
        "theta2": ge.theta2,
        "theta1_star": ge.theta1_star,
        "case": ge.case,
        "mass": ge.mass,
    }))
    return EXIT_OK


def cmd_localiser(args: argparse.Namespace) -> int:
    """Write q_hat_k per atom and print the report."""
    solver = _build_solver(args)
    report = solver.value_at_k(args.k)
    space = solver.space
    rows = []
    if report.localiser.size:
        rows = [
            (node, float(r), float(q))
            for node, r, q in zip(space.node_ids, space.coordinates, report.localiser)
        ]
    written = write_table(args.out, ("node_id", "coordinate", "q_hat"), rows)
    _print_lines(report.to_lines())
    _print_lines(to_key_value_lines({"rows": written, "out": args.out}))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    """Print the worst case density existence regime."""
    solver = _build_solver(args)
    _print_lines(solver.classify(args.k).to_lines())
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    """Certify a density file against the AWCD Bregman bound."""
    solver = _build_solver(args)
    p = _load_p(args.p, solver.space.node_ids)
    cert = solver.certify_awcd(p, args.k, args.eps, args.gamma)
    _print_lines(cert.to_lines())
    return EXIT_OK if cert.bound_holds else EXIT_FAILED


def cmd_gcurve(args: argparse.Namespace) -> int:
    """Tabulate G over a theta2 grid."""
    solver = _build_solver(args)
    thetas = _grid(args.theta2_from, args.theta2_to, args.steps)
    rows = [
        (ge.theta2, ge.g_value, ge.theta1_star, ge.case, ge.mass, ge.payoff_moment)
        for ge in solver.g_curve(thetas)
    ]
    written = write_table(args.out, GCURVE_HEADER, rows)
    _print_lines(to_key_value_lines({"rows": written, "out": args.out}))
    return EXIT_OK


def cmd_fcurve(args: argparse.Namespace) -> int:
    """Tabulate F over a grid of expected payoffs."""
    solver = _build_solver(args)
    bs = _grid(args.b_from, args.b_to, args.steps)
    written = write_table(args.out, ("b", "F"), solver.f_curve(bs))
    _print_lines(to_key_value_lines({"rows": written, "out": args.out}))
    return EXIT_OK


def cmd_wcurve(args: argparse.Namespace) -> int:
    """Tabulate W over a lambda grid."""
    solver = _build_solver(args)
    lambdas = _grid(args.lambda_from, args.lambda_to, args.steps)
    rows = [(lam, w, ge.theta2, ge.mass) for lam, w, ge in solver.w_curve(lambdas)]
    written = write_table(args.out, ("lambda", "W", "theta2", "mass"), rows)
    _print_lines(to_key_value_lines({"rows": written, "out": args.out}))
    return EXIT_OK


def check_gcurve_rows(rows: List[dict]) -> dict:
    """Convexity check of a tabulated G.

    Slopes between consecutive points must be nondecreasing up to the
    rounding of 9 significant digits, and G(0) must vanish.
    """
    points = sorted((float(r["theta2"]), float(r["G"])) for r in rows)
    max_violation = 0.0
    convex = True
    for (t0, g0), (t1, g1), (t2, g2) in zip(points, points[1:], points[2:]):
        h_left, h_right = t1 - t0, t2 - t1
        if h_left <= 0 or h_right <= 0:
            continue
        violation = (g1 - g0) / h_left - (g2 - g1) / h_right
        allowed = 4e-9 * (abs(g0) + abs(g1) + abs(g2)) / min(h_left, h_right) + 1e-12
        max_violation = max(max_violation, violation)
        if violation > allowed:
            convex = False
    zero_ok = all(abs(g) <= 1e-9 for t, g in points if t == 0.0)
    return {
        "rows": len(points),
        "convex": convex,
        "g_zero_at_origin": zero_ok,
        "max_violation": max_violation,
        "passed": convex and zero_ok,
    }


def cmd_check(args: argparse.Namespace) -> int:
    """Check a gcurve file for convexity."""
    header, rows = read_table(args.gcurve)
    if tuple(header) != GCURVE_HEADER:
        raise ValidationError(f"{args.gcurve}: not a gcurve table (header {','.join(header)})")
    try:
        result = check_gcurve_rows(rows)
    except (TypeError, ValueError):
        raise ValidationError(f"{args.gcurve}: non-numeric theta2 or G value") from None
    _print_lines(to_key_value_lines(result))
    return EXIT_OK if result["passed"] else EXIT_FAILED


def cmd_example(args: argparse.Namespace) -> int:
    """Write a catalog scenario file."""
    space = get_scenario(args.name, _load_config(args))
    write_scenario_csv(space, args.out)
    _print_lines(to_key_value_lines({
        "scenario": args.name,
        "atoms": space.size,
        "closure_points": len(space.closure),
        "m": space.m,
        "b0": space.b0,
        "M": space.M,
        "out": args.out,
    }))
    return EXIT_OK


def cmd_version(_args: argparse.Namespace) -> int:
    """Print the version."""
    print(f"divrisk {__version__}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divrisk",
        description="divrisk: worst case expected payoffs over divergence balls",
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", "-s", help="Scenario CSV (node_id,coordinate,weight,payoff,p0)")
    common.add_argument(
        "--divergence", "-d",
        choices=[g.value for g in GeneratorId],
        default=GeneratorId.KL.value,
        help="Convex generator (default: kl)",
    )
    common.add_argument(
        "--bregman",
        action="store_true",
        default=False,
        help="Lift the generator to a Bregman integrand using the p0 column",
    )
    common.add_argument("--config", help="JSON file with solver settings")
    common.add_argument("--trace", help="Write a solver trace log to this file")
    common.add_argument("--verbose", "-v", action="store_true", default=False,
                        help="Debug logging on standard error")

    sub = parser.add_subparsers(dest="command")

    # divrisk vk
    p_vk = sub.add_parser("vk", parents=[common], help="Worst case value V(k)")
    p_vk.add_argument("--k", type=float, default=1.0, help="Divergence threshold (default: 1.0)")
    p_vk.set_defaults(func=cmd_vk)

    # divrisk wlambda
    p_w = sub.add_parser("wlambda", parents=[common], help="Penalised value W(lambda)")
    p_w.add_argument("--lambda", dest="lam", type=float, required=True, help="Penalty weight > 0")
    p_w.set_defaults(func=cmd_wlambda)

    # divrisk localiser
    p_loc = sub.add_parser("localiser", parents=[common], help="Write the worst case localiser")
    p_loc.add_argument("--k", type=float, required=True, help="Divergence threshold")
    p_loc.add_argument("--out", required=True, help="Output CSV (node_id,coordinate,q_hat)")
    p_loc.set_defaults(func=cmd_localiser)

    # divrisk classify
    p_cls = sub.add_parser("classify", parents=[common], help="Worst case density existence regime")
    p_cls.add_argument("--k", type=float, default=None, help="Also report existence at this k")
    p_cls.set_defaults(func=cmd_classify)

    # divrisk certify
    p_cert = sub.add_parser("certify", parents=[common], help="Certify an almost worst case density")
    p_cert.add_argument("--p", required=True, help="Density CSV (node_id,p)")
    p_cert.add_argument("--k", type=float, required=True, help="Divergence threshold")
    p_cert.add_argument("--eps", type=float, required=True, help="Allowed payoff excess")
    p_cert.add_argument("--gamma", type=float, required=True, help="Allowed divergence excess")
    p_cert.set_defaults(func=cmd_certify)

    # divrisk gcurve / fcurve / wcurve
    p_g = sub.add_parser("gcurve", parents=[common], help="Tabulate G(theta2)")
    p_g.add_argument("--theta2-from", type=float, required=True)
    p_g.add_argument("--theta2-to", type=float, required=True)
    p_g.add_argument("--steps", type=int, default=50)
    p_g.add_argument("--out", required=True)
    p_g.set_defaults(func=cmd_gcurve)

    p_f = sub.add_parser("fcurve", parents=[common], help="Tabulate F(b)")
    p_f.add_argument("--b-from", type=float, required=True)
    p_f.add_argument("--b-to", type=float, required=True)
    p_f.add_argument("--steps", type=int, default=50)
    p_f.add_argument("--out", required=True)
    p_f.set_defaults(func=cmd_fcurve)

    p_wc = sub.add_parser("wcurve", parents=[common], help="Tabulate W(lambda)")
    p_wc.add_argument("--lambda-from", type=float, required=True)
    p_wc.add_argument("--lambda-to", type=float, required=True)
    p_wc.add_argument("--steps", type=int, default=50)
    p_wc.add_argument("--out", required=True)
    p_wc.set_defaults(func=cmd_wcurve)

    # divrisk check
    p_chk = sub.add_parser("check", parents=[common], help="Check a gcurve table for convexity")
    p_chk.add_argument("--gcurve", required=True, help="Table written by gcurve")
    p_chk.set_defaults(func=cmd_check)

    # divrisk example
    p_ex = sub.add_parser("example", parents=[common], help="Write a reference scenario file")
    p_ex.add_argument("name", choices=sorted(CATALOG), help="Reference scenario")
    p_ex.add_argument("--out", required=True, help="Output scenario CSV")
    p_ex.set_defaults(func=cmd_example)

    # divrisk version
    p_version = sub.add_parser("version", help="Show version")
    p_version.set_defaults(func=cmd_version)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    if not args.command:
        parser.print_help()
        return EXIT_OK

    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(levelname)-8s %(name)s: %(message)s")
    trace_file = getattr(args, "trace", None)
    if trace_file:
        configure_trace_logging(enabled=True, log_file=trace_file, log_level=logging.DEBUG)

    start = time.perf_counter()
    try:
        code = args.func(args)
    except ConvergenceError as e:
        print(f"Error: {e}", file=sys.stderr)
        code = EXIT_CONVERGENCE
    except (DivriskError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        code = EXIT_INVALID
    except OSError as e:
        print(f"Error: {e.strerror or e}: {e.filename}", file=sys.stderr)
        code = EXIT_INVALID
    finally:
        if trace_file:
            get_trace_logger().log_run_summary(
                args.command,
                {"scenario": args.scenario, "divergence": args.divergence,
                 "bregman": args.bregman},
                time.perf_counter() - start,
            )
            configure_trace_logging(enabled=False)

    logger.debug("[CLI] %s finished with exit code %d in %ss", args.command, code,
                 format_number(time.perf_counter() - start))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
