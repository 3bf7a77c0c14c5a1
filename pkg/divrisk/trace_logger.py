"""
Solver Trace Logger.

Provides structured trace logging for solver events: inner solves,
bracket searches, worst case reports, classifications and certificates.
Supports configurable output and singleton access.

Tracing is off until :func:`configure_trace_logging` installs handlers
(the CLI does so for ``--trace FILE``).
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional


class SolverTraceLogger:
    """Dedicated logger for solver events."""

    def __init__(
        self,
        log_file: Optional[str] = None,
        console_output: bool = True,
        log_level: int = logging.DEBUG,
    ):
        self.logger = logging.getLogger(f"divrisk.solver_trace.{id(self)}")
        self.logger.setLevel(log_level)
        self.logger.propagate = False

        # Clear existing handlers
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)

        # File handler
        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(log_level)
            file_formatter = logging.Formatter(
                "%(asctime)s | %(levelname)-8s | %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
            file_handler.setFormatter(file_formatter)
            self.logger.addHandler(file_handler)

        # Console handler
        if console_output:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(logging.INFO)
            console_formatter = logging.Formatter("%(levelname)-8s | %(message)s")
            console_handler.setFormatter(console_formatter)
            self.logger.addHandler(console_handler)

        if not self.logger.handlers:
            self.logger.addHandler(logging.NullHandler())

    @property
    def enabled(self) -> bool:
        return not all(isinstance(h, logging.NullHandler) for h in self.logger.handlers)

    def close(self):
        for handler in self.logger.handlers[:]:
            handler.close()
            self.logger.removeHandler(handler)

    def log_inner_solve(
        self,
        theta2: float,
        theta1_star: float,
        case: str,
        mass: float,
        iterations: int,
    ):
        self.logger.debug(
            "INNER theta2=%.10g theta1*=%.10g case=%s mass=%.12g expansions=%d",
            theta2, theta1_star, case, mass, iterations,
        )

    def log_bracket(self, purpose: str, a: float, b: float, c: float):
        self.logger.debug("BRACKET %s: [%.10g, %.10g, %.10g]", purpose, a, b, c)

    def log_value_report(
        self,
        k: float,
        v: float,
        theta2_star: float,
        localiser_mass: float,
        trivial_branch: str,
        elapsed_time: float,
    ):
        self.logger.info("=== WORST CASE VALUE ===")
        self.logger.info("k: %.9g", k)
        self.logger.info("V(k): %.9g", v)
        self.logger.info("theta2*: %.9g", theta2_star)
        self.logger.info("Localiser mass: %.9g", localiser_mass)
        self.logger.info("Branch: %s", trivial_branch)
        self.logger.info("Time: %.3fs", elapsed_time)

    def log_kmax(self, k_max: float, values: Dict[int, float]):
        self.logger.info("=== K_MAX ESTIMATE ===")
        self.logger.info("k_max: %.9g", k_max)
        for j in sorted(values)[-3:]:
            self.logger.debug("  F(m + delta_%d) = %.12g", j, values[j])

    def log_classification(
        self,
        regime: str,
        k_critical: Optional[float],
        theta_tilde_min: Optional[float],
        probe_count: int,
        boundary_count: int,
    ):
        self.logger.info("=== CLASSIFICATION ===")
        self.logger.info("Regime: %s", regime)
        if k_critical is not None:
            self.logger.info("k_critical: %.9g", k_critical)
        if theta_tilde_min is not None:
            self.logger.info("theta_tilde_min: %.9g", theta_tilde_min)
        self.logger.info("Probes: %d (%d boundary)", probe_count, boundary_count)

    def log_certificate(
        self,
        is_awcd: bool,
        bregman: float,
        bound: float,
        bound_holds: bool,
    ):
        status = "HOLDS" if bound_holds else "VIOLATED"
        self.logger.info("=== AWCD CERTIFICATE %s ===", status)
        self.logger.info("AWCD: %s", is_awcd)
        self.logger.info("B(p, q_hat): %.9g", bregman)
        self.logger.info("Bound: %.9g", bound)

    def log_run_summary(self, command: str, details: Dict[str, Any], elapsed_time: float):
        self.logger.info("=== RUN SUMMARY ===")
        self.logger.info("Command: %s", command)
        for key, value in details.items():
            self.logger.info("  %s: %s", key, value)
        self.logger.info("Time: %.3fs", elapsed_time)


# Global singleton
_global_trace_logger: Optional[SolverTraceLogger] = None


def get_trace_logger() -> SolverTraceLogger:
    """Get or create the global trace logger.

    Until :func:`configure_trace_logging` is called the logger has no
    handlers and events are dropped.
    """
    global _global_trace_logger

    if _global_trace_logger is None:
        _global_trace_logger = SolverTraceLogger(log_file=None, console_output=False)

    return _global_trace_logger


def configure_trace_logging(
    enabled: bool = True,
    log_file: Optional[str] = None,
    console_output: bool = False,
    log_level: int = logging.INFO,
):
    """Configure global trace logging settings."""
    global _global_trace_logger

    if _global_trace_logger is not None:
        _global_trace_logger.close()

    if enabled:
        _global_trace_logger = SolverTraceLogger(
            log_file=log_file,
            console_output=console_output,
            log_level=log_level,
        )
    else:
        _global_trace_logger = None
