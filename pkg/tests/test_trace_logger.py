"""Tests for divrisk.trace_logger."""

import logging
import os
import tempfile

import divrisk.trace_logger as mod
from divrisk.catalog import kl_two_point
from divrisk.integrands import IntegrandSpec
from divrisk.solver import WorstCaseSolver
from divrisk.trace_logger import (
    SolverTraceLogger,
    configure_trace_logging,
    get_trace_logger,
)


def _read_and_close(tl, log_file):
    # Flush and close handlers so Windows releases file locks
    for h in tl.logger.handlers:
        h.flush()
    tl.close()
    with open(log_file, encoding="utf-8") as f:
        return f.read()


class TestTraceLogger:
    def test_creation_with_defaults(self):
        tl = SolverTraceLogger(log_file=None, console_output=False)
        assert tl.logger is not None
        assert tl.enabled is False
        assert tl.logger.propagate is False

    def test_log_file_creation(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            log_file = os.path.join(tmpdir, "subdir", "trace.log")
            tl = SolverTraceLogger(log_file=log_file, console_output=False)
            assert tl.enabled
            tl.log_value_report(1.0, 0.2231302, -4.4816891, 0.4462603, "NONE", 0.01)
            content = _read_and_close(tl, log_file)
            assert "WORST CASE VALUE" in content
            assert "0.2231302" in content

    def test_structured_events(self):
        tl = SolverTraceLogger(log_file=None, console_output=False)
        # These should not raise
        tl.log_inner_solve(-4.0, 0.0, "BOUNDARY", 0.5, 3)
        tl.log_bracket("V", -8.0, -4.0, -2.0)
        tl.log_kmax(float("inf"), {1: 0.1, 2: 0.5, 3: 0.9})
        tl.log_classification("CRITICAL", 0.1931472, -2.0, 64, 30)
        tl.log_classification("NEVER_WCD_OBSERVED", None, None, 64, 64)
        tl.log_certificate(True, 0.987793, 2.016760, True)
        tl.log_run_summary("vk", {"scenario": "burg2r.csv"}, 0.2)

    def test_debug_events_respect_level(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            log_file = os.path.join(tmpdir, "trace.log")
            tl = SolverTraceLogger(log_file=log_file, console_output=False, log_level=logging.INFO)
            tl.log_inner_solve(-1.0, -0.5, "INTERIOR", 1.0, 2)
            tl.log_certificate(False, 3.0, 1.0, False)
            content = _read_and_close(tl, log_file)
            assert "INNER" not in content
            assert "AWCD CERTIFICATE VIOLATED" in content


class TestSingleton:
    def test_get_trace_logger_creates_instance(self):
        mod._global_trace_logger = None  # Reset singleton
        tl = get_trace_logger()
        assert tl is not None
        assert tl.enabled is False
        # Calling again returns same instance
        assert get_trace_logger() is tl
        mod._global_trace_logger = None  # Clean up

    def test_configure_disables_logging(self):
        configure_trace_logging(enabled=False)
        assert mod._global_trace_logger is None

    def test_solver_events_reach_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            log_file = os.path.join(tmpdir, "solver.log")
            configure_trace_logging(enabled=True, log_file=log_file, log_level=logging.DEBUG)
            try:
                solver = WorstCaseSolver(IntegrandSpec.f_divergence("kl"), kl_two_point())
                solver.value_at_k(0.2)
                content = _read_and_close(get_trace_logger(), log_file)
            finally:
                configure_trace_logging(enabled=False)
            assert "INNER theta2=" in content
            assert "BRACKET V" in content
            assert "K_MAX ESTIMATE" in content
