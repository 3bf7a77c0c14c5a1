"""Solver configuration.

All tolerances and grid constants live in one dataclass so a run can be
reproduced from a single JSON file (``divrisk --config solver.json``).
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict

logger = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    """Numerical settings shared by the solver, classifier and builders.

    Override via ``SolverConfig(**overrides)`` or ``load_from_file(path)``.
    """

    # Inner root (theta1) search
    tol_mass: float = 1e-10        # |mass - 1| accepted as a density
    max_expand: int = 200          # bracket growth steps before giving up
    expand_factor: float = 2.0     # geometric growth of brackets
    max_iter: int = 400            # root finder / golden-section iterations

    # Outer maximisation over theta2
    tol_theta2: float = 1e-10      # relative width of the final golden-section bracket

    # Existence probes (64 log-spaced theta2 in [-2^20, -2^-10])
    probe_count: int = 64
    probe_min_exp: int = -10
    probe_max_exp: int = 20

    # k_max estimation
    kmax_steps: int = 40
    kmax_rel_tol: float = 1e-6

    # Tolerances on reported checks
    bound_slack: float = 1e-9      # slack on the AWCD Bregman bound
    density_tol: float = 1e-8      # |sum w p0 - 1| accepted at construction
    consistency_tol: float = 1e-6  # |F(V(k)) - k| above which a warning is logged

    # Quadrature
    quadrature_nodes: int = 200
    quadrature_mass_tol: float = 1e-6

    def to_dict(self) -> Dict[str, Any]:
        """Serialize config to dict."""
        return asdict(self)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "SolverConfig":
        """Create config from dict, ignoring unknown keys."""
        known = {f.name for f in SolverConfig.__dataclass_fields__.values()}
        filtered = {k: v for k, v in data.items() if k in known}
        return SolverConfig(**filtered)

    @staticmethod
    def load_from_file(path: str) -> "SolverConfig":
        """Load a SolverConfig from a JSON file.

        Falls back to default values if the file is missing or invalid.

        Args:
            path: Path to a JSON object with any subset of the fields.
        """
        config = SolverConfig()

        try:
            config_file = Path(path)
            if not config_file.exists():
                logger.info(
                    "[DIVRISK_CONFIG] Config file not found: %s, using defaults",
                    path,
                )
                return config

            with open(config_file, encoding="utf-8") as f:
                data = json.load(f)

            if not isinstance(data, dict):
                raise TypeError("top-level JSON value must be an object")

            config = SolverConfig.from_dict(data)
            logger.info("[DIVRISK_CONFIG] Loaded solver config from %s", path)

        except Exception as e:
            logger.warning(
                "[DIVRISK_CONFIG] Failed to load config from %s: %s, using defaults",
                path,
                e,
            )
            config = SolverConfig()

        return config
