"""
Scenario spaces: a finite measure space (Omega, mu) with payoff X and
default density p0, represented as a list of weighted atoms.

Continuous one-dimensional spaces are discretised once, at construction,
with Gauss-Legendre quadrature. The interval endpoints are kept as
zero-weight *closure points*: they never enter an integral, but they take
part in m, M and in the boundary of dom K, which is what the limit points
of a continuous support do.

Scenario files are comma-separated with header
``node_id,coordinate,weight,payoff,p0``; rows with weight 0 are closure
points.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError, ValidationError

logger = logging.getLogger(__name__)

SCENARIO_HEADER = ("node_id", "coordinate", "weight", "payoff", "p0")
DEFAULT_DENSITY_TOL = 1e-8


@dataclass(frozen=True)
class Atom:
    """One weighted atom: mu-mass ``weight`` carrying payoff X and density p0."""
    node_id: str
    coordinate: float
    weight: float
    payoff: float
    default_density: float


@dataclass(frozen=True)
class ClosurePoint:
    """A zero-weight limit point of the support (e.g. a quadrature endpoint).

    ``default_density`` may be +inf.
    """
    node_id: str
    coordinate: float
    payoff: float
    default_density: float


def _frozen(values: Iterable[float]) -> np.ndarray:
    arr = np.array(list(values), dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ScenarioSpace:
    """Validated atom list with derived scalars m, M and b0.

    Use :func:`build_discrete` or :func:`build_quadrature` rather than the
    constructor; they run the validation.
    """
    atoms: Tuple[Atom, ...]
    closure: Tuple[ClosurePoint, ...] = ()
    weights: np.ndarray = field(init=False, repr=False)
    payoffs: np.ndarray = field(init=False, repr=False)
    default_density: np.ndarray = field(init=False, repr=False)
    coordinates: np.ndarray = field(init=False, repr=False)
    closure_payoffs: np.ndarray = field(init=False, repr=False)
    closure_default_density: np.ndarray = field(init=False, repr=False)
    m: float = field(init=False)
    M: float = field(init=False)
    b0: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _frozen(a.weight for a in self.atoms))
        object.__setattr__(self, "payoffs", _frozen(a.payoff for a in self.atoms))
        object.__setattr__(self, "default_density", _frozen(a.default_density for a in self.atoms))
        object.__setattr__(self, "coordinates", _frozen(a.coordinate for a in self.atoms))
        object.__setattr__(self, "closure_payoffs", _frozen(c.payoff for c in self.closure))
        object.__setattr__(
            self, "closure_default_density", _frozen(c.default_density for c in self.closure)
        )
        all_payoffs = np.concatenate([self.payoffs, self.closure_payoffs])
        object.__setattr__(self, "m", float(np.min(all_payoffs)) if all_payoffs.size else math.nan)
        object.__setattr__(self, "M", float(np.max(all_payoffs)) if all_payoffs.size else math.nan)
        object.__setattr__(
            self, "b0", float(np.sum(self.weights * self.default_density * self.payoffs))
        )

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def node_ids(self) -> List[str]:
        return [a.node_id for a in self.atoms]

    @property
    def size(self) -> int:
        return len(self.atoms)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_discrete(
    atoms: Sequence[Atom],
    closure: Optional[Sequence[ClosurePoint]] = None,
    density_tol: float = DEFAULT_DENSITY_TOL,
) -> ScenarioSpace:
    """Validate an atom list and derive (m, M, b0).

    Args:
        atoms: Atoms with positive weights
        closure: Optional zero-weight closure points
        density_tol: Accepted deviation of sum(w * p0) from 1

    Raises:
        ValidationError: nonpositive weight, non-normalised p0, or
            m < b0 < M violated
    """
    atoms = tuple(atoms)
    closure = tuple(closure or ())
    if not atoms:
        raise ValidationError("scenario needs at least one atom")

    for a in atoms:
        if not (math.isfinite(a.weight) and a.weight > 0):
            raise ValidationError(f"atom {a.node_id}: weight must be positive, got {a.weight!r}")
        if not math.isfinite(a.payoff):
            raise ValidationError(f"atom {a.node_id}: payoff must be finite, got {a.payoff!r}")
        if not (math.isfinite(a.default_density) and a.default_density >= 0):
            raise ValidationError(
                f"atom {a.node_id}: default density must be finite and >= 0, "
                f"got {a.default_density!r}"
            )
    for c in closure:
        if not math.isfinite(c.payoff):
            raise ValidationError(f"closure point {c.node_id}: payoff must be finite")
        if math.isnan(c.default_density) or c.default_density < 0:
            raise ValidationError(f"closure point {c.node_id}: default density must be >= 0")

    space = ScenarioSpace(atoms=atoms, closure=closure)

    mass = float(np.sum(space.weights * space.default_density))
    if abs(mass - 1.0) > density_tol:
        raise ValidationError(
            f"default density is not normalised: sum(w * p0) = {mass!r} (tolerance {density_tol})"
        )
    if not (space.m < space.b0 < space.M):
        raise ValidationError(
            f"payoff must satisfy m < b0 < M, got m={space.m!r}, b0={space.b0!r}, M={space.M!r}"
        )

    logger.debug(
        "[SCENARIO] built space: %d atoms, %d closure points, m=%.6g b0=%.6g M=%.6g",
        len(atoms), len(closure), space.m, space.b0, space.M,
    )
    return space


def gauss_legendre(a: float, b: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on (a, b)."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def _sample(fn: Callable, r: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.asarray(fn(r), dtype=float)
    return np.broadcast_to(values, r.shape).astype(float)


def build_quadrature(
    a: float,
    b: float,
    n: int,
    mu_density: Callable,
    payoff: Callable,
    p0: Callable,
    mass_tol: float = 1e-6,
    density_tol: float = DEFAULT_DENSITY_TOL,
    closure: bool = True,
) -> ScenarioSpace:
    """Discretise a 1-D space on (a, b) with an n-point Gauss-Legendre rule.

    The callables receive a numpy array of nodes. The p0 column is rescaled
    by its computed mass when that mass is within ``mass_tol`` of 1, which
    absorbs quadrature error. With ``closure`` the endpoints a and b become
    closure points (dropped where payoff or p0 is undefined there).

    Raises:
        ValidationError: a >= b, n < 2, mu_density not positive at the
            nodes, or p0 mass off by more than ``mass_tol``
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValidationError(f"quadrature interval needs finite a < b, got ({a!r}, {b!r})")
    if int(n) != n or n < 2:
        raise ValidationError(f"quadrature needs n >= 2 nodes, got {n!r}")
    n = int(n)

    nodes, gl_weights = gauss_legendre(a, b, n)
    mu = _sample(mu_density, nodes)
    if not np.all(np.isfinite(mu) & (mu > 0)):
        raise ValidationError("mu_density must be positive and finite at every node")
    weights = gl_weights * mu
    payoffs = _sample(payoff, nodes)
    density = _sample(p0, nodes)

    mass = float(np.sum(weights * density))
    if not math.isfinite(mass) or abs(mass - 1.0) >= mass_tol:
        raise ValidationError(
            f"p0 is not a probability density on ({a}, {b}): quadrature mass {mass!r}"
        )
    density = density / mass

    atoms = [
        Atom(f"q{i:04d}", float(nodes[i]), float(weights[i]), float(payoffs[i]), float(density[i]))
        for i in range(n)
    ]

    closure_points: List[ClosurePoint] = []
    if closure:
        ends = np.array([a, b], dtype=float)
        end_payoffs = _sample(payoff, ends)
        end_density = _sample(p0, ends) / mass
        for label, r, x, d in zip(("lo", "hi"), ends, end_payoffs, end_density):
            if not math.isfinite(x) or math.isnan(d):
                logger.debug("[SCENARIO] dropping closure point at r=%r (payoff %r, p0 %r)", r, x, d)
                continue
            closure_points.append(ClosurePoint(f"end_{label}", float(r), float(x), float(d)))

    return build_discrete(atoms, closure_points, density_tol=density_tol)


# ---------------------------------------------------------------------------
# Densities over a space
# ---------------------------------------------------------------------------

def as_density_vector(space: ScenarioSpace, values, name: str = "p") -> np.ndarray:
    """Coerce ``values`` to a float vector with one entry per atom.

    Raises:
        DimensionError: wrong length
        DomainError: negative or NaN entries
    """
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape[0] != space.size:
        raise DimensionError(f"{name} has {arr.shape[0]} values, space has {space.size} atoms")
    if np.isnan(arr).any() or (arr < 0).any():
        raise DomainError(f"{name} must be nonnegative at every atom")
    return arr


def _check_dim(space: ScenarioSpace, p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.shape[0] != space.size:
        raise DimensionError(f"vector has {arr.shape[0]} values, space has {space.size} atoms")
    return arr


def total_mass(space: ScenarioSpace, p) -> float:
    """sum_i w_i p_i."""
    return float(np.sum(space.weights * _check_dim(space, p)))


def expectation(space: ScenarioSpace, p) -> float:
    """sum_i w_i p_i x_i."""
    return float(np.sum(space.weights * _check_dim(space, p) * space.payoffs))


def is_density(space: ScenarioSpace, p, tol: float = DEFAULT_DENSITY_TOL) -> bool:
    """Nonnegative with total mass 1 within ``tol``."""
    arr = _check_dim(space, p)
    return bool((arr >= 0).all() and abs(total_mass(space, arr) - 1.0) <= tol)


# ---------------------------------------------------------------------------
# Scenario files
# ---------------------------------------------------------------------------

def _parse_float(text: str, column: str, line: int) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ValidationError(f"line {line}: column {column} is not a number: {text!r}") from None


def load_scenario_csv(path: str, density_tol: float = DEFAULT_DENSITY_TOL) -> ScenarioSpace:
    """Read a scenario file (header ``node_id,coordinate,weight,payoff,p0``).

    Rows with weight 0 are closure points; negative weights are rejected.

    Raises:
        ValidationError: bad header, unparsable number, or an invalid space
    """
    atoms: List[Atom] = []
    closure: List[ClosurePoint] = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty scenario file") from None
        header = [h.strip() for h in header]
        if header and header[0].startswith("\ufeff"):
            header[0] = header[0][1:]
        if tuple(header) != SCENARIO_HEADER:
            raise ValidationError(
                f"{path}: header must be {','.join(SCENARIO_HEADER)}, got {','.join(header)}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(SCENARIO_HEADER):
                raise ValidationError(f"line {line_no}: expected 5 columns, got {len(row)}")
            node_id = row[0].strip()
            coordinate = _parse_float(row[1], "coordinate", line_no)
            weight = _parse_float(row[2], "weight", line_no)
            payoff = _parse_float(row[3], "payoff", line_no)
            p0 = _parse_float(row[4], "p0", line_no)
            if weight < 0 or math.isnan(weight):
                raise ValidationError(f"line {line_no}: weight must be >= 0, got {weight!r}")
            if weight == 0:
                closure.append(ClosurePoint(node_id, coordinate, payoff, p0))
            else:
                atoms.append(Atom(node_id, coordinate, weight, payoff, p0))

    logger.info("[SCENARIO] loaded %s: %d atoms, %d closure points", path, len(atoms), len(closure))
    return build_discrete(atoms, closure, density_tol=density_tol)


def write_scenario_csv(space: ScenarioSpace, path: str) -> None:
    """Write ``space`` so that :func:`load_scenario_csv` rebuilds it exactly."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SCENARIO_HEADER)
        for a in space.atoms:
            writer.writerow([
                a.node_id, repr(float(a.coordinate)), repr(float(a.weight)),
                repr(float(a.payoff)), repr(float(a.default_density)),
            ])
        for c in space.closure:
            writer.writerow([
                c.node_id, repr(float(c.coordinate)), "0.0",
                repr(float(c.payoff)), repr(float(c.default_density)),
            ])
