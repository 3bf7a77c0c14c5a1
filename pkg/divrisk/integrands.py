"""
Convex integrands beta(r, s) and their conjugates.

An integrand is built from one of four strictly convex generators f and
used either autonomously (beta(r, s) = f(s), an f-divergence) or lifted by
a reference density p0 into a Bregman integrand
beta(r, s) = Delta_f(s, p0(r)). For every generator the module supplies
f, f', f*, (f*)', the Bregman increment and the derivative limits in
closed form; nothing is conjugated numerically.

Extended reals follow IEEE semantics: beta(r, s) = +inf for s < 0, values
at s = 0 are limits, and f*(tau) = +inf right of f'(+inf).

Example:
    >>> spec = IntegrandSpec.f_divergence("burg")
    >>> float(spec.conjugate(np.array(-1.0)))
    -1.0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy.special import rel_entr, xlogy

from .errors import DomainError, ValidationError
from .types import GeneratorId, IntegrandMode

logger = logging.getLogger(__name__)

ArrayFn = Callable[[np.ndarray], np.ndarray]
INF = float("inf")


@dataclass(frozen=True)
class Generator:
    """Closed-form description of a convex generator f on [0, +inf).

    ``shift`` is added to f in f-divergence mode so that f(1) = 0; the
    conjugate moves by the opposite amount and Delta_f is unaffected.
    """
    gid: GeneratorId
    f: ArrayFn
    f_prime: ArrayFn
    conjugate: ArrayFn
    conjugate_deriv: ArrayFn
    delta: Callable[[np.ndarray, np.ndarray], np.ndarray]
    f_at_zero: float
    f_prime_at_zero: float
    f_prime_at_inf: float
    c: float
    shift: float = 0.0
    description: str = ""

    @property
    def cofinite(self) -> bool:
        return self.c == INF


# ---------------------------------------------------------------------------
# KL: f(s) = s log s
# ---------------------------------------------------------------------------

def _kl_f(s):
    return xlogy(s, s)


def _kl_f_prime(s):
    return np.log(s) + 1.0


def _kl_conjugate(tau):
    return np.exp(tau - 1.0)


def _kl_delta(s, t):
    # s log(s/t) - s + t, with 0 log 0 = 0 and +inf for s > 0 = t
    return rel_entr(s, t) - s + t


# ---------------------------------------------------------------------------
# Burg: f(s) = -log s
# ---------------------------------------------------------------------------

def _burg_f(s):
    return -np.log(s)


def _burg_f_prime(s):
    return -1.0 / s


def _burg_conjugate(tau):
    return np.where(tau < 0, -1.0 - np.log(-tau), INF)


def _burg_conjugate_deriv(tau):
    return np.where(tau < 0, -1.0 / tau, INF)


def _burg_delta(s, t):
    ratio = s / t
    x = ratio - 1.0
    value = x - np.log1p(x)
    value = np.where(np.isinf(ratio), INF, value)
    return np.where((s == 0) & (t == 0), 0.0, value)


# ---------------------------------------------------------------------------
# Squared: f(s) = s^2 (stored as s^2 - 1 in f-divergence mode)
# ---------------------------------------------------------------------------

def _sq_f(s):
    return s * s


def _sq_f_prime(s):
    return 2.0 * s


def _sq_conjugate(tau):
    pos = np.maximum(tau, 0.0)
    return 0.25 * pos * pos


def _sq_conjugate_deriv(tau):
    return 0.5 * np.maximum(tau, 0.0)


def _squared_gap(s, t):
    d = s - t
    return d * d


# ---------------------------------------------------------------------------
# Chi-square: f(s) = (s - 1)^2
# ---------------------------------------------------------------------------

def _chi2_f(s):
    d = s - 1.0
    return d * d


def _chi2_f_prime(s):
    return 2.0 * (s - 1.0)


def _chi2_conjugate(tau):
    return np.where(tau >= -2.0, tau + 0.25 * tau * tau, -1.0)


def _chi2_conjugate_deriv(tau):
    return np.maximum(1.0 + 0.5 * tau, 0.0)


GENERATORS: Dict[GeneratorId, Generator] = {
    GeneratorId.KL: Generator(
        gid=GeneratorId.KL,
        f=_kl_f,
        f_prime=_kl_f_prime,
        conjugate=_kl_conjugate,
        conjugate_deriv=_kl_conjugate,
        delta=_kl_delta,
        f_at_zero=0.0,
        f_prime_at_zero=-INF,
        f_prime_at_inf=INF,
        c=INF,
        description="s log s (Kullback-Leibler / I-divergence)",
    ),
    GeneratorId.BURG: Generator(
        gid=GeneratorId.BURG,
        f=_burg_f,
        f_prime=_burg_f_prime,
        conjugate=_burg_conjugate,
        conjugate_deriv=_burg_conjugate_deriv,
        delta=_burg_delta,
        f_at_zero=INF,
        f_prime_at_zero=-INF,
        f_prime_at_inf=0.0,
        c=0.0,
        description="-log s (Burg entropy / reverse KL)",
    ),
    GeneratorId.SQUARED: Generator(
        gid=GeneratorId.SQUARED,
        f=_sq_f,
        f_prime=_sq_f_prime,
        conjugate=_sq_conjugate,
        conjugate_deriv=_sq_conjugate_deriv,
        delta=_squared_gap,
        f_at_zero=0.0,
        f_prime_at_zero=0.0,
        f_prime_at_inf=INF,
        c=INF,
        shift=-1.0,
        description="s^2 (squared L2 distance)",
    ),
    GeneratorId.CHI2: Generator(
        gid=GeneratorId.CHI2,
        f=_chi2_f,
        f_prime=_chi2_f_prime,
        conjugate=_chi2_conjugate,
        conjugate_deriv=_chi2_conjugate_deriv,
        delta=_squared_gap,
        f_at_zero=1.0,
        f_prime_at_zero=-2.0,
        f_prime_at_inf=INF,
        c=INF,
        description="(s - 1)^2 (Pearson chi-square)",
    ),
}


def resolve_generator(generator: Union[str, GeneratorId]) -> GeneratorId:
    """Map a generator name (``kl``, ``burg``, ``squared``, ``chi2``) to its id."""
    if isinstance(generator, GeneratorId):
        return generator
    try:
        return GeneratorId(str(generator).strip().lower())
    except ValueError:
        names = ", ".join(g.value for g in GeneratorId)
        raise ValidationError(
            f"unknown divergence '{generator}' (expected one of: {names})"
        ) from None


def _as_reference(values, label: str, require_positive: bool, allow_inf: bool) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if np.isnan(arr).any():
        raise ValidationError(f"{label} contains NaN")
    if (arr < 0).any():
        raise ValidationError(f"{label} must be nonnegative")
    if not allow_inf and np.isinf(arr).any():
        raise ValidationError(f"{label} must be finite at every atom")
    if require_positive and (arr <= 0).any():
        idx = int(np.argmax(arr <= 0))
        raise ValidationError(
            f"{label} must be strictly positive for a generator with f'(0) = -inf "
            f"(atom {idx} has {arr[idx]!r})"
        )
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class IntegrandSpec:
    """A convex integrand family beta(r, s).

    In ``F_DIVERGENCE`` mode beta(r, s) = f(s) for every atom. In
    ``BREGMAN`` mode beta(r, s) = Delta_f(s, t) with t = p0(r) taken from
    ``reference_density`` (one value per atom) and ``closure_reference``
    (one value per closure point of the bound space).
    """
    generator: GeneratorId
    mode: IntegrandMode = IntegrandMode.F_DIVERGENCE
    reference_density: Optional[np.ndarray] = None
    closure_reference: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "generator", resolve_generator(self.generator))
        gen = GENERATORS[self.generator]
        if self.mode is IntegrandMode.BREGMAN:
            if self.reference_density is None:
                raise ValidationError("Bregman mode requires a reference density")
            ref = _as_reference(
                self.reference_density,
                "reference density",
                require_positive=gen.f_prime_at_zero == -INF,
                allow_inf=False,
            )
            object.__setattr__(self, "reference_density", ref)
            closure = self.closure_reference if self.closure_reference is not None else []
            object.__setattr__(
                self,
                "closure_reference",
                _as_reference(closure, "closure reference density", False, True),
            )
        else:
            if self.reference_density is not None:
                raise ValidationError("f-divergence mode takes no reference density")

    # -- construction -------------------------------------------------------

    @classmethod
    def f_divergence(cls, generator: Union[str, GeneratorId]) -> "IntegrandSpec":
        """Autonomous integrand beta(r, s) = f(s)."""
        return cls(generator=resolve_generator(generator))

    @classmethod
    def bregman(cls, generator: Union[str, GeneratorId], space) -> "IntegrandSpec":
        """Bregman integrand lifted by the default density of ``space``."""
        return cls(
            generator=resolve_generator(generator),
            mode=IntegrandMode.BREGMAN,
            reference_density=space.default_density,
            closure_reference=space.closure_default_density,
        )

    # -- static properties --------------------------------------------------

    @property
    def gen(self) -> Generator:
        return GENERATORS[self.generator]

    @property
    def is_autonomous(self) -> bool:
        return self.mode is IntegrandMode.F_DIVERGENCE

    @property
    def c(self) -> float:
        return self.gen.c

    @property
    def cofinite(self) -> bool:
        return self.gen.cofinite

    @property
    def f_prime_at_zero(self) -> float:
        return self.gen.f_prime_at_zero

    @property
    def f_prime_at_inf(self) -> float:
        return self.gen.f_prime_at_inf

    @property
    def n_atoms(self) -> Optional[int]:
        return None if self.reference_density is None else len(self.reference_density)

    def describe(self) -> str:
        suffix = " (Bregman)" if self.mode is IntegrandMode.BREGMAN else ""
        return f"{self.generator.value}{suffix}"

    # -- vectorised evaluation ---------------------------------------------
    # ``t`` is the reference value(s) aligned with the first argument; it
    # defaults to the per-atom reference density and is ignored in
    # f-divergence mode.

    def _t(self, t):
        if self.mode is IntegrandMode.F_DIVERGENCE:
            return None
        return self.reference_density if t is None else np.asarray(t, dtype=float)

    def beta(self, s, t=None) -> np.ndarray:
        """beta(r, s); +inf for s < 0 and the limit at s = 0."""
        gen = self.gen
        s = np.asarray(s, dtype=float)
        t = self._t(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s_pos = np.maximum(s, 0.0)
            if t is None:
                value = gen.f(s_pos) + gen.shift
            else:
                value = np.maximum(gen.delta(s_pos, t), 0.0)
        return np.where(s < 0, INF, value)

    def conjugate(self, tau, t=None) -> np.ndarray:
        """beta*(r, tau) = sup_s [s tau - beta(r, s)]."""
        gen = self.gen
        tau = np.asarray(tau, dtype=float)
        t = self._t(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if t is None:
                return gen.conjugate(tau) - gen.shift
            fp_t = gen.f_prime(t)
            # f(t) - f'(t) t is finite for t > 0 and for t = 0 with f'(0) finite
            offset = gen.f(t) - np.where(t == 0, 0.0, fp_t * t)
            return gen.conjugate(tau + fp_t) + offset

    def conjugate_deriv(self, tau, t=None) -> np.ndarray:
        """(beta*)'(r, tau); +inf where tau >= beta'(r, +inf) and the latter is finite."""
        gen = self.gen
        tau = np.asarray(tau, dtype=float)
        t = self._t(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if t is None:
                return gen.conjugate_deriv(tau)
            return gen.conjugate_deriv(tau + gen.f_prime(t))

    def deriv_limits(self, t=None) -> Tuple[np.ndarray, np.ndarray]:
        """(beta'(r, 0), beta'(r, +inf)) per reference value."""
        gen = self.gen
        t = self._t(t)
        if t is None:
            return np.asarray(gen.f_prime_at_zero), np.asarray(gen.f_prime_at_inf)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            fp_t = gen.f_prime(t)
            lower = gen.f_prime_at_zero - fp_t
            lower = np.where(np.isnan(lower), -INF, lower)
            if gen.f_prime_at_inf == INF:
                upper = np.full_like(fp_t, INF)
            else:
                upper = gen.f_prime_at_inf - fp_t
        return lower, upper

    def closure_limits(self) -> Tuple[np.ndarray, np.ndarray]:
        """Derivative limits at the closure points of the bound space."""
        if self.mode is IntegrandMode.F_DIVERGENCE:
            return self.deriv_limits()
        return self.deriv_limits(self.closure_reference)

    def delta(self, s, u) -> np.ndarray:
        """Bregman increment Delta_{beta(r, .)}(s, u) = Delta_f(s, u); +inf for s < 0."""
        s = np.asarray(s, dtype=float)
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            value = np.maximum(self.gen.delta(np.maximum(s, 0.0), u), 0.0)
        return np.where(s < 0, INF, value)

    # -- per-atom helpers ---------------------------------------------------

    def reference_at(self, atom: Optional[int]) -> Optional[float]:
        """Reference density at ``atom`` (None in f-divergence mode)."""
        if self.mode is IntegrandMode.F_DIVERGENCE:
            return None
        if atom is None:
            raise DomainError("Bregman integrands need an atom index")
        n = len(self.reference_density)
        if not (-n <= int(atom) < n):
            raise DomainError(f"atom index {atom} out of range for {n} atoms")
        return float(self.reference_density[int(atom)])


# ---------------------------------------------------------------------------
# Per-atom operations
# ---------------------------------------------------------------------------

def beta_value(spec: IntegrandSpec, atom: Optional[int], s: float) -> float:
    """beta(r, s) at one atom; total on the extended reals."""
    return float(spec.beta(s, spec.reference_at(atom)))


def beta_conjugate(spec: IntegrandSpec, atom: Optional[int], tau: float) -> float:
    """beta*(r, tau) at one atom."""
    return float(spec.conjugate(tau, spec.reference_at(atom)))


def beta_deriv_limits(spec: IntegrandSpec, atom: Optional[int]) -> Tuple[float, float]:
    """(beta'(r, 0), beta'(r, +inf)) at one atom."""
    lower, upper = spec.deriv_limits(spec.reference_at(atom))
    return float(lower), float(upper)


def beta_conjugate_deriv(spec: IntegrandSpec, atom: Optional[int], tau: float) -> float:
    """(beta*)'(r, tau) at one atom.

    Raises:
        DomainError: if tau >= beta'(r, +inf) and that limit is finite
    """
    t = spec.reference_at(atom)
    _, upper = spec.deriv_limits(t)
    upper = float(upper)
    if np.isfinite(upper) and tau >= upper:
        raise DomainError(
            f"(beta*)' undefined at tau={tau!r}: must stay below beta'(r,+inf)={upper!r}"
        )
    return float(spec.conjugate_deriv(tau, t))


def bregman_delta(spec: IntegrandSpec, atom: Optional[int], s: float, t: float) -> float:
    """Delta_{beta(r, .)}(s, t) for s, t >= 0; always >= 0, possibly +inf.

    Raises:
        DomainError: if t < 0
    """
    if t < 0 or np.isnan(t):
        raise DomainError(f"Bregman increment needs t >= 0, got {t!r}")
    if spec.mode is IntegrandMode.BREGMAN:
        spec.reference_at(atom)
    return float(spec.delta(s, t))
