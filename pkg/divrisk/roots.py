"""
One-dimensional search primitives: bracketed roots and golden-section
maximisation with geometric bracket expansion.

Root finding delegates to ``scipy.optimize.brentq`` (bisection-safeguarded
and bracketed); maximisation is a plain golden-section search because the
objectives here are unimodal and often only piecewise smooth.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Tuple

from scipy.optimize import brentq

from .errors import ConvergenceError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0        # 1 / phi
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0  # 1 / phi^2

# brentq's smallest admissible relative tolerance is 4 * machine epsilon
_BRENT_RTOL = 4.0 * 2.220446049250313e-16


def find_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-14,
    max_iter: int = 400,
) -> float:
    """Root of ``fn`` on [lo, hi]; ``fn(lo)`` and ``fn(hi)`` must differ in sign.

    Raises:
        ConvergenceError: no sign change, or brentq did not converge
    """
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or (f_lo > 0) == (f_hi > 0):
        raise ConvergenceError(
            f"root not bracketed on [{lo!r}, {hi!r}]: f = ({f_lo!r}, {f_hi!r})"
        )
    try:
        root, info = brentq(fn, lo, hi, xtol=xtol, rtol=_BRENT_RTOL, maxiter=max_iter,
                            full_output=True, disp=False)
    except (RuntimeError, ValueError) as e:
        raise ConvergenceError(f"root search failed on [{lo!r}, {hi!r}]: {e}") from e
    if not info.converged:
        raise ConvergenceError(
            f"root search did not converge on [{lo!r}, {hi!r}] after {info.iterations} iterations"
        )
    return float(root)


def bracket_maximum_negative(
    fn: Callable[[float], float],
    start: float = -1.0,
    factor: float = 2.0,
    max_expand: int = 200,
) -> Tuple[float, float, float]:
    """Bracket the maximiser of a unimodal ``fn`` on (-inf, 0).

    Moves the middle point geometrically (times ``factor`` to the left, divided
    by ``factor`` toward 0) until it beats both flanks.

    Returns:
        (a, b, c) with a < b < c < 0 and fn(b) >= max(fn(a), fn(c))

    Raises:
        ConvergenceError: the maximum was not bracketed within ``max_expand`` steps
    """
    if not start < 0:
        raise ValueError("start must be negative")
    b = start
    fb = fn(b)
    c = b / factor
    fc = fn(c)

    if fc > fb:
        # climb toward zero
        a = b
        b, fb = c, fc
        for _ in range(max_expand):
            c = b / factor
            fc = fn(c)
            if fc <= fb:
                return a, b, c
            a = b
            b, fb = c, fc
        raise ConvergenceError(f"maximum not bracketed: still rising at theta={b!r}")

    a = b * factor
    fa = fn(a)
    for _ in range(max_expand):
        if fa <= fb:
            return a, b, c
        c = b
        b, fb = a, fa
        a = b * factor
        fa = fn(a)
    raise ConvergenceError(f"maximum not bracketed: still rising at theta={b!r}")


def golden_section_max(
    fn: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    max_iter: int = 400,
) -> Tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``fn`` on [a, b].

    Stops when the bracket width is below ``rel_tol`` times the larger
    endpoint magnitude.

    Returns:
        (x, fn(x)) for the best point evaluated
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = fn(c)
    yd = fn(d)

    for _ in range(max_iter):
        if b - a <= rel_tol * max(abs(a), abs(b)):
            break
        if yc > yd:
            b = d
            d, yd = c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = fn(c)
        else:
            a = c
            c, yc = d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = fn(d)
    else:
        logger.debug("[ROOTS] golden section hit max_iter=%d on [%r, %r]", max_iter, a, b)

    if yc > yd:
        return c, yc
    return d, yd
