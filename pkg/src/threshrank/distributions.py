"""Beta-family densities, CDFs, sampling, and a quadrature oracle on [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters (a, b) of a Beta distribution on [0, 1]."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"Beta shapes must be positive, got a={self.a}, b={self.b}")

    @property
    def is_uniform(self) -> bool:
        return self.a == 1.0 and self.b == 1.0

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)


UNIFORM = BetaParams(1.0, 1.0)


class QuadratureError(ArithmeticError):
    """Raised when the adaptive quadrature does not reach tolerance in budget."""


def log_beta_fn(a: float, b: float) -> float:
    """Natural log of the Beta function, ln B(a, b) = ln G(a) + ln G(b) - ln G(a+b)."""
    if not (a > 0 and b > 0):
        raise ValueError(f"log_beta_fn requires positive arguments, got ({a}, {b})")
    return float(special.gammaln(a) + special.gammaln(b) - special.gammaln(a + b))


def beta_pdf(x, p: BetaParams):
    """Density x^(a-1) (1-x)^(b-1) / B(a, b) on [0, 1].

    Accepts a scalar or an ndarray; endpoint values follow the convention
    0^0 = 1 (so the uniform density is 1 everywhere on [0, 1]).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("beta_pdf argument outside [0, 1]")
    norm = np.exp(-log_beta_fn(p.a, p.b))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = norm * arr ** (p.a - 1.0) * (1.0 - arr) ** (p.b - 1.0)
    out = np.where(np.isfinite(out), out, np.inf)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def beta_cdf(x, p: BetaParams):
    """Regularized incomplete Beta function I_x(a, b); the CDF of Beta(a, b)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("beta_cdf argument outside [0, 1]")
    out = special.betainc(p.a, p.b, arr)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def sample_beta(p: BetaParams, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw `count` iid Beta(a, b) values strictly inside (0, 1).

    Draws that hit an endpoint exactly (possible in floating point) are
    resampled, so the result is always in the open interval.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    x = rng.beta(p.a, p.b, size=count)
    bad = (x <= 0.0) | (x >= 1.0)
    while bad.any():
        x[bad] = rng.beta(p.a, p.b, size=int(bad.sum()))
        bad = (x <= 0.0) | (x >= 1.0)
    return x


# Gauss-Legendre nodes/weights on [-1, 1], order 20.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _eval(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(t)) for t in x])


def _gl_segment(f: Callable, lo: float, hi: float) -> float:
    half = 0.5 * (hi - lo)
    nodes = 0.5 * (hi + lo) + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, _eval(f, nodes)))


def quadrature_unit(f: Callable, tol: float, max_intervals: int = 4096) -> float:
    """Integrate f over [0, 1] to absolute tolerance `tol`.

    Composite Gauss-Legendre (order 20) with interval bisection: a segment is
    accepted when bisecting it changes the estimate by at most its share of
    the tolerance. Intended for bounded integrands; raises QuadratureError if
    the subdivision budget is exhausted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    total = 0.0
    # stack of (lo, hi, whole-segment estimate)
    stack = [(0.0, 1.0, _gl_segment(f, 0.0, 1.0))]
    used = 1
    while stack:
        lo, hi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl_segment(f, lo, mid)
        right = _gl_segment(f, mid, hi)
        used += 2
        if abs(left + right - whole) <= tol * (hi - lo):
            total += left + right
            continue
        if used > max_intervals:
            raise QuadratureError(
                f"quadrature did not converge within {max_intervals} segments"
            )
        stack.append((lo, mid, left))
        stack.append((mid, hi, right))
    return total
