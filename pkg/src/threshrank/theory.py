"""Closed-form and numerical predictors for the expected MSF and bin statistics."""

from __future__ import annotations

from dataclasses import dataclass

from .distributions import BetaParams, beta_pdf, log_beta_fn, quadrature_unit

import math


class DivergenceUndefinedError(ValueError):
    """The quadratic divergence integral does not converge for these shapes."""


@dataclass(frozen=True)
class RegimeSpec:
    """User-count regime m ~ r * n^gamma (gamma = 1: linear; gamma > 1: power)."""

    r: float
    gamma: float = 1.0

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("rate constant r must be positive")
        if self.gamma < 1:
            raise ValueError("gamma must be >= 1")

    def m_of_n(self, n: int) -> int:
        """Round-half-up integerization of r * n^gamma."""
        return int(math.floor(self.r * n**self.gamma + 0.5))


def divergence_beta_closed_form(fx: BetaParams, fy: BetaParams) -> float:
    """Quadratic divergence E[(f_X(Y)/f_Y(Y))^2] for Beta score/threshold laws.

    Closed form B(a_Y,b_Y) / B(a_X,b_X)^2 * B(2a_X - a_Y, 2b_X - b_Y),
    evaluated in log space. The integral converges iff 2a_X - a_Y > 0 and
    2b_X - b_Y > 0, which is the condition enforced here.
    """
    a = 2.0 * fx.a - fy.a
    b = 2.0 * fx.b - fy.b
    if a <= 0 or b <= 0:
        raise DivergenceUndefinedError(
            f"divergence undefined for fx={fx}, fy={fy}: need 2a_X - a_Y > 0 "
            f"and 2b_X - b_Y > 0"
        )
    return math.exp(
        log_beta_fn(fy.a, fy.b) - 2.0 * log_beta_fn(fx.a, fx.b) + log_beta_fn(a, b)
    )


def divergence_quadrature(
    fx: BetaParams, fy: BetaParams, tol: float = 1e-9
) -> float:
    """Numerical value of the divergence integral int_0^1 f_X(y)^2 / f_Y(y) dy.

    Independent oracle for the closed form; requires shapes >= 1 so the
    integrand stays bounded on the interior nodes.
    """
    if min(fx.a, fx.b, fy.a, fy.b) < 1:
        raise ValueError("quadrature oracle requires all shapes >= 1")

    def integrand(y):
        return beta_pdf(y, fx) ** 2 / beta_pdf(y, fy)

    return quadrature_unit(integrand, tol)


def predict_msf_linear(n: int, r: float, divergence: float) -> tuple[float, float]:
    """Linear-regime (m ~ rn) prediction: (center, slack).

    The expected MSF lies within `slack` (+ o(n)) of `center`, where
    center = n (1/2 + divergence / r) and slack = r n / 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    center = n * (0.5 + divergence / r)
    slack = r * n / 2.0
    return center, slack


def predict_msf_power(n: int, spec: RegimeSpec, divergence: float) -> float:
    """Power-regime (m ~ r n^gamma, gamma > 1) asymptote (2/r) n^(2-gamma) * div."""
    if spec.gamma <= 1:
        raise ValueError("power-regime prediction requires gamma > 1")
    return (2.0 / spec.r) * n ** (2.0 - spec.gamma) * divergence


def predict_eb2(n: int, m: int, divergence: float) -> float:
    """Leading terms of E[B^2]: n/(m+1) + 2 (n^2 - n)/(m+1)^2 * divergence."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return n / (m + 1) + 2.0 * (n * n - n) / (m + 1) ** 2 * divergence


def predict_p_odd(n: int, m: int, divergence: float) -> float:
    """Leading terms of P(B odd): n/m - 2 (n/m)^2 * divergence."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return n / m - 2.0 * (n / m) ** 2 * divergence


def msf_from_bin_stats(m: int, eb2: float, p_odd: float) -> float:
    """Expected MSF from bin statistics: (m+1)/2 * (E[B^2] - P(B odd)).

    This is an identity, not an approximation: applied to the sample
    statistics of a concrete bin-size vector it returns the exact MSF.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    return 0.5 * (m + 1) * (eb2 - p_odd)
