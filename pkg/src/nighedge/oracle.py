"""Brute-force integration of Levy-measure functionals, for validation only.

Every closed form in the package is cross-checked against

    integrate_levy(f) ~ int_{R \\ 0} f(x) nu(dx)

computed by adaptive quadrature.  The density behaves like 1/x^2 at the
origin, which defeats naive quadrature, so the integral is split at a small
cutoff eps0: outside [-eps0, eps0] the integrand is handed to scipy's
adaptive routine; inside, f is replaced by its cubic Taylor polynomial and
paired with moments of nu over the core, each of which is a smooth, bounded
one-sided integral (the odd moments combine the two density tails so the
principal-value cancellation happens analytically, not in floating point).

Because K1 enters the density, a separate Sommerfeld-integral evaluation of
K1 is provided as an independent reference for the Bessel routine itself.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate, special

from .nig_core import NigParams, levy_density

#: Half-width of the series-corrected core around the origin.
EPS_CORE = 1e-4


class ToleranceNotMet(RuntimeError):
    """Raised when the two-tolerance self-check disagrees; carries the estimate."""

    def __init__(self, message: str, estimate: complex):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class LevyIntegrand:
    """A functional f to integrate against the Levy measure.

    ``derivs`` are the analytic derivatives (f'(0), f''(0), f'''(0)) used for
    the series-corrected core; f(0) = 0 is assumed.  ``growth`` bounds the
    exponential growth rate of |f| at +infinity (|f(x)| <~ e^{growth*x}), so
    the quadrature can pick a safe truncation point.
    """

    f: Callable[[np.ndarray], np.ndarray]
    derivs: tuple[complex, complex, complex]
    growth: float = 4.0
    tol: float = 1e-10


@lru_cache(maxsize=32)
def _core_moments(params: NigParams) -> tuple[float, float, float]:
    """Moments int x^k nu(dx) over |x| <= eps0 for k = 1, 2, 3.

    The odd moments use nu(x) - nu(-x) and the even one nu(x) + nu(-x); all
    three integrands extend continuously to 0, so plain quadrature applies.
    """
    a, b, d = params.alpha, params.beta, params.delta
    front = d * a / math.pi

    # x^k * nu(+-x) carries x^{k-1} K1(alpha x) because the density has a 1/|x|
    def odd(x: float, power: int) -> float:
        return front * x**power * special.k1(a * x) * 2.0 * math.sinh(b * x)

    def even(x: float, power: int) -> float:
        return front * x**power * special.k1(a * x) * 2.0 * math.cosh(b * x)

    opts = dict(epsabs=1e-16, epsrel=1e-13, limit=200)
    m1, _ = integrate.quad(lambda x: odd(x, 0), 0.0, EPS_CORE, **opts)
    m2, _ = integrate.quad(lambda x: even(x, 1), 0.0, EPS_CORE, **opts)
    m3, _ = integrate.quad(lambda x: odd(x, 2), 0.0, EPS_CORE, **opts)
    return m1, m2, m3


def _outer(
    f: Callable, params: NigParams, growth: float, epsrel: float, limit: int
) -> tuple[complex, float]:
    """Adaptive quadrature of f * density over |x| > eps0, with its error estimate.

    Subdivision-limit warnings are silenced: the reported absolute error is
    folded into the caller's convergence check instead.
    """
    rate_right = params.alpha - params.beta - growth
    rate_left = params.alpha + params.beta
    x_max = 100.0 / rate_right
    x_min = -100.0 / rate_left

    def reim(lo: float, hi: float) -> tuple[complex, float]:
        def g(x: float) -> complex:
            return f(x) * levy_density(x, params)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            re, re_err = integrate.quad(
                lambda x: g(x).real, lo, hi, epsabs=1e-14, epsrel=epsrel, limit=limit
            )
            im, im_err = integrate.quad(
                lambda x: g(x).imag, lo, hi, epsabs=1e-14, epsrel=epsrel, limit=limit
            )
        return re + 1j * im, re_err + im_err

    right, err_r = reim(EPS_CORE, x_max)
    left, err_l = reim(x_min, -EPS_CORE)
    return right + left, err_r + err_l


def integrate_levy(fn: LevyIntegrand, params: NigParams, limit: int = 800) -> complex:
    """Integrate fn.f against the NIG Levy measure of ``params``.

    The estimate is accepted only if recomputing at a tighter tolerance moves
    it by less than a margin tied to ``fn.tol``; otherwise ToleranceNotMet is
    raised with the achieved estimate attached.  ``limit`` caps the number of
    adaptive subdivisions per tail (the evaluation budget).
    """
    # the right cutoff is 100/rate; e^{growth * x} must stay within float
    # range there, so the decay margin has to scale with the growth
    rate_right = params.alpha - params.beta - fn.growth
    if rate_right < max(0.5, fn.growth / 6.9):
        raise ValueError("integrand growth too close to the density decay rate")
    m1, m2, m3 = _core_moments(params)
    d1, d2, d3 = fn.derivs
    core = d1 * m1 + d2 * m2 / 2.0 + d3 * m3 / 6.0

    loose, _ = _outer(
        fn.f, params, fn.growth, epsrel=max(fn.tol * 100.0, 1e-9), limit=limit
    )
    tight, quad_err = _outer(fn.f, params, fn.growth, epsrel=fn.tol, limit=limit)
    estimate = core + tight
    achieved = max(abs(tight - loose), quad_err)
    allowed = max(fn.tol * 1e3 * (1.0 + abs(estimate)), 1e-11)
    if achieved > allowed:
        raise ToleranceNotMet(
            f"quadrature did not converge within budget: residual {achieved:.3e} "
            f"exceeds the allowed {allowed:.3e}",
            estimate,
        )
    return estimate


def exp_moment_integrand(c: complex) -> LevyIntegrand:
    """f(x) = e^{cx} - 1, the integrand defining the transform W."""
    return LevyIntegrand(
        f=lambda x: np.exp(c * x) - 1.0,
        derivs=(c, c * c, c * c * c),
        growth=max(c.real, 0.0),
    )


def bessel_k1_sommerfeld(z: float, tol: float = 1e-13) -> float:
    """K1 via its Sommerfeld integral (z/4) int_0^inf e^{-s - z^2/(4s)} s^-2 ds."""
    if z <= 0.0:
        raise ValueError("requires z > 0")
    val, _ = integrate.quad(
        lambda s: math.exp(-s - z * z / (4.0 * s)) * s**-2,
        0.0,
        np.inf,
        epsabs=1e-16,
        epsrel=tol,
        limit=400,
    )
    return z / 4.0 * val
