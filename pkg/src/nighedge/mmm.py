"""Minimal martingale measure for the exponential NIG market.

With mu_S = int (e^x - 1) nu(dx) and C_nu = int (e^x - 1)^2 nu(dx), the
minimal martingale measure (which for this market is also the
variance-optimal one) is the Girsanov change with kernel
theta_x = h * (e^x - 1), h = mu_S / C_nu.  The Levy measure under the new
measure factors into two NIG components,

    nu*(dx) = nu[alpha, beta, (1+h)*delta](dx) + nu[alpha, 1+beta, -h*delta](dx),

so the characteristic function of the log price under the new measure stays
in closed form:

    phi_tau(v - ia) = exp{ tau * (iv + a) * (mu* - int x nu*(dx)) }
                      * exp{ tau * (W1(v, a) + W2(v, a)) }

where W1, W2 are the transforms of the two components and
mu* = int (x - e^x + 1) nu*(dx).  The decay envelope C(tau) bounding
|phi_tau(v - ia)| <= C(tau) * e^{-tau * delta * v} feeds the truncation
estimate of the Fourier integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .nig_core import (
    DampedArg,
    NigParams,
    _w_array,
    levy_mean,
    validate_params,
    w_transform,
)


@dataclass(frozen=True)
class MmmScalars:
    """Per-unit-time scalars of the measure change.

    mu_s <= 0 < c_nu and mu_s > -c_nu under the standing assumption, hence
    -1 < h <= 0.  mu_star is the drift of the log price under the new
    measure's compensated representation.
    """

    mu_s: float
    c_nu: float
    h: float
    mu_star: float


@dataclass(frozen=True)
class MmmComponents:
    """The two NIG components of the Levy measure under the new measure.

    The shifted component carries scale -h*delta and skew 1+beta; it
    degenerates to the zero measure exactly when h = 0 and is dropped rather
    than evaluated with zero scale.
    """

    original: NigParams
    shifted: NigParams | None

    def measures(self) -> tuple[NigParams, ...]:
        if self.shifted is None:
            return (self.original,)
        return (self.original, self.shifted)


@dataclass(frozen=True)
class CharQuery:
    """A characteristic-function query: damped argument plus time to maturity."""

    arg: DampedArg
    tau: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tau) and self.tau > 0.0):
            raise ValueError("time to maturity tau must be positive (t = T is excluded)")


def mmm_components(params: NigParams, h: float) -> MmmComponents:
    original = NigParams(params.alpha, params.beta, (1.0 + h) * params.delta)
    if h == 0.0:
        return MmmComponents(original=original, shifted=None)
    return MmmComponents(
        original=original,
        shifted=NigParams(params.alpha, 1.0 + params.beta, -h * params.delta),
    )


def mmm_scalars(params: NigParams, math_mode: bool = False) -> MmmScalars:
    """Compute (mu_S, C_nu, h, mu*) from the closed-form transforms.

    mu_S = W(0,1) and C_nu = W(0,2) - 2*W(0,1) via
    (e^x - 1)^2 = (e^{2x} - 1) - 2(e^x - 1).  mu* is assembled from the first
    moments and the W(0,1) values of the two components, never by quadrature,
    so that the martingale identity E*[e^{L_tau}] = 1 holds to machine
    precision.
    """
    report = validate_params(params, math_mode=math_mode)
    if not report.passed:
        raise ValueError(
            "parameters fail the standing assumption: " + ", ".join(report.violations)
        )
    mu_s, c_nu = report.mu_s, report.c_nu
    h = mu_s / c_nu
    comps = mmm_components(params, h)
    first_moment = sum(levy_mean(c) for c in comps.measures())
    w01 = sum(w_transform(DampedArg(0.0, 1.0), c).real for c in comps.measures())
    return MmmScalars(mu_s=mu_s, c_nu=c_nu, h=h, mu_star=first_moment - w01)


def theta(x: np.ndarray | float, scalars: MmmScalars) -> np.ndarray | float:
    """Girsanov kernel theta_x = h * (e^x - 1); always < 1 when -1 < h <= 0."""
    out = scalars.h * np.expm1(np.asarray(x, dtype=float))
    return float(out) if out.ndim == 0 else out


def _drift_coefficient(params: NigParams, scalars: MmmScalars) -> float:
    # mu* - int x nu*(dx) equals -(W1(0,1) + W2(0,1)); assembling it this way
    # keeps phi_tau at the (0, 1) point equal to 1 exactly in floating point.
    comps = mmm_components(params, scalars.h)
    return -sum(w_transform(DampedArg(0.0, 1.0), c).real for c in comps.measures())


def char_exponent(
    v: np.ndarray | float, a: float, params: NigParams, scalars: MmmScalars
) -> np.ndarray:
    """Per-unit-time exponent psi(v, a) with phi_tau(v - ia) = exp(tau * psi)."""
    comps = mmm_components(params, scalars.h)
    drift = _drift_coefficient(params, scalars)
    wsum = sum(_w_array(v, a, c) for c in comps.measures())
    return (a + 1j * np.asarray(v, dtype=float)) * drift + wsum


def char_fn(query: CharQuery, params: NigParams, scalars: MmmScalars) -> complex:
    """Characteristic function phi_tau(v - ia) of the log price under the new measure."""
    psi = char_exponent(query.arg.v, query.arg.a, params, scalars)
    return complex(np.exp(query.tau * psi))


def envelope_C(tau: float, a: float, params: NigParams, scalars: MmmScalars) -> float:
    """Decay envelope C(tau) with |phi_tau(v - ia)| <= C(tau) * e^{-tau*delta*v}."""
    if not tau > 0.0:
        raise ValueError("time to maturity tau must be positive (t = T is excluded)")
    if not 1.5 < a <= 2.0:
        raise ValueError("damping a must lie in (3/2, 2]")
    alpha, beta, delta = params.alpha, params.beta, params.delta
    h = scalars.h
    drift = _drift_coefficient(params, scalars)
    m2_orig = 1.0 - (beta / alpha) ** 2
    m2_shift = 1.0 - ((1.0 + beta) / alpha) ** 2
    spread = delta * alpha * ((1.0 + h) * math.sqrt(m2_orig) - h * math.sqrt(m2_shift))
    return math.exp(tau * (a * drift + spread))
