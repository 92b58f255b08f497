"""Synthetic NIG price paths via the time-changed Brownian representation.

The log price increments over a step of length dt are

    dL = beta * delta^2 * dI + delta * sqrt(dI) * Z,      Z ~ N(0, 1),

where dI is an inverse Gaussian subordinator increment.  In the
(mean, shape) parametrization used by numpy's Wald sampler the increment is

    dI ~ IG(mean = dt / b, shape = dt^2),      b = delta * sqrt(alpha^2 - beta^2),

which reproduces the NIG characteristic function
exp{-t * delta * (sqrt(alpha^2 - (beta + iz)^2) - sqrt(alpha^2 - beta^2))};
the tests certify this against the empirical characteristic function rather
than trusting any parametrization convention.  Sampling is exact per step
(one normal and one uniform per draw inside the Wald transformation), so the
step count controls only the observation grid, not the accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hedging import PricePath
from .nig_core import NigParams


@dataclass(frozen=True)
class SimConfig:
    """One simulated path: parameters, start price, grid and seed."""

    params: NigParams
    s0: float
    n_steps: int
    horizon: float
    seed: int

    def __post_init__(self) -> None:
        if not self.s0 > 0.0:
            raise ValueError("initial price s0 must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be at least 1")
        if not self.horizon > 0.0:
            raise ValueError("horizon must be positive")


def sample_ig(mean: float, shape: float, rng: np.random.Generator) -> float:
    """One inverse Gaussian variate with the given mean and shape parameters."""
    if not (mean > 0.0 and shape > 0.0):
        raise ValueError("inverse Gaussian parameters must be positive")
    return float(rng.wald(mean, shape))


def simulate_path(cfg: SimConfig) -> PricePath:
    """Simulate S on an equally spaced grid of n_steps + 1 points over [0, horizon]."""
    p = cfg.params
    dt = cfg.horizon / cfg.n_steps
    b = p.delta * math.sqrt(p.alpha**2 - p.beta**2)
    rng = np.random.default_rng(cfg.seed)
    ig = rng.wald(dt / b, dt * dt, size=cfg.n_steps)
    z = rng.standard_normal(cfg.n_steps)
    increments = p.beta * p.delta**2 * ig + p.delta * np.sqrt(ig) * z
    growth = np.exp(np.concatenate(([0.0], np.cumsum(increments))))
    times = np.linspace(0.0, cfg.horizon, cfg.n_steps + 1)
    return PricePath(times=times, prices=cfg.s0 * growth, horizon=cfg.horizon)
