"""Hedge-ratio series along a discretely observed price path.

Two quadratic hedging strategies for the call (S_T - K)^+ are produced:

* the locally risk minimizing ratio  xi = I(s, tau, K) / (s * C_nu), and
* the mean-variance ratio, which corrects xi with a path functional

      theta_t ~ xi_t + (h * E_{t_n} / S_{t_n})
                * sum_{k=1..n} (dH_{t_k} - xi_{t_k} * dS_{t_k}) / E_{t_k},

  where E is the multiplicative solution of E_{t_{k+1}} = E_{t_k} *
  (1 - h * dS_{t_{k+1}} / S_{t_k}) with E_0 = 1, and H_{t_k} is the
  conditional call value at the observed state (S_{t_k}, T - t_k).

A ratio dated t_k is constructed at the previous observation time: both its
spot (the proxy for the left limit S_{t_k-}) and its time to maturity are
frozen at t_{k-1}, so a schedule that ends exactly at maturity still never
requires an evaluation at tau = 0.  Setting ``spot_convention="current"``
evaluates ratios at the observed state (S_{t_k}, T - t_k) instead; that
variant cannot produce a record at maturity itself.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .mmm import MmmScalars
from .nig_core import NigParams
from .quad import QuadConfig, compute_H, compute_I

_CONVENTIONS = ("previous", "current")


@dataclass(frozen=True, eq=False)
class PricePath:
    """Discrete observations (t_k, S_{t_k}) on [0, horizon], starting at t_0 = 0."""

    times: np.ndarray
    prices: np.ndarray
    horizon: float

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        prices = np.asarray(self.prices, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "prices", prices)
        if times.ndim != 1 or times.shape != prices.shape or times.size < 1:
            raise ValueError("times and prices must be matching 1-d arrays")
        if not (math.isfinite(self.horizon) and self.horizon > 0.0):
            raise ValueError("horizon must be positive")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(prices))):
            raise ValueError("times and prices must be finite")
        if times[0] != 0.0:
            raise ValueError("the first observation must be at t = 0")
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if times[-1] > self.horizon:
            raise ValueError("observations must not extend past the horizon")
        if np.any(prices <= 0.0):
            raise ValueError("prices must be positive")
        times.flags.writeable = False
        prices.flags.writeable = False

    def __len__(self) -> int:
        return int(self.times.size)


@dataclass(frozen=True)
class HedgeRecord:
    """Hedge ratios and auxiliaries for one (rebalance date, strike) pair.

    ``claim_value`` and ``doleans`` are the conditional call value and the
    multiplicative correction factor at the record's construction state.
    """

    t: float
    strike: float
    xi: float
    theta: float
    claim_value: float
    doleans: float


def lrm_xi(
    spot: float,
    tau: float,
    strike: float,
    cfg: QuadConfig,
    params: NigParams,
    scalars: MmmScalars,
    *,
    check_truncation: bool = True,
) -> float:
    """Locally risk minimizing ratio I(spot, tau, strike) / (spot * C_nu)."""
    value = compute_I(
        spot, tau, strike, cfg, params, scalars, check_truncation=check_truncation
    )
    return value / (spot * scalars.c_nu)


def doleans_series(path: PricePath, h: float) -> np.ndarray:
    """Multiplicative series E_{t_{k+1}} = E_{t_k} (1 - h dS_{t_{k+1}} / S_{t_k}), E_0 = 1.

    With -1 < h <= 0 and positive prices every factor is positive; should a
    nonpositive value appear anyway (pathological inputs), the series is
    returned as computed and a degenerate-path warning is emitted.
    """
    rel = np.diff(path.prices) / path.prices[:-1]
    series = np.concatenate(([1.0], np.cumprod(1.0 - h * rel)))
    if np.any(series <= 0.0):
        warnings.warn(
            "degenerate path: the multiplicative correction series hit a "
            "nonpositive value",
            RuntimeWarning,
            stacklevel=2,
        )
    return series


def _series_one_strike(
    path: PricePath,
    strike: float,
    cfg: QuadConfig,
    params: NigParams,
    scalars: MmmScalars,
    convention: str,
):
    """Per-date xi, per-observation H, Doleans series and correction prefix sums."""
    t, s, horizon = path.times, path.prices, path.horizon
    n = len(path) - 1
    e = doleans_series(path, scalars.h)
    if convention == "previous":
        record_ks = list(range(1, n + 1))
    else:
        record_ks = [k for k in range(1, n + 1) if t[k] < horizon]
    xi = {}
    for k in record_ks:
        c = k - 1 if convention == "previous" else k
        xi[k] = lrm_xi(s[c], horizon - t[c], strike, cfg, params, scalars)
    # conditional call values at every observed state with positive maturity
    m = n + 1 if t[n] < horizon else n
    hvals = np.array(
        [compute_H(s[j], horizon - t[j], strike, cfg, params, scalars) for j in range(m)]
    )
    terms = np.zeros(m)
    for j in range(1, m):
        terms[j] = (hvals[j] - hvals[j - 1] - xi[j] * (s[j] - s[j - 1])) / e[j]
    prefix = np.cumsum(terms)
    return record_ks, xi, hvals, e, prefix


def hedge_series(
    path: PricePath,
    strikes,
    cfg: QuadConfig,
    params: NigParams,
    scalars: MmmScalars,
    *,
    spot_convention: str = "previous",
) -> list[HedgeRecord]:
    """Hedge records for every rebalance date and strike, sorted by (strike, t).

    The record at date t_k is a deterministic function of the observations up
    to its construction state only, so permuting later observations cannot
    change it.
    """
    if spot_convention not in _CONVENTIONS:
        raise ValueError(f"spot_convention must be one of {_CONVENTIONS}")
    if len(path) < 2:
        raise ValueError("need at least two observations to hedge")
    records: list[HedgeRecord] = []
    for strike in sorted(float(k) for k in strikes):
        if strike <= 0.0:
            raise ValueError("strikes must be positive")
        record_ks, xi, hvals, e, prefix = _series_one_strike(
            path, strike, cfg, params, scalars, spot_convention
        )
        for k in record_ks:
            c = k - 1 if spot_convention == "previous" else k
            theta = xi[k] + scalars.h * e[c] / path.prices[c] * prefix[c]
            records.append(
                HedgeRecord(
                    t=float(path.times[k]),
                    strike=strike,
                    xi=xi[k],
                    theta=theta,
                    claim_value=float(hvals[c]),
                    doleans=float(e[c]),
                )
            )
    return records


def mvh_theta(
    path: PricePath,
    t_query: float,
    strike: float,
    cfg: QuadConfig,
    params: NigParams,
    scalars: MmmScalars,
    *,
    spot_convention: str = "previous",
) -> float:
    """Mean-variance hedge ratio at ``t_query`` from the observations before it.

    ``t_query`` plays the role of one step past the last used observation;
    its time to maturity must be positive.  With no usable increment (a query
    inside the first step) the correction sum is empty and the value reduces
    to the locally risk minimizing ratio.
    """
    if spot_convention not in _CONVENTIONS:
        raise ValueError(f"spot_convention must be one of {_CONVENTIONS}")
    if not 0.0 < t_query <= path.horizon:
        raise ValueError("t_query must lie in (0, horizon]")
    if not path.horizon - t_query > 0.0:
        raise ValueError("time to maturity tau must be positive (t = T is excluded)")
    n = int(np.searchsorted(path.times, t_query, side="left")) - 1
    if n < 0:
        raise ValueError("t_query precedes the first observation")
    used = PricePath(path.times[: n + 1].copy(), path.prices[: n + 1].copy(), path.horizon)
    _, xi, _, e, prefix = _series_one_strike(
        used, strike, cfg, params, scalars, spot_convention
    )
    s_n, t_n = used.prices[n], used.times[n]
    if spot_convention == "previous":
        lead = lrm_xi(s_n, path.horizon - t_n, strike, cfg, params, scalars)
    else:
        lead = lrm_xi(s_n, path.horizon - t_query, strike, cfg, params, scalars)
    return lead + scalars.h * e[n] / s_n * prefix[n]
