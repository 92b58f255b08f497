"""End-user pipeline: validate parameters, simulate or load a price CSV, hedge.

Modes
-----
validate            print the parameter gate report; exit 0 iff it passes.
simulate            write a simulated price path as ``time,close`` CSV.
hedge               read a price CSV, write one row per (date, strike) with
                    columns ``t,strike,xi,theta,H,E`` plus diagnostics on
                    stdout; exit 0 iff every truncation certificate holds.
truncation-report   print the minimal admissible truncation point per strike
                    against the configured N*eta; exit 0 iff all satisfied.
report              render hedge-ratio figures from a hedge output CSV.

The config file is a flat ``key = value`` text format ('#' starts a comment);
command-line flags override file values.  Defaults reproduce the reference
SPX setup: the calibrated parameter triple, N = 2^16, eta = 0.25, a = 1.75,
epsilon = 0.01, T = 1 and strikes 2300/2350/2400 on a 250-close schedule.

Input CSVs carry either fractional years (header ``time,close``) or ISO dates
(header ``date,close``); dates are mapped to business-day fractions of the
horizon, row k of n to k*T/(n-1).  All floats are written with 12 significant
digits, so identical config and input yield byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from datetime import date as _date
from pathlib import Path

import numpy as np

from .hedging import PricePath, hedge_series
from .mmm import mmm_scalars
from .nig_core import NigParams, ValidationReport, validate_params
from .plotting import render_hedge_figures
from .quad import QuadConfig, TruncationError, compute_I, min_upper_limit
from .simulate import SimConfig, simulate_path

#: NIG triple calibrated to SPX call quotes, used as the default model.
SPX_CALIBRATION = NigParams(
    alpha=25.61598030765035,
    beta=-1.2668546614155765,
    delta=0.40532772478162127,
)

MODES = ("hedge", "simulate", "validate", "truncation-report", "report")

_DEFAULTS: dict[str, str] = {
    "alpha": "25.61598030765035",
    "beta": "-1.2668546614155765",
    "delta": "0.40532772478162127",
    "n_points": "65536",
    "eta": "0.25",
    "a": "1.75",
    "epsilon": "0.01",
    "weighting": "simpson",
    "oversample": "4",
    "T": "1.0",
    "strikes": "2300,2350,2400",
    "s0": "2300.0",
    "n_steps": "249",
    "seed": "0",
    "mode": "hedge",
    "math_mode": "false",
    "input": "",
    "output": "",
    "plot_dir": "",
}


@dataclass(frozen=True)
class RunConfig:
    params: NigParams
    quad: QuadConfig
    horizon: float
    strikes: tuple[float, ...]
    input_path: str
    output_path: str
    mode: str
    seed: int
    s0: float
    n_steps: int
    math_mode: bool
    plot_dir: str


def load_config(path: str | Path) -> dict[str, str]:
    """Parse the flat key = value config format; unknown keys are errors."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _DEFAULTS:
                raise ValueError(f"{path}:{lineno}: unknown key '{key}'")
            values[key] = val.strip()
    return values


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no", ""):
        return False
    raise ValueError(f"expected a boolean, got '{text}'")


def build_run_config(values: dict[str, str]) -> RunConfig:
    merged = dict(_DEFAULTS)
    merged.update(values)
    params = NigParams(
        alpha=float(merged["alpha"]),
        beta=float(merged["beta"]),
        delta=float(merged["delta"]),
    )
    quad = QuadConfig(
        n_points=int(merged["n_points"]),
        eta=float(merged["eta"]),
        a=float(merged["a"]),
        epsilon=float(merged["epsilon"]),
        weighting=merged["weighting"],
        oversample=int(merged["oversample"]),
    )
    horizon = float(merged["T"])
    if not horizon > 0.0:
        raise ValueError("horizon T must be positive")
    strikes = tuple(float(s) for s in merged["strikes"].split(",") if s.strip())
    mode = merged["mode"]
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "hedge" and not strikes:
        raise ValueError("hedge mode needs a non-empty strike list")
    return RunConfig(
        params=params,
        quad=quad,
        horizon=horizon,
        strikes=strikes,
        input_path=merged["input"],
        output_path=merged["output"],
        mode=mode,
        seed=int(merged["seed"]),
        s0=float(merged["s0"]),
        n_steps=int(merged["n_steps"]),
        math_mode=_parse_bool(merged["math_mode"]),
        plot_dir=merged["plot_dir"],
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def read_price_csv(path: str | Path, horizon: float) -> PricePath:
    """Load ``time,close`` or ``date,close`` observations into a PricePath."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh)]
    if not rows:
        raise ValueError(f"{path}:1: empty CSV")
    header = [c.strip().lower() for c in rows[0]]
    if header == ["time", "close"]:
        dated = False
    elif header == ["date", "close"]:
        dated = True
    else:
        raise ValueError(f"{path}:1: header must be 'time,close' or 'date,close'")

    times: list[float] = []
    prices: list[float] = []
    seen_dates: list[_date] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ValueError(f"{path}:{lineno}: expected two columns, got {len(row)}")
        try:
            prices.append(float(row[1]))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: close '{row[1]}' is not a number") from None
        if dated:
            try:
                seen_dates.append(_date.fromisoformat(row[0].strip()))
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: date '{row[0]}' is not an ISO date"
                ) from None
        else:
            try:
                times.append(float(row[0]))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: time '{row[0]}' is not a number") from None
    if dated:
        if len(seen_dates) < 2:
            raise ValueError(f"{path}: need at least two dated closes")
        if any(b <= a for a, b in zip(seen_dates, seen_dates[1:])):
            raise ValueError(f"{path}: dates must be strictly increasing")
        # business-day fractions of the horizon: row k of n maps to k*T/(n-1)
        n = len(seen_dates)
        times = [k * horizon / (n - 1) for k in range(n)]
    return PricePath(np.asarray(times), np.asarray(prices), horizon)


def write_price_csv(path_obj: PricePath, out: str | Path) -> None:
    with open(out, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("time,close\n")
        for t, s in zip(path_obj.times, path_obj.prices):
            fh.write(f"{_fmt(t)},{_fmt(s)}\n")


def write_hedge_csv(records, out: str | Path) -> None:
    ordered = sorted(records, key=lambda r: (r.strike, r.t))
    with open(out, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("t,strike,xi,theta,H,E\n")
        for r in ordered:
            fh.write(
                ",".join(
                    _fmt(x)
                    for x in (r.t, r.strike, r.xi, r.theta, r.claim_value, r.doleans)
                )
                + "\n"
            )


def _print_validation(params: NigParams, report: ValidationReport) -> None:
    print(f"parameter gate: {'PASS' if report.passed else 'FAIL'}")
    checks = (
        ("alpha > 5/2", params.alpha > 2.5),
        ("-3/2 < beta <= -1/2", -1.5 < params.beta <= -0.5),
        ("beta + 4 < alpha", params.beta + 4.0 < params.alpha),
    )
    for label, ok in checks:
        print(f"  {label:<22} {'ok' if ok else 'VIOLATED'}")
    print(f"  mu_S = {_fmt(report.mu_s)}  C_nu = {_fmt(report.c_nu)}")
    print(f"  mu_S <= 0              {'ok' if report.mu_s_nonpositive else 'VIOLATED'}")
    print(f"  mu_S > -C_nu           {'ok' if report.mu_s_above_neg_c_nu else 'VIOLATED'}")


def _require(rc: RunConfig, field: str) -> str:
    value = getattr(rc, field)
    if not value:
        flag = {"input_path": "--input", "output_path": "--output"}[field]
        raise ValueError(f"mode '{rc.mode}' requires {flag}")
    return value


def _run_validate(rc: RunConfig) -> int:
    report = validate_params(rc.params, math_mode=rc.math_mode)
    _print_validation(rc.params, report)
    return 0 if report.passed else 1


def _run_simulate(rc: RunConfig) -> int:
    out = _require(rc, "output_path")
    path_obj = simulate_path(
        SimConfig(rc.params, rc.s0, rc.n_steps, rc.horizon, rc.seed)
    )
    write_price_csv(path_obj, out)
    print(f"wrote {len(path_obj)} closes to {out}")
    return 0


def _run_hedge(rc: RunConfig) -> int:
    report = validate_params(rc.params, math_mode=rc.math_mode)
    _print_validation(rc.params, report)
    if not report.passed:
        return 1
    scalars = mmm_scalars(rc.params, math_mode=rc.math_mode)
    path_obj = read_price_csv(_require(rc, "input_path"), rc.horizon)
    out = _require(rc, "output_path")
    try:
        records = hedge_series(path_obj, rc.strikes, rc.quad, rc.params, scalars)
    except TruncationError as err:
        print(
            "truncation certificate failed: "
            f"tau = {err.tau:g}, strike = {err.strike:g}, w_min = {err.w_min:.1f}, "
            f"N*eta = {err.upper:g}"
        )
        return 2
    write_hedge_csv(records, out)

    # diagnostics: strongest realized truncation requirement and the imaginary
    # residue at the final construction state, per strike
    times, prices = path_obj.times[:-1], path_obj.prices[:-1]
    taus = rc.horizon - times
    for strike in rc.strikes:
        w_max = max(
            min_upper_limit(
                rc.quad.epsilon, t, strike, s, rc.quad.a, rc.params, scalars,
                upper=rc.quad.upper,
            ).w_min
            for t, s in zip(taus, prices)
        )
        _, info = compute_I(
            prices[-1], taus[-1], strike, rc.quad, rc.params, scalars, full_output=True
        )
        print(
            f"strike {strike:g}: max w_min {w_max:.1f} vs N*eta {rc.quad.upper:g} (ok); "
            f"one-sided imag part {info['imag_onesided']:.3e}"
        )
    print(f"wrote {len(records)} records to {out}")

    if rc.plot_dir:
        series = _series_by_strike(records)
        for fig_path in render_hedge_figures(series, rc.plot_dir):
            print(f"wrote {fig_path}")
    return 0


def _series_by_strike(records) -> dict[float, tuple[list, list, list]]:
    series: dict[float, tuple[list, list, list]] = {}
    for r in sorted(records, key=lambda r: (r.strike, r.t)):
        t, xi, theta = series.setdefault(r.strike, ([], [], []))
        t.append(r.t)
        xi.append(r.xi)
        theta.append(r.theta)
    return series


def _run_truncation_report(rc: RunConfig) -> int:
    scalars = mmm_scalars(rc.params, math_mode=rc.math_mode)
    if rc.input_path:
        path_obj = read_price_csv(rc.input_path, rc.horizon)
        times, spots = path_obj.times[:-1], path_obj.prices[:-1]
    else:
        times = np.linspace(0.0, rc.horizon, rc.n_steps + 1)[:-1]
        spots = np.full(times.size, rc.s0)
    taus = rc.horizon - times
    all_ok = True
    print(f"N*eta = {rc.quad.upper:g}, epsilon = {rc.quad.epsilon:g}")
    for strike in rc.strikes:
        w_max = max(
            min_upper_limit(
                rc.quad.epsilon, t, strike, s, rc.quad.a, rc.params, scalars,
                upper=rc.quad.upper,
            ).w_min
            for t, s in zip(taus, spots)
        )
        ok = rc.quad.upper > w_max
        all_ok = all_ok and ok
        print(f"strike {strike:g}: w_min {w_max:.1f} -> {'satisfied' if ok else 'TOO SHORT'}")
    return 0 if all_ok else 2


def _run_report(rc: RunConfig) -> int:
    source = _require(rc, "input_path")
    out_dir = _require(rc, "output_path")
    with open(source, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["t", "strike", "xi", "theta", "H", "E"]:
        raise ValueError(f"{source}:1: expected a hedge output CSV (t,strike,xi,theta,H,E)")
    series: dict[float, tuple[list, list, list]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            t, strike, xi, theta = (float(row[i]) for i in range(4))
        except (ValueError, IndexError):
            raise ValueError(f"{source}:{lineno}: malformed hedge row") from None
        ts, xis, thetas = series.setdefault(strike, ([], [], []))
        ts.append(t)
        xis.append(xi)
        thetas.append(theta)
    for fig_path in render_hedge_figures(series, out_dir):
        print(f"wrote {fig_path}")
    return 0


def run(rc: RunConfig) -> int:
    dispatch = {
        "validate": _run_validate,
        "simulate": _run_simulate,
        "hedge": _run_hedge,
        "truncation-report": _run_truncation_report,
        "report": _run_report,
    }
    return dispatch[rc.mode](rc)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="nighedge",
        description="Quadratic hedging of European calls under an exponential NIG model.",
    )
    ap.add_argument("--config", help="flat key = value config file")
    ap.add_argument("--input", help="input CSV (price path, or hedge output for report mode)")
    ap.add_argument("--output", help="output CSV, or figure directory for report mode")
    ap.add_argument("--mode", choices=MODES, help="pipeline mode")
    ap.add_argument("--seed", type=int, help="seed for simulate mode")
    ap.add_argument("--math-mode", action="store_true",
                    help="relax the parameter gate to alpha > |beta|, delta > 0")
    ap.add_argument("--plot-dir", help="also render figures here (hedge mode)")
    args = ap.parse_args(argv)

    try:
        values = load_config(args.config) if args.config else {}
        if args.input is not None:
            values["input"] = args.input
        if args.output is not None:
            values["output"] = args.output
        if args.mode is not None:
            values["mode"] = args.mode
        if args.seed is not None:
            values["seed"] = str(args.seed)
        if args.math_mode:
            values["math_mode"] = "true"
        if args.plot_dir is not None:
            values["plot_dir"] = args.plot_dir
        return run(build_run_config(values))
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
