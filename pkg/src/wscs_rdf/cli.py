"""Command-line front end: experiment configs, sweeps, CSV/JSON/SVG output.

Subcommands
-----------
rdf-point         rate of a single sampling configuration
sweep-n           the sequence R_n(D) and its tail limsup
sweep-ratio       rate versus the sampling ratio T/T_s
sweep-distortion  rate versus the distortion budget, one curve per mismatch
mc                Monte Carlo backward-channel verification report

Every subcommand takes ``--config <json>`` plus flag overrides.  Configs
are fail-closed: unknown keys are rejected rather than ignored.  Output
files are written atomically (temp file + rename).  Exit codes: 0 success,
2 configuration/usage error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ConfigError, DomainError, NumericError
from .variance import (
    CtVarianceProfile,
    DecimalFraction,
    PiFraction,
    PulseParams,
    PulseShape,
    RationalFraction,
    SamplingSpec,
    SineShape,
    SymbolicFraction,
    dt_variance_period,
    classify_sampling,
    Synchronous,
    DEFAULT_DENOMINATOR_CAP,
)
from .sequence import (
    DEFAULT_TAIL_WINDOW,
    rdf_point,
    rdf_series,
    sweep_distortion,
    sweep_ratio,
)
from .mc import run_mc_report

__all__ = ["parse_eps", "ExperimentConfig", "run", "main"]

_COMMANDS = ("rdf-point", "sweep-n", "sweep-ratio", "sweep-distortion", "mc")

_DEC_RE = re.compile(r"(\d+\.\d*|\.\d+|\d+)\Z")
_FRAC_RE = re.compile(r"(\d+)\s*/\s*(\d+)\Z")
_PI_RE = re.compile(r"(-?)\s*(?:(\d+)\s*\*\s*)?pi\s*(?:/\s*(\d+))?\Z")


def parse_eps(expr: str) -> SymbolicFraction:
    """Parse a mismatch expression into its exact symbolic form.

    Grammar: ``decimal | int "/" int | ["-"] [int "*"] "pi" ["/" int]``,
    e.g. ``"0.6"``, ``"1/2"``, ``"pi/7"``, ``"5*pi/32"``.  Malformed input
    raises :class:`ConfigError` naming the offending position.
    """
    s = expr.strip()
    if not s:
        raise ConfigError("empty mismatch expression")
    m = _FRAC_RE.fullmatch(s)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ConfigError(f"zero denominator at position {m.start(2)} in {expr!r}")
        if not (0 <= num < den):
            raise ConfigError(f"mismatch {s!r} must lie in [0, 1)")
        return RationalFraction(num, den)
    m = _PI_RE.fullmatch(s)
    if m:
        sign = -1 if m.group(1) else 1
        a = int(m.group(2)) if m.group(2) else 1
        b = int(m.group(3)) if m.group(3) else 1
        if b == 0:
            raise ConfigError(f"zero denominator at position {m.start(3)} in {expr!r}")
        return PiFraction(sign * a, b)
    m = _DEC_RE.fullmatch(s)
    if m:
        value = float(s)
        if not (0.0 <= value < 1.0):
            raise ConfigError(f"mismatch {s!r} must lie in [0, 1)")
        if "." not in s:
            return RationalFraction(int(s), 1)
        return DecimalFraction(value)
    bad = next((i for i, c in enumerate(s) if c not in "0123456789./*pi- "), 0)
    raise ConfigError(
        f"malformed mismatch expression {expr!r} at position {bad}: "
        "expected a decimal, a fraction like 1/2, or a pi form like 5*pi/32"
    )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _decimal_grid(start: str, stop: str, step: str) -> list[float]:
    # exact decimal arithmetic so grid points are the intended rationals
    a, b, h = Fraction(start), Fraction(stop), Fraction(step)
    if h <= 0 or b < a:
        raise ConfigError(f"bad grid [{start}, {stop}] step {step}")
    out = []
    i = 0
    while a + i * h <= b:
        out.append(float(a + i * h))
        i += 1
    return out


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

_TOP_KEYS = {"profile", "sampling", "distortion", "sweep", "seed", "output", "variances"}
_PROFILE_KEYS = {"shape", "base", "amplitude", "duty_cycle", "rise_fall", "mean", "period", "phase_offset"}
_SAMPLING_KEYS = {"p", "eps", "offset"}
_SWEEP_KEYS = {
    "n_max", "tail_window", "classify_cap",
    "ratios", "ratio_start", "ratio_stop", "ratio_step",
    "eps_list", "k", "trials", "delta", "ui_k_list",
}
_OUTPUT_KEYS = {"csv", "json", "svg"}


@dataclass
class ExperimentConfig:
    command: str
    profile: Optional[CtVarianceProfile]
    sampling: Optional[SamplingSpec]
    distortion: tuple[float, ...]
    n_max: int
    tail_window: tuple[int, int]
    classify_cap: int
    ratios: tuple[float, ...]
    eps_list: tuple[SymbolicFraction, ...]
    variances: Optional[tuple[float, ...]]
    k: int
    trials: int
    delta: float
    ui_k_list: tuple[int, ...]
    seed: int
    out_csv: Optional[str]
    out_json: Optional[str]
    out_svg: Optional[str]


def _reject_unknown(section: dict, allowed: set, where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} key(s): {', '.join(sorted(unknown))}")


def _build_profile(raw: dict) -> CtVarianceProfile:
    _reject_unknown(raw, _PROFILE_KEYS, "profile")
    shape_name = raw.get("shape", "pulse")
    period = float(raw.get("period", 5e-6))
    phase = float(raw.get("phase_offset", 0.0))
    if shape_name == "pulse":
        for key in ("mean",):
            if key in raw:
                raise ConfigError(f"profile key {key!r} is not valid for a pulse shape")
        shape = PulseShape(
            base=float(raw.get("base", 0.2)),
            amplitude=float(raw.get("amplitude", 4.8)),
            pulse=PulseParams(
                duty_cycle=float(raw.get("duty_cycle", 0.75)),
                rise_fall=float(raw.get("rise_fall", 0.01)),
            ),
        )
    elif shape_name == "sine":
        for key in ("base", "duty_cycle", "rise_fall"):
            if key in raw:
                raise ConfigError(f"profile key {key!r} is not valid for a sine shape")
        shape = SineShape(mean=float(raw.get("mean", 2.0)), amplitude=float(raw.get("amplitude", 0.5)))
    else:
        raise ConfigError(f"unknown profile shape {shape_name!r} (expected 'pulse' or 'sine')")
    return CtVarianceProfile(shape, period, phase)


def _as_raw_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return raw


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    raw = _as_raw_config(args.config)
    _reject_unknown(raw, _TOP_KEYS, "config")

    prof_raw = dict(raw.get("profile", {}))
    samp_raw = dict(raw.get("sampling", {}))
    sweep_raw = dict(raw.get("sweep", {}))
    out_raw = dict(raw.get("output", {}))
    _reject_unknown(samp_raw, _SAMPLING_KEYS, "sampling")
    _reject_unknown(sweep_raw, _SWEEP_KEYS, "sweep")
    _reject_unknown(out_raw, _OUTPUT_KEYS, "output")

    if args.tdc is not None:
        prof_raw["duty_cycle"] = args.tdc
    if args.phi is not None:
        prof_raw["phase_offset"] = args.phi

    variances = raw.get("variances")
    if variances is not None:
        if args.command != "mc":
            raise ConfigError("explicit 'variances' are only supported by the mc command")
        variances = tuple(float(v) for v in variances)

    profile = None
    if variances is None or prof_raw:
        profile = _build_profile(prof_raw)

    eps_expr = args.eps if args.eps is not None else samp_raw.get("eps", "pi/7")
    sampling = SamplingSpec(
        p=int(args.p if args.p is not None else samp_raw.get("p", 2)),
        eps=parse_eps(str(eps_expr)),
        offset=float(samp_raw.get("offset", 0.0)),
    )

    if args.D is not None:
        distortion = (float(args.D),)
    else:
        d_raw = raw.get("distortion", 0.18)
        distortion = tuple(float(x) for x in d_raw) if isinstance(d_raw, list) else (float(d_raw),)
    if args.command == "sweep-distortion" and len(distortion) == 1 and args.D is None and "distortion" not in raw:
        distortion = tuple(_decimal_grid("0.05", "0.19", "0.01"))

    tail = sweep_raw.get("tail_window", list(DEFAULT_TAIL_WINDOW))
    tail = [int(tail[0]), int(tail[1])]
    if args.tail_lo is not None:
        tail[0] = args.tail_lo
    if args.tail_hi is not None:
        tail[1] = args.tail_hi
    n_max = int(args.n_max if args.n_max is not None else sweep_raw.get("n_max", max(500, tail[1])))

    if "ratios" in sweep_raw:
        ratios = tuple(float(r) for r in sweep_raw["ratios"])
    else:
        ratios = tuple(
            _decimal_grid(
                str(sweep_raw.get("ratio_start", "2.01")),
                str(sweep_raw.get("ratio_stop", "3.99")),
                str(sweep_raw.get("ratio_step", "0.01")),
            )
        )

    eps_list = tuple(parse_eps(str(e)) for e in sweep_raw.get("eps_list", ["0.5", "5*pi/32", "0.6"]))

    return ExperimentConfig(
        command=args.command,
        profile=profile,
        sampling=sampling,
        distortion=distortion,
        n_max=n_max,
        tail_window=(tail[0], tail[1]),
        classify_cap=int(sweep_raw.get("classify_cap", DEFAULT_DENOMINATOR_CAP)),
        ratios=ratios,
        eps_list=eps_list,
        variances=variances,
        k=int(sweep_raw.get("k", 10000)),
        trials=int(sweep_raw.get("trials", 50)),
        delta=float(sweep_raw.get("delta", 0.01)),
        ui_k_list=tuple(int(x) for x in sweep_raw.get("ui_k_list", [1, 100, 1000])),
        seed=int(args.seed if args.seed is not None else raw.get("seed", 12345)),
        out_csv=args.out_csv if args.out_csv is not None else out_raw.get("csv"),
        out_json=args.out_json if args.out_json is not None else out_raw.get("json"),
        out_svg=args.out_svg if args.out_svg is not None else out_raw.get("svg"),
    )


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _atomic_write(path: str, text: str) -> None:
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-wscs-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    _atomic_write(path, "\n".join(lines) + "\n")


def _single_distortion(config: ExperimentConfig) -> float:
    if len(config.distortion) != 1:
        raise ConfigError(f"{config.command} expects a single distortion value")
    return config.distortion[0]


def _reject_outputs(config: ExperimentConfig, *, csv: bool = True, svg: bool = True) -> None:
    if csv and config.out_csv:
        raise ConfigError(f"{config.command} does not write CSV output")
    if svg and config.out_svg:
        raise ConfigError(f"{config.command} does not write SVG output")


def _maybe_svg(config: ExperimentConfig, series, title: str, xlabel: str, ylabel: str) -> None:
    if config.out_svg:
        from .svgplot import line_plot_svg

        _atomic_write(config.out_svg, line_plot_svg(series, title, xlabel, ylabel))


def _execute(config: ExperimentConfig) -> str:
    cmd = config.command
    if cmd == "rdf-point":
        _reject_outputs(config, csv=True, svg=True)
        d = _single_distortion(config)
        point = rdf_point(config.profile, config.sampling, d,
                          config.classify_cap, config.tail_window)
        if config.out_json:
            payload = {"rate_bits": point.rate_bits, "mode": point.mode, "distortion": d,
                       "metadata": {k: (list(v) if isinstance(v, tuple) else v)
                                    for k, v in point.metadata.items()}}
            _atomic_write(config.out_json, json.dumps(payload, indent=2, sort_keys=True))
        return f"rate={_fmt(point.rate_bits)} bits/sample mode={point.mode}"

    if cmd == "sweep-n":
        _reject_outputs(config, csv=False, svg=False)
        d = _single_distortion(config)
        series = rdf_series(config.profile, config.sampling, d,
                            n_max=config.n_max, tail_window=config.tail_window)
        if config.out_csv:
            rows = [
                (str(e.n), str(e.eps_n.numerator), str(e.eps_n.denominator), str(e.p_n), _fmt(e.rate_bits))
                for e in series.entries
            ]
            _write_csv(config.out_csv, ("n", "eps_n_num", "eps_n_den", "p_n", "rate_bits"), rows)
        if config.out_json:
            payload = {
                "tail_window": list(series.tail_window),
                "limsup_estimate": series.limsup_estimate,
                "tail_spread": series.tail_spread,
                "limsup_at": series.limsup_at,
                "low_distortion": series.low_distortion,
            }
            _atomic_write(config.out_json, json.dumps(payload, indent=2, sort_keys=True))
        _maybe_svg(config,
                   [(f"D={_fmt(d)}", [e.n for e in series.entries], [e.rate_bits for e in series.entries])],
                   "rate vs n", "n", "bits per sample")
        lo, hi = series.tail_window
        return (f"limsup[{lo},{hi}]={_fmt(series.limsup_estimate)} bits/sample "
                f"spread={_fmt(series.tail_spread)}")

    if cmd == "sweep-ratio":
        _reject_outputs(config, csv=False, svg=False)
        d = _single_distortion(config)
        result = sweep_ratio(config.profile, config.ratios, d,
                             classify_cap=config.classify_cap, tail_window=config.tail_window,
                             offset=config.sampling.offset if config.sampling else 0.0)
        if config.out_csv:
            rows = [
                (_fmt(pt.x), str(pt.metadata["p"]), pt.metadata["eps_expr"], pt.mode, _fmt(pt.rate_bits))
                for pt in result.points
            ]
            _write_csv(config.out_csv, ("ratio", "p", "eps_expr", "mode", "rate_bits"), rows)
        _maybe_svg(config,
                   [(f"D={_fmt(d)}", [pt.x for pt in result.points], [pt.rate_bits for pt in result.points])],
                   "rate vs sampling ratio", "T/T_s", "bits per sample")
        rates = [pt.rate_bits for pt in result.points]
        return (f"{len(result.points)} ratios: rate in "
                f"[{_fmt(min(rates))}, {_fmt(max(rates))}] bits/sample")

    if cmd == "sweep-distortion":
        _reject_outputs(config, csv=False, svg=False)
        result = sweep_distortion(config.profile, config.sampling, config.distortion,
                                  config.eps_list, classify_cap=config.classify_cap,
                                  tail_window=config.tail_window)
        if config.out_csv:
            rows = [(_fmt(pt.x), pt.metadata["eps_expr"], _fmt(pt.rate_bits)) for pt in result.points]
            _write_csv(config.out_csv, ("D", "eps_expr", "rate_bits"), rows)
        if config.out_svg:
            curves = []
            for eps in config.eps_list:
                pts = [pt for pt in result.points if pt.metadata["eps_expr"] == eps.expr()]
                curves.append((f"eps={eps.expr()}", [pt.x for pt in pts], [pt.rate_bits for pt in pts]))
            _maybe_svg(config, curves, "rate vs distortion", "D", "bits per sample")
        return f"{len(result.points)} points over {len(config.eps_list)} mismatch curves"

    if cmd == "mc":
        _reject_outputs(config, csv=True, svg=True)
        d = _single_distortion(config)
        if config.variances is not None:
            variances = config.variances
        else:
            cls = classify_sampling(config.sampling.eps, config.classify_cap)
            if not isinstance(cls, Synchronous):
                raise ConfigError("mc needs a synchronous mismatch or explicit 'variances'")
            variances = dt_variance_period(config.profile, config.sampling, cls.as_fraction())
        report = run_mc_report(variances, d, config.k, config.trials, config.seed,
                               delta=config.delta, ui_k_list=config.ui_k_list)
        if config.out_json:
            _atomic_write(config.out_json, report.to_json())
        return (f"emp_mse={_fmt(report.emp_mse)}±{_fmt(report.emp_mse_half_width)} "
                f"info_density_mean={_fmt(report.info_density_mean)} bits/sample")

    raise ConfigError(f"unknown command {cmd!r}")


def run(config: ExperimentConfig) -> int:
    """Execute a validated config; returns the process exit code."""
    try:
        summary = _execute(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    print(summary)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wscs-rdf",
        description="Rate-distortion of sampled cyclostationary Gaussian sources",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--D", type=float, help="distortion budget override")
        p.add_argument("--eps", help="mismatch expression override, e.g. pi/7 or 1/2")
        p.add_argument("--tdc", type=float, help="pulse duty cycle override (fraction, e.g. 0.75)")
        p.add_argument("--phi", type=float, help="profile phase offset override in [0,1)")
        p.add_argument("--p", type=int, help="integer part of the sampling ratio")
        p.add_argument("--n-max", dest="n_max", type=int, help="largest n in the rate sequence")
        p.add_argument("--tail-lo", dest="tail_lo", type=int, help="tail window lower edge")
        p.add_argument("--tail-hi", dest="tail_hi", type=int, help="tail window upper edge")
        p.add_argument("--seed", type=int, help="64-bit simulation seed")
        p.add_argument("--out-csv", dest="out_csv", help="CSV output path")
        p.add_argument("--out-json", dest="out_json", help="JSON output path")
        p.add_argument("--out-svg", dest="out_svg", help="SVG output path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        config = _config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
