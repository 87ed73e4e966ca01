"""Command-line front end: grid sampling of field quantities to CSV.

Subcommands:

    distance    p/q maps of the complex radial coordinate over a grid
    propagator  Re/Im/abs of the extended impulse field over a grid
    wavelet     Re/Im/abs of a driven beam wavelet over a grid
    pattern     duration, angular pattern, and peak versus polar angle
    channel     link metrics, amplitude, and a receiver-tilt gain scan
    verify      run the acceptance checks and print a pass/fail table

Configuration is a JSON file; command-line flags override config fields
(precedence: flag > config > default).  CSV files are written atomically
(temp file + rename) with a header row, shortest round-trip float
formatting, '.' decimal separator, and Unix newlines.  Row order is
row-major over the grid axes in declaration order (x1, x2, x3, t) and is
identical for any thread count.  Guarded singular points are emitted
with empty value cells and a status flag instead of NaNs.

Exit codes: 0 success, 1 validation error, 2 accuracy error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .channel import (
    channel_amplitude,
    channel_from_json,
    channel_metrics,
    gain_scan,
)
from .errors import AccuracyError, PulsebeamError, SingularityProximityError, ValidationError
from .geometry import complex_distance
from .propagator import beam_profile, extended_propagator
from .signals import DeltaDerivative, DrivingSignal, GaussianPulse, SampledSignal
from .spacetime import ConeVector, RealEvent, norm3
from .wavelet import wavelet_eval

GRID_AXES = ("x1", "x2", "x3", "t")
DEFAULT_POINT_CAP = 10**8
THREADS_ENV_VAR = "PULSEBEAM_THREADS"


# ---------------------------------------------------------------------------
# grid and run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Sample values per axis, in declaration order; rows iterate row-major."""

    axes: Tuple[Tuple[str, Tuple[float, ...]], ...]

    @property
    def total_points(self) -> int:
        total = 1
        for _, values in self.axes:
            total *= len(values)
        return total

    def iter_points(self):
        names = [name for name, _ in self.axes]
        for combo in itertools.product(*(values for _, values in self.axes)):
            yield dict(zip(names, combo))


def _axis_values(name: str, spec) -> Tuple[float, ...]:
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        value = float(spec)
        if not math.isfinite(value):
            raise ValidationError(f"grid axis '{name}' must be finite, got {value}")
        return (value,)
    if isinstance(spec, dict):
        extra = set(spec) - {"min", "max", "count"}
        if extra:
            raise ValidationError(f"grid axis '{name}' has unknown fields {sorted(extra)}")
        try:
            lo = float(spec["min"])
            hi = float(spec["max"])
            count = int(spec["count"])
        except (KeyError, TypeError, ValueError):
            raise ValidationError(
                f"grid axis '{name}' must give numeric 'min', 'max' and integer 'count'"
            ) from None
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError(f"grid axis '{name}' bounds must be finite")
        if count < 1:
            raise ValidationError(f"grid axis '{name}' count must be >= 1, got {count}")
        if lo > hi:
            raise ValidationError(f"grid axis '{name}' needs min <= max, got {lo} > {hi}")
        return tuple(float(v) for v in np.linspace(lo, hi, count))
    raise ValidationError(
        f"grid axis '{name}' must be a number (fixed) or an object with min/max/count"
    )


def grid_from_config(config: dict, names: Sequence[str], cap: int) -> GridSpec:
    grid_cfg = config.get("grid", {})
    if not isinstance(grid_cfg, dict):
        raise ValidationError("'grid' must be an object mapping axis names to specs")
    unknown = set(grid_cfg) - set(names)
    if unknown:
        raise ValidationError(
            f"grid axes {sorted(unknown)} are not available here; allowed: {list(names)}"
        )
    axes = tuple((name, _axis_values(name, grid_cfg.get(name, 0.0))) for name in names)
    spec = GridSpec(axes)
    if spec.total_points > cap:
        raise ValidationError(
            f"grid has {spec.total_points} points, exceeding the cap of {cap}; "
            "refusing before any computation"
        )
    return spec


def signal_from_config(obj) -> DrivingSignal:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValidationError("'signal' must be an object with a 'type' field")
    kind = obj["type"]
    if kind == "delta":
        return DeltaDerivative(int(obj.get("order", 0)))
    if kind == "gaussian":
        return GaussianPulse(
            center=float(obj.get("center", 0.0)),
            width=float(obj.get("width", 1.0)),
            amplitude=float(obj.get("amplitude", 1.0)),
        )
    if kind == "sampled":
        if "path" in obj:
            return SampledSignal.from_csv(obj["path"])
        if "times" in obj and "values" in obj:
            return SampledSignal(tuple(obj["times"]), tuple(obj["values"]))
        raise ValidationError("sampled signal needs either 'path' or 'times'+'values'")
    raise ValidationError(f"unknown signal type {kind!r}; use delta, gaussian, or sampled")


def extent_from_config(config: dict) -> ConeVector:
    if "extent" not in config:
        raise ValidationError("config is missing the 'extent' 4-vector [y1, y2, y3, s]")
    ext = config["extent"]
    if not isinstance(ext, (list, tuple)) or len(ext) != 4:
        raise ValidationError("'extent' must be a 4-element array [y1, y2, y3, s]")
    return ConeVector(tuple(float(v) for v in ext[:3]), float(ext[3]))


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def format_float(value: float) -> str:
    """Shortest decimal that round-trips; never NaN/inf by contract."""
    return repr(float(value))


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".pulsebeam-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(",".join(header) + "\n")
            for row in rows:
                handle.write(",".join(row) + "\n")
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _map_rows(render: Callable, points, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(render, points, chunksize=64))
    return [render(point) for point in points]


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _run_distance(config: dict, out: str, threads: int) -> None:
    extent = extent_from_config(config)
    if extent.radius == 0.0:
        raise ValidationError("distance maps need a nonzero spatial extension")
    cap = int(config.get("max_points", DEFAULT_POINT_CAP))
    grid = grid_from_config(config, ("x1", "x2", "x3"), cap)
    tol = config.get("near_circle_tol")
    y = extent.space

    def render(point):
        space = (point["x1"], point["x2"], point["x3"])
        dist = complex_distance(space, y, near_circle_tol=tol)
        if dist.near_circle:
            status = "on_circle"
        elif dist.on_cut:
            status = "on_cut"
        else:
            status = "ok"
        return (
            format_float(point["x1"]),
            format_float(point["x2"]),
            format_float(point["x3"]),
            format_float(dist.p),
            format_float(dist.q),
            status,
        )

    rows = _map_rows(render, list(grid.iter_points()), threads)
    write_csv(out, ("x1", "x2", "x3", "p", "q", "status"), rows)


def _field_rows(config: dict, threads: int, evaluate: Callable):
    cap = int(config.get("max_points", DEFAULT_POINT_CAP))
    grid = grid_from_config(config, GRID_AXES, cap)

    def render(point):
        space = (point["x1"], point["x2"], point["x3"])
        prefix = tuple(format_float(point[name]) for name in GRID_AXES)
        try:
            value, on_cut = evaluate(space, point["t"])
        except SingularityProximityError:
            return prefix + ("", "", "", "singular")
        status = "on_cut" if on_cut else "ok"
        return prefix + (
            format_float(value.real),
            format_float(value.imag),
            format_float(abs(value)),
            status,
        )

    return _map_rows(render, list(grid.iter_points()), threads)


def _run_propagator(config: dict, out: str, threads: int) -> None:
    extent = extent_from_config(config)
    if not extent.is_interior or extent.radius == 0.0:
        raise ValidationError(
            "propagator maps need an interior extension with nonzero spatial part"
        )
    tol = config.get("near_circle_tol")

    def evaluate(space, t):
        dist = complex_distance(space, extent.space, near_circle_tol=tol)
        value = extended_propagator(space, extent.space, t, extent.time, near_circle_tol=tol)
        return value, dist.on_cut

    rows = _field_rows(config, threads, evaluate)
    write_csv(out, GRID_AXES + ("re", "im", "abs", "status"), rows)


def _run_wavelet(config: dict, out: str, threads: int) -> None:
    extent = extent_from_config(config)
    if not extent.is_interior:
        raise ValidationError("wavelet maps need an interior extension")
    signal = signal_from_config(config.get("signal", {"type": "delta"}))
    tol = config.get("near_circle_tol")

    def evaluate(space, t):
        on_cut = False
        if extent.radius > 0.0:
            on_cut = complex_distance(space, extent.space, near_circle_tol=tol).on_cut
        value = wavelet_eval(signal, RealEvent(space, t), extent, near_circle_tol=tol)
        return value, on_cut

    rows = _field_rows(config, threads, evaluate)
    write_csv(out, GRID_AXES + ("re", "im", "abs", "status"), rows)


def _theta_values(config: dict, default_min: float, default_max: float, default_count: int):
    theta_cfg = config.get("theta", {})
    if not isinstance(theta_cfg, dict):
        raise ValidationError("'theta' must be an object with min/max/count")
    spec = {
        "min": theta_cfg.get("min", default_min),
        "max": theta_cfg.get("max", default_max),
        "count": theta_cfg.get("count", default_count),
    }
    return _axis_values("theta", spec)


def _run_pattern(config: dict, out: str, threads: int) -> None:
    for key in ("s", "a", "r"):
        if key not in config:
            raise ValidationError(f"pattern config is missing '{key}'")
    thetas = _theta_values(config, 0.0, math.pi, 181)
    profile = beam_profile(float(config["s"]), float(config["a"]), float(config["r"]), thetas)
    rows = [
        (format_float(th), format_float(d), format_float(f), format_float(pk))
        for th, d, f, pk in zip(profile.theta, profile.duration, profile.pattern, profile.peak)
    ]
    write_csv(out, ("theta", "duration", "pattern", "peak"), rows)


def _run_channel(config: dict, out: str, threads: int) -> None:
    if "channel" not in config:
        raise ValidationError("channel config is missing the 'channel' object")
    ch = channel_from_json(config["channel"])
    signal = signal_from_config(config.get("signal", {"type": "delta"}))
    separation = norm3(ch.separation.space)
    if separation <= 0.0:
        raise ValidationError("channel endpoints must be spatially separated for a scan")
    metrics = channel_metrics(ch)
    amplitude = channel_amplitude(ch, signal)
    thetas = _theta_values(config, -math.pi, math.pi, 721)
    scan = gain_scan(
        ch.emitter_extent.radius,
        ch.emitter_extent.time,
        ch.receiver_extent.radius,
        ch.receiver_extent.time,
        separation,
        thetas,
    )
    rows = [(format_float(th), format_float(peak)) for th, peak in scan]
    write_csv(out, ("theta", "peak"), rows)

    def jsonable(value):
        # infinite bandwidth of an idealized point endpoint: string sentinel,
        # keeping the summary strict JSON
        return value if math.isfinite(value) else "inf"

    summary = {
        "metrics": {
            "emit_duration": metrics.emit_duration,
            "receive_duration": metrics.receive_duration,
            "duration": metrics.duration,
            "emit_bandwidth": jsonable(metrics.emit_bandwidth),
            "receive_bandwidth": jsonable(metrics.receive_bandwidth),
            "bandwidth": metrics.bandwidth,
            "aperture": metrics.aperture,
        },
        "amplitude": {
            "re": amplitude.real,
            "im": amplitude.imag,
            "abs": abs(amplitude),
        },
        "separation": separation,
        "scan_csv": out,
    }
    json.dump(summary, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _run_verify(config: dict, only) -> int:
    from .verification import run_checks

    results = run_checks(only=only)
    width = max(len(result.name) for result in results)
    failures = 0
    for result in results:
        flag = "PASS" if result.passed else "FAIL"
        print(f"[{result.ident:>2}] {result.name:<{width}}  {flag}  {result.detail}")
        failures += 0 if result.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 2


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ValidationError("config root must be a JSON object")
    return config


def _resolve_threads(flag_value, config: dict) -> int:
    if flag_value is not None:
        threads = flag_value
    elif "threads" in config:
        threads = config["threads"]
    elif os.environ.get(THREADS_ENV_VAR):
        threads = os.environ[THREADS_ENV_VAR]
    else:
        threads = 1
    try:
        threads = int(threads)
    except (TypeError, ValueError):
        raise ValidationError(f"thread count must be an integer, got {threads!r}") from None
    if threads < 1:
        raise ValidationError(f"thread count must be >= 1, got {threads}")
    return threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsebeam",
        description="Grid sampling and verification for pulsed-beam wave fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_out in (
        ("distance", True),
        ("propagator", True),
        ("wavelet", True),
        ("pattern", True),
        ("channel", True),
    ):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="JSON configuration file")
        cmd.add_argument("--out", help="output CSV path (overrides config 'out')")
        cmd.add_argument("--threads", type=int, help="worker threads for grid sampling")
    verify = sub.add_parser("verify")
    verify.add_argument("--config", help="optional JSON configuration file")
    verify.add_argument("--only", help="comma-separated list of check ids to run")
    return parser


_RUNNERS = {
    "distance": _run_distance,
    "propagator": _run_propagator,
    "wavelet": _run_wavelet,
    "pattern": _run_pattern,
    "channel": _run_channel,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
        if args.command == "verify":
            only = args.only.split(",") if args.only else None
            return _run_verify(config, only)
        out = args.out or config.get("out")
        if not out:
            raise ValidationError("no output path: pass --out or set 'out' in the config")
        threads = _resolve_threads(args.threads, config)
        _RUNNERS[args.command](config, str(out), threads)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 2
    except PulsebeamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
