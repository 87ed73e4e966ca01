"""Acceptance checks: every identity, bound, and invariance the library promises.

Each check is deterministic (fixed seeds), runs at desk scale, and records
the worst observed residual in its detail string.  `run_checks` executes
them all (or a subset) and is shared by the CLI `verify` subcommand and
the acceptance test module.
"""

from __future__ import annotations

import json
import math
import os
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .channel import (
    Channel,
    channel_amplitude,
    channel_metrics,
    channel_translate,
    gain_scan,
    make_channel,
)
from .errors import ValidationError
from .geometry import complex_distance, spheroidal_coords
from .propagator import beam_profile, extended_propagator, far_zone_propagator
from .signals import (
    DeltaDerivative,
    GaussianPulse,
    analytic_signal,
    spectral_signal,
)
from .spacetime import ConeVector, RealEvent, cone_status, ConeStatus, dot3, norm3
from .wavelet import boundary_jump, wave_residual, wavelet_eval

_EIGHT_PI_SQ = 8.0 * math.pi * math.pi
_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class CheckResult:
    ident: str
    name: str
    passed: bool
    detail: str


def _unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    vecs = rng.normal(size=(count, 3))
    norms = np.linalg.norm(vecs, axis=1)
    # Degenerate draws are essentially impossible but keep the guard cheap.
    norms[norms < 1e-12] = 1.0
    return vecs / norms[:, None]


# ---------------------------------------------------------------------------
# 1: algebraic identities of the complex radial coordinate
# ---------------------------------------------------------------------------


def check_distance_identities() -> CheckResult:
    rng = np.random.default_rng(20260801)
    n = 100_000
    dirs = _unit_vectors(rng, n)
    radii = 10.0 ** rng.uniform(-1.0, 0.5, size=n)
    xs = rng.uniform(-5.0, 5.0, size=(n, 3))
    worst_sq = 0.0
    worst_pq = 0.0
    for k in range(n):
        a = float(radii[k])
        yhat = dirs[k]
        y = (a * yhat[0], a * yhat[1], a * yhat[2])
        x = (float(xs[k, 0]), float(xs[k, 1]), float(xs[k, 2]))
        r = norm3(x)
        x3 = dot3(x, yhat)
        d = complex_distance(x, y)
        res_sq = abs((d.p * d.p - d.q * d.q) - (r * r - a * a)) / (r + a) ** 2
        res_pq = abs(d.p * d.q - a * x3) / max(a * r, 1e-300)
        worst_sq = max(worst_sq, res_sq)
        worst_pq = max(worst_pq, res_pq)
    passed = worst_sq <= 1e-12 and worst_pq <= 1e-12
    return CheckResult(
        "1",
        "complex-distance-identities",
        passed,
        f"max rel residual: squares {worst_sq:.2e}, product {worst_pq:.2e} over {n} samples",
    )


# ---------------------------------------------------------------------------
# 2: bounds |p| <= r, |q| <= a with equality exactly on the axis
# ---------------------------------------------------------------------------


def check_distance_bounds() -> CheckResult:
    rng = np.random.default_rng(20260802)
    n = 100_000
    dirs = _unit_vectors(rng, n)
    radii = 10.0 ** rng.uniform(-1.0, 0.5, size=n)
    xs = rng.uniform(-5.0, 5.0, size=(n, 3))
    worst_p = -math.inf
    worst_q = -math.inf
    oblique_ok = True
    for k in range(n):
        a = float(radii[k])
        yhat = dirs[k]
        y = (a * yhat[0], a * yhat[1], a * yhat[2])
        x = (float(xs[k, 0]), float(xs[k, 1]), float(xs[k, 2]))
        r = norm3(x)
        d = complex_distance(x, y)
        worst_p = max(worst_p, (d.p - r) / (r + a))
        worst_q = max(worst_q, (abs(d.q) - a) / a)
        if r > 0.0:
            x3 = dot3(x, yhat)
            sin_angle = math.sqrt(max(1.0 - (x3 / r) ** 2, 0.0))
            if sin_angle > 0.1 and not (r - d.p > 0.0 and a - abs(d.q) > 0.0):
                oblique_ok = False
    # On-axis batch: equality of both bounds to 1e-12.
    worst_axis = 0.0
    for k in range(2000):
        yhat = _unit_vectors(rng, 1)[0]
        a = float(10.0 ** rng.uniform(-1.0, 0.5))
        lam = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-1.0, 1.0) * a)
        y = (a * yhat[0], a * yhat[1], a * yhat[2])
        x = (lam * yhat[0], lam * yhat[1], lam * yhat[2])
        r = norm3(x)
        d = complex_distance(x, y)
        worst_axis = max(
            worst_axis, abs(d.p - r) / max(r, a), abs(abs(d.q) - a) / a
        )
    passed = (
        worst_p <= 1e-13 and worst_q <= 1e-13 and oblique_ok and worst_axis <= 1e-12
    )
    return CheckResult(
        "2",
        "complex-distance-bounds",
        passed,
        f"bound slack min 0 (worst normalized excess p {worst_p:.1e}, q {worst_q:.1e}); "
        f"on-axis equality residual {worst_axis:.2e}; oblique strictness "
        f"{'ok' if oblique_ok else 'violated'}",
    )


# ---------------------------------------------------------------------------
# 3: spheroid / hyperboloid coordinate-surface identities
# ---------------------------------------------------------------------------


def check_spheroidal_residuals() -> CheckResult:
    rng = np.random.default_rng(20260803)
    accepted = 0
    worst = 0.0
    while accepted < 10_000:
        yhat = _unit_vectors(rng, 1)[0]
        a = float(10.0 ** rng.uniform(-0.5, 0.5))
        y = (a * yhat[0], a * yhat[1], a * yhat[2])
        r = float(a * 10.0 ** rng.uniform(-1.0, 0.6))
        xhat = _unit_vectors(rng, 1)[0]
        x = (r * xhat[0], r * xhat[1], r * xhat[2])
        d = complex_distance(x, y)
        # Both identities need p != 0 and 0 < |q| < a with sane conditioning.
        if d.p < 0.05 * a or abs(d.q) < 0.05 * a or abs(d.q) > 0.95 * a:
            continue
        sc = spheroidal_coords(x, y)
        x3 = dot3(x, yhat)
        res1 = abs(sc.rho**2 / (a * a + sc.p**2) + x3 * x3 / sc.p**2 - 1.0)
        res2 = abs(sc.rho**2 / (a * a - sc.q**2) - x3 * x3 / sc.q**2 - 1.0)
        worst = max(worst, res1, res2)
        accepted += 1
    passed = worst <= 1e-10
    return CheckResult(
        "3",
        "spheroidal-residuals",
        passed,
        f"max surface-identity residual {worst:.2e} over {accepted} regular points",
    )


# ---------------------------------------------------------------------------
# 4: finite-difference wave residual vanishes at second order
# ---------------------------------------------------------------------------


def check_wave_residual_order() -> CheckResult:
    rng = np.random.default_rng(20260804)
    extent = ConeVector((0.0, 0.0, 0.6), 1.1)
    delta = DeltaDerivative(0)
    gauss = GaussianPulse(0.0, 1.0, 1.0)
    steps = (1e-2, 5e-3, 2.5e-3)
    log_h = np.log(steps)

    points: List[RealEvent] = []
    while len(points) < 20:
        xhat = _unit_vectors(rng, 1)[0]
        if abs(xhat[2]) < 0.12:
            continue
        r = float(rng.uniform(1.5, 3.5))
        t = r + float(rng.uniform(-0.5, 0.5))
        event = RealEvent((r * xhat[0], r * xhat[1], r * xhat[2]), t)
        scale = abs(wavelet_eval(delta, event, extent))
        ratio = abs(wave_residual(delta, event, extent, steps[0])) / scale
        if not (1e-8 <= ratio <= 1e-3):
            continue
        points.append(event)

    min_order = math.inf
    max_ratio = 0.0
    for signal in (delta, gauss):
        for event in points:
            scale = abs(wavelet_eval(signal, event, extent))
            residuals = [abs(wave_residual(signal, event, extent, h)) for h in steps]
            slope = float(np.polyfit(log_h, np.log(residuals), 1)[0])
            min_order = min(min_order, slope)
            max_ratio = max(max_ratio, residuals[0] / scale)
    passed = min_order >= 1.8 and max_ratio <= 1e-3
    return CheckResult(
        "4",
        "wave-residual-order",
        passed,
        f"min convergence order {min_order:.3f} (need >= 1.8), "
        f"max |residual|/|W| at h=1e-2: {max_ratio:.2e}",
    )


# ---------------------------------------------------------------------------
# 5: boundary-value jump recovers the retarded point-source field
# ---------------------------------------------------------------------------


def check_hyperfunction_jump() -> CheckResult:
    extent = ConeVector((0.0, 0.0, 0.5), 1.0)
    signal = GaussianPulse(0.0, 1.0, 1.0)
    directions = (
        (0.0, 0.0, 1.0),
        (0.6, 0.0, 0.8),
        (1.0, 0.0, 0.0),
        (0.0, 0.28, 0.96),
        (-0.8, 0.0, 0.6),
    )
    radii = (1.5, 2.0, 2.5, 3.0, 4.0)
    offsets = (-0.5, -0.25, 0.0, 0.25, 0.5)
    worst_rel = 0.0
    worst_imag = 0.0
    pinned_rel = math.inf
    for i, r in enumerate(radii):
        for j, dt in enumerate(offsets):
            direction = directions[(i + j) % len(directions)]
            event = RealEvent(tuple(r * c for c in direction), r + dt)
            jump = boundary_jump(signal, event, extent)
            truth = math.exp(-0.5 * dt * dt) / (_FOUR_PI * r)
            rel = abs(jump.real - truth) / truth
            worst_rel = max(worst_rel, rel)
            worst_imag = max(worst_imag, abs(jump.imag))
            if r == 2.0 and dt == 0.5:
                pinned = math.exp(-0.125) / (8.0 * math.pi)
                pinned_rel = abs(jump.real - pinned) / pinned
    passed = worst_rel <= 1e-6 and worst_imag <= 1e-8 and pinned_rel <= 1e-6
    return CheckResult(
        "5",
        "hyperfunction-jump",
        passed,
        f"max rel error {worst_rel:.2e} on 5x5 grid, max |imag| {worst_imag:.2e}, "
        f"pinned exp(-1/8)/(8 pi) case rel {pinned_rel:.2e}",
    )


# ---------------------------------------------------------------------------
# 6: invariance under equivalence translations, and the endpoint trio
# ---------------------------------------------------------------------------


def _random_interior_extent(rng: np.random.Generator, min_margin: float = 0.5) -> ConeVector:
    direction = _unit_vectors(rng, 1)[0]
    radius = float(rng.uniform(0.2, 1.0))
    margin = float(rng.uniform(min_margin, min_margin + 0.8))
    return ConeVector(tuple(radius * c for c in direction), radius + margin)


def _random_channel(rng: np.random.Generator) -> Channel:
    while True:
        emitter_extent = _random_interior_extent(rng)
        receiver_extent = _random_interior_extent(rng)
        center = rng.uniform(-2.0, 2.0, size=3)
        direction = _unit_vectors(rng, 1)[0]
        separation = float(rng.uniform(3.0, 6.0))
        t_e = float(rng.uniform(-1.0, 1.0))
        emitter_center = RealEvent(tuple(float(c) for c in center), t_e)
        receiver_center = RealEvent(
            tuple(float(c + separation * d) for c, d in zip(center, direction)),
            t_e + separation + float(rng.uniform(-0.3, 0.3)),
        )
        ch = make_channel(emitter_center, emitter_extent, receiver_center, receiver_extent)
        combined = ch.combined_extent
        dist = complex_distance(ch.separation.space, combined.space)
        if dist.near_circle or dist.on_cut or dist.magnitude < 0.3:
            continue
        return ch


def check_translation_invariance() -> CheckResult:
    rng = np.random.default_rng(20260806)
    signal = DeltaDerivative(0)
    worst = 0.0
    worst_trio = 0.0
    for _ in range(1000):
        ch = _random_channel(rng)
        reference = channel_amplitude(ch, signal)
        xi = tuple(float(v) for v in rng.uniform(-1.0, 1.0, size=4))
        margin = min(
            ch.emitter_extent.time - ch.emitter_extent.radius,
            ch.receiver_extent.time - ch.receiver_extent.radius,
        )
        eta = (0.0, 0.0, 0.0, 0.0)
        for _attempt in range(50):
            trial = tuple(float(v) for v in rng.normal(scale=0.15 * margin, size=4))
            e_space = tuple(a + b for a, b in zip(ch.emitter_extent.space, trial[:3]))
            r_space = tuple(a - b for a, b in zip(ch.receiver_extent.space, trial[:3]))
            if (
                cone_status(e_space, ch.emitter_extent.time + trial[3])
                is ConeStatus.INTERIOR
                and cone_status(r_space, ch.receiver_extent.time - trial[3])
                is ConeStatus.INTERIOR
            ):
                eta = trial
                break
        moved = channel_translate(ch, xi, eta)
        worst = max(
            worst, abs(channel_amplitude(moved, signal) - reference) / abs(reference)
        )
        # The trio: the original link, an idealized event receiver, and an
        # idealized event emitter, all equivalent.
        to_receiver = (*ch.receiver_extent.space, ch.receiver_extent.time)
        to_emitter = tuple(-v for v in (*ch.emitter_extent.space, ch.emitter_extent.time))
        zero = (0.0, 0.0, 0.0, 0.0)
        point_receiver = channel_translate(ch, zero, to_receiver)
        point_emitter = channel_translate(ch, zero, to_emitter)
        for variant in (point_receiver, point_emitter):
            worst_trio = max(
                worst_trio,
                abs(channel_amplitude(variant, signal) - reference) / abs(reference),
            )
    passed = worst <= 1e-14 and worst_trio <= 1e-14
    return CheckResult(
        "6",
        "translation-invariance",
        passed,
        f"max rel amplitude change {worst:.2e} over 1000 moves; endpoint trio {worst_trio:.2e}",
    )


# ---------------------------------------------------------------------------
# 7: duration triangle inequality and the bandwidth chain
# ---------------------------------------------------------------------------


def check_duration_triangle() -> CheckResult:
    rng = np.random.default_rng(20260807)
    origin = RealEvent((0.0, 0.0, 0.0), 0.0)
    apart = RealEvent((5.0, 0.0, 0.0), 5.0)
    worst_slack = math.inf
    chain_ok = True
    for _ in range(10_000):
        ch = make_channel(
            origin,
            _random_interior_extent(rng, min_margin=0.05),
            apart,
            _random_interior_extent(rng, min_margin=0.05),
        )
        m = channel_metrics(ch)
        total_lag = ch.combined_extent.time
        slack = (m.duration - (m.emit_duration + m.receive_duration)) / total_lag
        worst_slack = min(worst_slack, slack)
        endpoint_sum = m.emit_duration + m.receive_duration
        if not (
            m.bandwidth <= 1.0 / endpoint_sum * (1.0 + 1e-15)
            and 1.0 / endpoint_sum < min(m.emit_bandwidth, m.receive_bandwidth)
        ):
            chain_ok = False
    # Parallel extents: the triangle inequality is saturated.
    worst_eq = 0.0
    for _ in range(1000):
        direction = _unit_vectors(rng, 1)[0]
        a_e = float(rng.uniform(0.1, 1.5))
        a_r = float(rng.uniform(0.1, 1.5))
        ch = make_channel(
            origin,
            ConeVector(tuple(a_e * c for c in direction), a_e + float(rng.uniform(0.1, 1.0))),
            apart,
            ConeVector(tuple(a_r * c for c in direction), a_r + float(rng.uniform(0.1, 1.0))),
        )
        m = channel_metrics(ch)
        worst_eq = max(
            worst_eq,
            abs(m.duration - (m.emit_duration + m.receive_duration))
            / ch.combined_extent.time,
        )
    passed = worst_slack >= -1e-12 and chain_ok and worst_eq <= 1e-12
    return CheckResult(
        "7",
        "duration-triangle",
        passed,
        f"min normalized slack {worst_slack:.2e} over 10000 links; bandwidth chain "
        f"{'ok' if chain_ok else 'violated'}; parallel equality residual {worst_eq:.2e}",
    )


# ---------------------------------------------------------------------------
# 8: line-of-sight maximization of the tilt scan
# ---------------------------------------------------------------------------


def check_line_of_sight_gain() -> CheckResult:
    half = np.linspace(0.0, math.pi, 361)
    thetas = np.concatenate([-half[:0:-1], half])  # 721 points, exact 0 at center
    separation = 100.0
    scan = gain_scan(1.0, 2.0, 1.0, 2.0, separation, [float(v) for v in thetas])
    peaks = [p for _, p in scan]
    center = len(peaks) // 2
    argmax = max(range(len(peaks)), key=peaks.__getitem__)
    unique = peaks.count(max(peaks)) == 1
    monotone = all(peaks[i] > peaks[i + 1] for i in range(center, len(peaks) - 1)) and all(
        peaks[i] < peaks[i + 1] for i in range(center)
    )
    symmetric = max(
        abs(peaks[center + k] - peaks[center - k]) / peaks[center + k]
        for k in range(1, center + 1)
    )
    # Cross-module consistency: the theta = 0 peak must match both the
    # parallel-link prediction and the full field at arrival time.
    predicted = 1.0 / (_EIGHT_PI_SQ * separation * (4.0 - 2.0))
    formula_rel = abs(peaks[center] - predicted) / predicted
    amplitude = abs(
        extended_propagator((0.0, 0.0, separation), (0.0, 0.0, 2.0), separation, 4.0)
    )
    field_rel = abs(peaks[center] - amplitude) / amplitude
    passed = (
        scan[center][0] == 0.0
        and argmax == center
        and unique
        and monotone
        and symmetric <= 1e-12
        and formula_rel <= 1e-14
        and field_rel <= 0.02
    )
    return CheckResult(
        "8",
        "line-of-sight-gain",
        passed,
        f"argmax at theta={scan[argmax][0]:g} (unique: {unique}), strictly monotone "
        f"each side: {monotone}, symmetry {symmetric:.1e}, field consistency {field_rel:.2%}",
    )


# ---------------------------------------------------------------------------
# 9: angular pattern shape
# ---------------------------------------------------------------------------


def check_pattern_shape() -> CheckResult:
    thetas = [float(v) for v in np.linspace(0.0, math.pi, 1801)]
    profile = beam_profile(2.0, 1.0, 100.0, thetas)
    decreasing = all(
        profile.pattern[i] > profile.pattern[i + 1] for i in range(len(thetas) - 1)
    )
    constant = 1.0 / _EIGHT_PI_SQ
    worst = max(
        abs(f * d - constant) / constant
        for f, d in zip(profile.pattern, profile.duration)
    )
    passed = decreasing and worst <= 1e-12
    return CheckResult(
        "9",
        "pattern-shape",
        passed,
        f"strictly decreasing: {decreasing}; pattern*duration deviation {worst:.2e}",
    )


# ---------------------------------------------------------------------------
# 10: far-zone form converges at first order in a/r
# ---------------------------------------------------------------------------


def check_far_zone_convergence() -> CheckResult:
    a, s = 1.0, 2.0
    angles = (0.0, math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3, math.pi)
    worst_near = 0.0
    ratio_lo, ratio_hi = math.inf, -math.inf
    for theta in angles:
        errs = []
        for r in (100.0, 200.0):
            x = (r * math.sin(theta), 0.0, r * math.cos(theta))
            exact = extended_propagator(x, (0.0, 0.0, a), r, s)
            approx = far_zone_propagator(r, theta, r, s, a)
            errs.append(abs(exact - approx) / abs(approx))
        worst_near = max(worst_near, errs[0])
        ratio = errs[1] / errs[0]
        ratio_lo = min(ratio_lo, ratio)
        ratio_hi = max(ratio_hi, ratio)
    passed = worst_near <= 0.02 and 0.4 <= ratio_lo and ratio_hi <= 0.6
    return CheckResult(
        "10",
        "far-zone-convergence",
        passed,
        f"max rel error at r=100a: {worst_near:.2%}; doubling-r error ratio in "
        f"[{ratio_lo:.3f}, {ratio_hi:.3f}] (need within [0.4, 0.6])",
    )


# ---------------------------------------------------------------------------
# 11: the two analytic-signal routes agree
# ---------------------------------------------------------------------------


def check_dual_path_signal() -> CheckResult:
    signal = GaussianPulse(0.0, 1.0, 1.0)
    worst = 0.0
    for t in (-2.0, -0.8, 0.0, 0.6, 1.4, 3.0):
        for s in (0.1, 0.3, 1.0, 2.2, 5.0):
            direct = analytic_signal(signal, complex(t, -s))
            spectral = spectral_signal(signal, t, s)
            worst = max(worst, abs(direct - spectral) / max(abs(direct), 1e-300))
    passed = worst <= 1e-6
    return CheckResult(
        "11",
        "dual-path-signal",
        passed,
        f"max rel disagreement {worst:.2e} on the (t, s) grid",
    )


# ---------------------------------------------------------------------------
# 12: CLI determinism across runs and thread counts
# ---------------------------------------------------------------------------


def check_cli_determinism() -> CheckResult:
    channel_obj = {
        "emitter": {"center": [0.0, 0.0, 0.0, 0.0], "extent": [0.0, 0.0, 0.8, 1.6]},
        "receiver": {"center": [0.0, 0.0, 10.0, 10.0], "extent": [0.3, 0.0, 0.9, 1.7]},
    }
    configs = {
        "pattern": {
            "s": 2.0,
            "a": 1.0,
            "r": 100.0,
            "theta": {"min": 0.0, "max": math.pi, "count": 181},
        },
        "channel": {
            "channel": channel_obj,
            "signal": {"type": "delta"},
            "theta": {"min": -math.pi, "max": math.pi, "count": 181},
        },
    }
    detail = []
    passed = True
    with tempfile.TemporaryDirectory() as workdir:
        for command, config in configs.items():
            config_path = os.path.join(workdir, f"{command}.json")
            with open(config_path, "w") as handle:
                json.dump(config, handle)
            outputs = []
            for tag, threads in (("a", 1), ("b", 1), ("c", 4)):
                out_path = os.path.join(workdir, f"{command}-{tag}.csv")
                proc = subprocess.run(
                    [
                        sys.executable,
                        "-m",
                        "pulsebeam",
                        command,
                        "--config",
                        config_path,
                        "--out",
                        out_path,
                        "--threads",
                        str(threads),
                    ],
                    capture_output=True,
                )
                if proc.returncode != 0:
                    passed = False
                    detail.append(
                        f"{command} exited {proc.returncode}: {proc.stderr.decode()[:120]}"
                    )
                    break
                with open(out_path, "rb") as handle:
                    outputs.append(handle.read())
            else:
                identical = outputs[0] == outputs[1] == outputs[2]
                passed = passed and identical
                detail.append(
                    f"{command}: {len(outputs[0])} bytes, "
                    f"{'identical' if identical else 'DIFFER'} across 2 runs + threads 1/4"
                )
    return CheckResult("12", "cli-determinism", passed, "; ".join(detail))


# ---------------------------------------------------------------------------


ACCEPTANCE_CHECKS: Tuple[Tuple[str, str, Callable[[], CheckResult]], ...] = (
    ("1", "complex-distance-identities", check_distance_identities),
    ("2", "complex-distance-bounds", check_distance_bounds),
    ("3", "spheroidal-residuals", check_spheroidal_residuals),
    ("4", "wave-residual-order", check_wave_residual_order),
    ("5", "hyperfunction-jump", check_hyperfunction_jump),
    ("6", "translation-invariance", check_translation_invariance),
    ("7", "duration-triangle", check_duration_triangle),
    ("8", "line-of-sight-gain", check_line_of_sight_gain),
    ("9", "pattern-shape", check_pattern_shape),
    ("10", "far-zone-convergence", check_far_zone_convergence),
    ("11", "dual-path-signal", check_dual_path_signal),
    ("12", "cli-determinism", check_cli_determinism),
)


def run_checks(only: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Run the acceptance checks (all, or those matching ids/names in `only`)."""
    wanted = None
    if only is not None:
        wanted = {str(item).strip() for item in only}
    results = []
    for ident, name, func in ACCEPTANCE_CHECKS:
        if wanted is not None and ident not in wanted and name not in wanted:
            continue
        results.append(func())
    if not results:
        raise ValidationError(f"no acceptance checks match {only!r}")
    return results
