"""Emitter/receiver link algebra for beam wavelets.

A link is a pair of endpoints: an emitter centered at the event x_e with
extension y_e (future-tube parameterization x_e + i y_e) and a receiver
centered at x_r with extension y_r (past-tube parameterization
x_r - i y_r).  The transmission amplitude is the beam wavelet evaluated
at the difference, which depends only on

    x = x_r - x_e    and    y = y_e + y_r,

so shifting both centers by a common real 4-vector, or moving extension
between the endpoints (y_e + eta, y_r - eta), produces an equivalent
link with identical amplitude.  The summed extension must be interior;
each endpoint may individually be an idealized point (null extension).

Durations and bandwidths: each endpoint can handle pulses no shorter
than lag - radius, and the link as a whole no shorter than s - a, which
by the triangle inequality is at least the sum of the endpoint durations,
with equality exactly for parallel extensions.  Peak transmission at
fixed endpoint sizes therefore occurs in the line-of-sight configuration
where separation and both extensions are parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import CausalityError, ConeViolationError, ValidationError
from .signals import DEFAULT_REL_TOL, DrivingSignal
from .spacetime import (
    ConeStatus,
    ConeVector,
    RealEvent,
    as_scalar,
    cone_status,
)
from .wavelet import wavelet_eval

_EIGHT_PI_SQ = 8.0 * math.pi * math.pi


@dataclass(frozen=True)
class Channel:
    """An emitter endpoint and a receiver endpoint forming one transmission link."""

    emitter_center: RealEvent
    emitter_extent: ConeVector
    receiver_center: RealEvent
    receiver_extent: ConeVector

    def __post_init__(self):
        total_space = tuple(
            a + b for a, b in zip(self.emitter_extent.space, self.receiver_extent.space)
        )
        total_time = self.emitter_extent.time + self.receiver_extent.time
        if cone_status(total_space, total_time) is not ConeStatus.INTERIOR:
            raise CausalityError(
                "summed endpoint extension must be interior to the future cone; "
                "two idealized point endpoints cannot form a link"
            )

    @property
    def separation(self) -> RealEvent:
        return self.receiver_center - self.emitter_center

    @property
    def combined_extent(self) -> ConeVector:
        return self.emitter_extent + self.receiver_extent

    @property
    def aperture(self) -> float:
        """Radius of the summed extension, at most the sum of the endpoint radii."""
        return self.combined_extent.radius


def make_channel(
    emitter_center: RealEvent,
    emitter_extent: ConeVector,
    receiver_center: RealEvent,
    receiver_extent: ConeVector,
) -> Channel:
    """Validated link; endpoints may be interior or null, their sum must be interior."""
    return Channel(emitter_center, emitter_extent, receiver_center, receiver_extent)


def channel_amplitude(
    ch: Channel, signal: DrivingSignal, rel_tol: float = DEFAULT_REL_TOL
) -> complex:
    """Transmission amplitude: the wavelet at the endpoint difference.

    Depends only on separation and combined extension, hence is invariant
    under the equivalence moves of channel_translate.
    """
    return wavelet_eval(signal, ch.separation, ch.combined_extent, rel_tol=rel_tol)


def _vec4(values: Sequence[float], what: str) -> Tuple[float, ...]:
    vals = tuple(float(v) for v in values)
    if len(vals) != 4:
        raise ValidationError(f"{what} must have 4 components, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise ValidationError(f"{what} components must be finite, got {vals}")
    return vals


def channel_translate(ch: Channel, real_shift: Sequence[float], imag_shift: Sequence[float]) -> Channel:
    """Equivalent link: both centers shifted by real_shift, extension moved by imag_shift.

    The emitter extent gains imag_shift and the receiver extent loses it,
    so separation and combined extension are unchanged.  Both new extents
    must remain admissible (interior or null).
    """
    xi = _vec4(real_shift, "real translation")
    eta = _vec4(imag_shift, "imaginary translation")
    new_extents = []
    for extent, sign, which in (
        (ch.emitter_extent, 1.0, "emitter"),
        (ch.receiver_extent, -1.0, "receiver"),
    ):
        space = tuple(v + sign * d for v, d in zip(extent.space, eta[:3]))
        time = extent.time + sign * eta[3]
        if cone_status(space, time) is ConeStatus.INVALID:
            raise ConeViolationError(
                f"translated {which} extent leaves the admissible cone states "
                f"(space={space}, time={time:g})"
            )
        new_extents.append(ConeVector(space, time))
    return Channel(
        ch.emitter_center.shifted(xi),
        new_extents[0],
        ch.receiver_center.shifted(xi),
        new_extents[1],
    )


@dataclass(frozen=True)
class ChannelMetrics:
    """Durations, bandwidths, and aperture of a link.

    Bandwidths are reciprocals of the shortest pulse each side can handle;
    an idealized point endpoint has zero duration and infinite bandwidth,
    while the link bandwidth stays finite because the summed extension is
    interior.
    """

    emit_duration: float
    receive_duration: float
    duration: float
    emit_bandwidth: float
    receive_bandwidth: float
    bandwidth: float
    aperture: float


def channel_metrics(ch: Channel) -> ChannelMetrics:
    emit_duration = ch.emitter_extent.time - ch.emitter_extent.radius
    receive_duration = ch.receiver_extent.time - ch.receiver_extent.radius
    combined = ch.combined_extent
    duration = combined.time - combined.radius
    return ChannelMetrics(
        emit_duration=emit_duration,
        receive_duration=receive_duration,
        duration=duration,
        emit_bandwidth=1.0 / emit_duration if emit_duration > 0.0 else math.inf,
        receive_bandwidth=1.0 / receive_duration if receive_duration > 0.0 else math.inf,
        bandwidth=1.0 / duration,
        aperture=combined.radius,
    )


def gain_scan(
    emit_radius: float,
    emit_lag: float,
    receive_radius: float,
    receive_lag: float,
    separation: float,
    theta_grid: Sequence[float],
) -> Tuple[Tuple[float, float], ...]:
    """Peak received amplitude versus receiver tilt angle.

    The emitter extension is held along the separation axis and the
    receiver extension tilted by theta in a fixed plane, so the combined
    extension has axis component emit_radius + receive_radius*cos(theta);
    the far-zone peak (the t = separation slice) is

        1 / (8 pi^2 separation (s - emit_radius - receive_radius cos theta)),

    maximal at theta = 0: the line-of-sight configuration.
    """
    emit_radius = as_scalar(emit_radius, "emitter radius")
    emit_lag = as_scalar(emit_lag, "emitter lag")
    receive_radius = as_scalar(receive_radius, "receiver radius")
    receive_lag = as_scalar(receive_lag, "receiver lag")
    separation = as_scalar(separation, "separation")
    if emit_radius < 0.0 or receive_radius < 0.0:
        raise ValidationError("endpoint radii must be nonnegative")
    if emit_lag <= emit_radius or receive_lag <= receive_radius:
        raise CausalityError("endpoint extents must be interior (lag > radius)")
    if separation <= 0.0:
        raise ValidationError(f"separation must be positive, got {separation}")
    total_lag = emit_lag + receive_lag
    samples = []
    for theta in theta_grid:
        theta = as_scalar(theta, "tilt angle")
        duration = total_lag - emit_radius - receive_radius * math.cos(theta)
        samples.append((theta, 1.0 / (_EIGHT_PI_SQ * separation * duration)))
    return tuple(samples)


# ---------------------------------------------------------------------------
# JSON wire format (field names are fixed; golden files depend on them)
# ---------------------------------------------------------------------------


def channel_to_json(ch: Channel) -> dict:
    def endpoint(center: RealEvent, extent: ConeVector) -> dict:
        return {
            "center": [*center.space, center.time],
            "extent": [*extent.space, extent.time],
        }

    return {
        "emitter": endpoint(ch.emitter_center, ch.emitter_extent),
        "receiver": endpoint(ch.receiver_center, ch.receiver_extent),
    }


def channel_from_json(obj: dict) -> Channel:
    if not isinstance(obj, dict):
        raise ValidationError("channel description must be a JSON object")
    parts = {}
    for side in ("emitter", "receiver"):
        if side not in obj:
            raise ValidationError(f"channel description is missing the '{side}' entry")
        entry = obj[side]
        if not isinstance(entry, dict) or set(entry) - {"center", "extent"}:
            raise ValidationError(
                f"'{side}' must be an object with exactly 'center' and 'extent' fields"
            )
        for field in ("center", "extent"):
            if field not in entry:
                raise ValidationError(f"'{side}' is missing the '{field}' 4-vector")
            parts[side, field] = _vec4(entry[field], f"{side} {field}")
    return Channel(
        RealEvent(parts["emitter", "center"][:3], parts["emitter", "center"][3]),
        ConeVector(parts["emitter", "extent"][:3], parts["emitter", "extent"][3]),
        RealEvent(parts["receiver", "center"][:3], parts["receiver", "center"][3]),
        ConeVector(parts["receiver", "extent"][:3], parts["receiver", "extent"][3]),
    )
