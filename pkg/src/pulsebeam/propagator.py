"""Causal impulse field extended to complexified spacetime, and its beam shape.

With complex time tau = t - i s and complex radial coordinate
rt = p - i q, the extended impulse field is

    1 / (8 i pi^2 rt (tau - rt)).

For an interior extension (s > a) the denominator is bounded away from
zero, since Im(tau - rt) = -(s - q) <= -(s - a) < 0: the field is an
everywhere-finite beam pulse aimed along the extension axis.  In the far
zone it reduces to

    1 / (8 i pi^2 r {(t - r) - i (s - a cos theta)}),

a pulse of angle-dependent duration s - a cos(theta) peaking at t = r,
whose angular pattern 1/(8 pi^2 (s - a cos theta)) traces an ellipse of
eccentricity a/s with one focus at the origin and has no sidelobes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import CausalityError, SingularityProximityError, ValidationError
from .geometry import complex_distance
from .spacetime import as_scalar, as_vec3, norm3

_EIGHT_PI_SQ = 8.0 * math.pi * math.pi


def extended_propagator(
    x: Sequence[float],
    y: Sequence[float],
    t: float,
    s: float,
    near_circle_tol: float | None = None,
) -> complex:
    """Extended impulse field at spatial offset x, time t, extension (y, s).

    Requires an interior extension (s > |y| > 0) and an evaluation point
    away from the branch circle.  The purely real case y = 0 is refused:
    its boundary value is a distribution, not a pointwise field.
    """
    t = as_scalar(t, "time")
    s = as_scalar(s, "extension lag")
    dist = complex_distance(x, y, near_circle_tol=near_circle_tol)
    a = norm3(as_vec3(y, "extension vector"))
    if s <= a:
        raise CausalityError(
            f"extension lag must exceed the extension radius (s > a), got s={s:g}, a={a:g}"
        )
    if dist.near_circle:
        raise SingularityProximityError(
            "evaluation point is within the guard distance of the branch circle"
        )
    rt = dist.value
    tau = complex(t, -s)
    return 1.0 / (8j * math.pi * math.pi * rt * (tau - rt))


def far_zone_propagator(r: float, theta: float, t: float, s: float, a: float) -> complex:
    """Far-zone beam form at radius r and polar angle theta off the beam axis."""
    r = as_scalar(r, "radius")
    theta = as_scalar(theta, "polar angle")
    t = as_scalar(t, "time")
    s = as_scalar(s, "extension lag")
    a = as_scalar(a, "extension radius")
    if r <= 0.0:
        raise ValidationError(f"radius must be positive, got {r}")
    if a < 0.0:
        raise ValidationError(f"extension radius must be nonnegative, got {a}")
    if s <= a:
        raise CausalityError(
            f"extension lag must exceed the extension radius (s > a), got s={s:g}, a={a:g}"
        )
    denominator = complex(t - r, -(s - a * math.cos(theta)))
    return 1.0 / (8j * math.pi * math.pi * r * denominator)


@dataclass(frozen=True)
class BeamProfile:
    """Angular beam characteristics sampled on a polar-angle grid.

    duration[i] = s - a cos(theta[i]) is the pulse length radiated at that
    angle, pattern[i] its far-field amplitude, and peak[i] the t = r peak
    value at the reference radius.  pattern * duration is constant in
    theta (the elliptical-pattern property) and eccentricity = a / s.
    """

    theta: Tuple[float, ...]
    duration: Tuple[float, ...]
    pattern: Tuple[float, ...]
    peak: Tuple[float, ...]
    eccentricity: float


def beam_profile(s: float, a: float, r: float, theta_grid: Sequence[float]) -> BeamProfile:
    """Sample duration, angular pattern, and peak amplitude over theta_grid.

    The peak uses the far-zone form and is approximate at moderate r.
    """
    s = as_scalar(s, "extension lag")
    a = as_scalar(a, "extension radius")
    r = as_scalar(r, "reference radius")
    if r <= 0.0:
        raise ValidationError(f"reference radius must be positive, got {r}")
    if a < 0.0:
        raise ValidationError(f"extension radius must be nonnegative, got {a}")
    if s <= a:
        raise CausalityError(
            f"extension lag must exceed the extension radius (s > a), got s={s:g}, a={a:g}"
        )
    thetas = tuple(as_scalar(th, "polar angle") for th in theta_grid)
    durations = tuple(s - a * math.cos(th) for th in thetas)
    patterns = tuple(1.0 / (_EIGHT_PI_SQ * d) for d in durations)
    peaks = tuple(1.0 / (_EIGHT_PI_SQ * r * d) for d in durations)
    return BeamProfile(
        theta=thetas,
        duration=durations,
        pattern=patterns,
        peak=peaks,
        eccentricity=a / s,
    )
