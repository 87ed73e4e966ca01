"""Real and complexified spacetime points and the future-cone constraint.

Units: the propagation speed is 1, so all four components of an event or
extension vector share one length unit.  Every type here is an immutable
value and every operation a pure function; unrestricted concurrent use is
safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

from .errors import CausalityError, ValidationError

Vec3 = Tuple[float, float, float]


def as_vec3(values: Sequence[float], what: str = "vector") -> Vec3:
    vals = tuple(float(v) for v in values)
    if len(vals) != 3:
        raise ValidationError(f"{what} must have exactly 3 components, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise ValidationError(f"{what} components must be finite, got {vals}")
    return vals


def as_scalar(value: float, what: str = "scalar") -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{what} must be finite, got {value}")
    return value


def norm3(v: Sequence[float]) -> float:
    # hypot stays exact where the squares would under- or overflow
    return math.hypot(v[0], v[1], v[2])


def dot3(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


class ConeStatus(Enum):
    INTERIOR = "interior"
    NULL_ENDPOINT = "null-endpoint"
    INVALID = "invalid"


def cone_status(space: Sequence[float], time: float) -> ConeStatus:
    """Classify a 4-vector against the future cone.

    INTERIOR requires time > |space| strictly, with exact floating-point
    comparison: boundary inputs are user errors, not numerical noise, and a
    caller needing slack should pre-inflate the time component.
    NULL_ENDPOINT is the exact zero vector, admitted so idealized point
    endpoints are representable.  Everything else is INVALID.
    """
    space = as_vec3(space, "cone vector space part")
    time = as_scalar(time, "cone vector time part")
    radius = norm3(space)
    if time > radius:
        return ConeStatus.INTERIOR
    if time == 0.0 and radius == 0.0:
        return ConeStatus.NULL_ENDPOINT
    return ConeStatus.INVALID


@dataclass(frozen=True)
class RealEvent:
    """A point (space, time) of real spacetime."""

    space: Vec3
    time: float

    def __post_init__(self):
        object.__setattr__(self, "space", as_vec3(self.space, "event space part"))
        object.__setattr__(self, "time", as_scalar(self.time, "event time part"))

    @property
    def radius(self) -> float:
        return norm3(self.space)

    def __sub__(self, other: "RealEvent") -> "RealEvent":
        return RealEvent(
            tuple(a - b for a, b in zip(self.space, other.space)),
            self.time - other.time,
        )

    def shifted(self, delta: Sequence[float]) -> "RealEvent":
        """Translate by a 4-vector (dx1, dx2, dx3, dt)."""
        d = tuple(float(v) for v in delta)
        if len(d) != 4:
            raise ValidationError(f"translation must have 4 components, got {len(d)}")
        return RealEvent(tuple(a + b for a, b in zip(self.space, d[:3])), self.time + d[3])


@dataclass(frozen=True)
class ConeVector:
    """Antenna extension 4-vector, constrained to the future cone.

    The space part carries the antenna radius and orientation, the time
    part the center-to-rim signal lag.  Admissible states are the open
    cone interior (time > |space|) and the exact zero vector, which stands
    for an idealized point endpoint.
    """

    space: Vec3
    time: float

    def __post_init__(self):
        space = as_vec3(self.space, "extension space part")
        time = as_scalar(self.time, "extension time part")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "time", time)
        if cone_status(space, time) is ConeStatus.INVALID:
            raise ValidationError(
                "extension must lie strictly inside the future cone (time > |space|) "
                f"or be exactly zero, got space={space}, time={time}"
            )

    @classmethod
    def null(cls) -> "ConeVector":
        return cls((0.0, 0.0, 0.0), 0.0)

    @property
    def radius(self) -> float:
        return norm3(self.space)

    @property
    def is_null(self) -> bool:
        return self.time == 0.0

    @property
    def is_interior(self) -> bool:
        return self.time > 0.0

    def __add__(self, other: "ConeVector") -> "ConeVector":
        # The future cone is convex, so interior + interior stays interior
        # and adding a null endpoint changes nothing.
        return ConeVector(
            tuple(a + b for a, b in zip(self.space, other.space)),
            self.time + other.time,
        )


class Tube(Enum):
    """Which complex half z = x + iy (future) or z = x - iy (past) a point lives in."""

    FUTURE = "future"
    PAST = "past"


@dataclass(frozen=True)
class ComplexEvent:
    """A complexified spacetime point: a real event plus a cone-constrained imaginary part."""

    real: RealEvent
    imag: ConeVector
    tube: Tube


def tube_difference(receiver: ComplexEvent, emitter: ComplexEvent) -> ComplexEvent:
    """Difference z = z_receiver - z_emitter of the two endpoint events.

    The receiver is parameterized in the past tube (x - iy) and the emitter
    in the future tube (x + iy), so the difference has real part
    x_r - x_e and imaginary extension y_r + y_e, and stays in the past
    tube.  The summed extension must be interior: two idealized point
    endpoints cannot form an extended link.
    """
    if receiver.tube is not Tube.PAST:
        raise ValidationError("receiver endpoint must be parameterized in the past tube")
    if emitter.tube is not Tube.FUTURE:
        raise ValidationError("emitter endpoint must be parameterized in the future tube")
    total_space = tuple(a + b for a, b in zip(receiver.imag.space, emitter.imag.space))
    total_time = receiver.imag.time + emitter.imag.time
    if cone_status(total_space, total_time) is not ConeStatus.INTERIOR:
        raise CausalityError(
            "summed extension of emitter and receiver must be interior to the future "
            "cone; two idealized point endpoints do not form an extended link"
        )
    return ComplexEvent(
        receiver.real - emitter.real, ConeVector(total_space, total_time), Tube.PAST
    )
