"""Beam-shaped wave fields driven by an arbitrary signal.

Convolving the extended impulse field with a driving signal g0 gives the
beam wavelet

    W = g(tau - rt) / (4 pi rt),

with g the analytic signal of g0 and rt = p - iq the complex radial
coordinate.  For an interior extension the argument of g stays a distance
of at least s - a below the real axis, so W is finite and smooth away
from the branch circle and solves the homogeneous wave equation off the
cut disk.  Two testable facts about its singular structure are exposed
here: the finite-difference wave residual vanishes at second order away
from the cut, and the boundary-value jump across real spacetime recovers
the retarded field g0(t - r) / (4 pi r) of an ideal point source.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AccuracyError,
    CausalityError,
    DomainError,
    NonAnalyticPointError,
    SingularityProximityError,
    StencilPlacementError,
)
from .geometry import (
    NEAR_CIRCLE_REL_TOL,
    BranchRegion,
    branch_classify,
    complex_distance,
    segment_crosses_cut,
)
from .signals import (
    DEFAULT_EPS_LADDER,
    DEFAULT_REL_TOL,
    DrivingSignal,
    analytic_signal,
    richardson_limit,
    validate_eps_ladder,
)
from .spacetime import ConeVector, RealEvent, as_scalar, dot3, norm3

_FOUR_PI = 4.0 * math.pi


def _radial_root(x_space: Sequence[float], ext_space: Sequence[float]) -> complex:
    """sqrt((x - i*ext).(x - i*ext)) on the branch with nonnegative real part.

    Unlike geometry.complex_distance this accepts a zero extension (purely
    real distance) and sign-flipped, epsilon-scaled extensions, which the
    boundary-jump ladder needs.  On the cut disk the value is the limit
    from the positive side of the axis component.
    """
    r2 = dot3(x_space, x_space)
    a2 = dot3(ext_space, ext_space)
    cross = dot3(x_space, ext_space)
    if a2 == 0.0:
        return complex(math.sqrt(r2), 0.0)
    if cross == 0.0 and r2 < a2:
        return complex(0.0, -math.sqrt(a2 - r2))
    return cmath.sqrt(complex(r2 - a2, -2.0 * cross))


def _kernel(
    signal: DrivingSignal,
    x: RealEvent,
    ext_space: Sequence[float],
    ext_time: float,
    rel_tol: float,
) -> complex:
    rt = _radial_root(x.space, ext_space)
    if rt == 0:
        raise SingularityProximityError("field evaluated on the branch circle")
    tau = complex(x.time, -ext_time)
    return analytic_signal(signal, tau - rt, rel_tol=rel_tol) / (_FOUR_PI * rt)


def wavelet_eval(
    signal: DrivingSignal,
    x: RealEvent,
    y: ConeVector,
    rel_tol: float = DEFAULT_REL_TOL,
    near_circle_tol: float | None = None,
) -> complex:
    """Beam wavelet g(tau - rt)/(4 pi rt) at the real event x for extension y.

    y must be interior.  When its space part vanishes the radial coordinate
    is the plain Euclidean distance and only r = 0 is singular; otherwise
    evaluation near the branch circle is refused with the guard tolerance
    inherited from the geometry module.
    """
    if not y.is_interior:
        raise CausalityError("extension must be interior to the future cone (lag > radius)")
    a = y.radius
    if a > 0.0:
        dist = complex_distance(x.space, y.space, near_circle_tol=near_circle_tol)
        if dist.near_circle:
            raise SingularityProximityError(
                "evaluation point is within the guard distance of the branch circle"
            )
        rt = dist.value
    else:
        r = norm3(x.space)
        if r == 0.0:
            raise SingularityProximityError(
                "a purely temporal extension leaves the field singular at the spatial origin"
            )
        rt = complex(r, 0.0)
    tau = complex(x.time, -y.time)
    return analytic_signal(signal, tau - rt, rel_tol=rel_tol) / (_FOUR_PI * rt)


@dataclass(frozen=True)
class WaveletField:
    """A beam wavelet bound to one driving signal and one extension; callable on events."""

    signal: DrivingSignal
    extent: ConeVector

    def __post_init__(self):
        if not self.extent.is_interior:
            raise CausalityError("extension must be interior to the future cone")

    def __call__(self, event: RealEvent) -> complex:
        return wavelet_eval(self.signal, event, self.extent)


def boundary_jump(
    signal: DrivingSignal,
    x: RealEvent,
    y: ConeVector,
    eps_list: Sequence[float] = DEFAULT_EPS_LADDER,
    rel_tol: float = DEFAULT_REL_TOL,
) -> complex:
    """Jump of the wavelet between its two boundary values across real spacetime.

    The field is evaluated with the extension scaled to +eps*y (the side
    that continues the reception-type parameterization) and to -eps*y (the
    emission-type side), and the difference is extrapolated to eps -> 0+.
    For a signal continuous at t - r the limit equals g0(t - r)/(4 pi r),
    the retarded field of an ideal point source.
    """
    if not y.is_interior:
        raise CausalityError("extension must be interior to the future cone")
    eps = validate_eps_ladder(eps_list)
    r = x.radius
    if r == 0.0:
        raise DomainError("the boundary jump is undefined at the spatial origin")
    if eps[0] * y.radius >= r:
        raise DomainError(
            "largest ladder epsilon times the extension radius must stay below |x|; "
            f"got {eps[0]:g} * {y.radius:g} >= {r:g}"
        )
    if not signal.is_continuous_at(x.time - r):
        raise NonAnalyticPointError(
            f"driving signal is not continuous at the retarded time {x.time - r:g}"
        )
    samples = []
    for e in eps:
        plus = _kernel(signal, x, tuple(e * v for v in y.space), e * y.time, rel_tol)
        minus = _kernel(signal, x, tuple(-e * v for v in y.space), -e * y.time, rel_tol)
        samples.append(plus - minus)
    limit, est = richardson_limit(eps, samples)
    scale = max(signal.peak_scale() / (_FOUR_PI * r), 1e-30)
    if est > 1e-6 * abs(limit) + 1e-9 * scale:
        raise AccuracyError(
            f"boundary-jump extrapolation did not converge: estimate {est:.3e}",
            value=limit,
            estimate=est,
        )
    return limit


def _check_stencil(x: RealEvent, y: ConeVector, h: float, guard_tol: float) -> None:
    points = [x.space]
    for axis in range(3):
        for sign in (-1.0, 1.0):
            shifted = list(x.space)
            shifted[axis] += sign * h
            points.append(tuple(shifted))
    if y.radius == 0.0:
        if any(norm3(point) == 0.0 for point in points):
            raise StencilPlacementError("stencil touches the spatial origin")
        return
    for point in points:
        if branch_classify(point, y.space, guard_tol) is not BranchRegion.REGULAR:
            raise StencilPlacementError(
                "finite-difference stencil touches the branch cut or circle"
            )
    for axis in range(3):
        lo = list(x.space)
        hi = list(x.space)
        lo[axis] -= h
        hi[axis] += h
        if segment_crosses_cut(tuple(lo), tuple(hi), y.space):
            raise StencilPlacementError("finite-difference stencil crosses the branch cut")


def wave_residual(
    signal: DrivingSignal,
    x: RealEvent,
    y: ConeVector,
    h: float,
    guard: bool = True,
    rel_tol: float = DEFAULT_REL_TOL,
    near_circle_tol: float | None = None,
) -> complex:
    """Central-difference wave-operator residual d_tt W - Lap W with step h.

    Away from the cut the wavelet is an exact solution, so the residual is
    pure truncation error and shrinks as O(h^2).  With guard=True the
    full spatial stencil must stay regular and off the cut; guard=False
    permits diagnostic evaluation near the singular support, where the
    residual spikes.
    """
    h = as_scalar(h, "stencil step")
    if h <= 0.0:
        raise DomainError(f"stencil step must be positive, got {h}")
    if guard:
        tol = near_circle_tol
        if tol is None:
            tol = NEAR_CIRCLE_REL_TOL * max(y.radius, 1.0)
        _check_stencil(x, y, h, tol)

    def w(space, time):
        return wavelet_eval(
            signal, RealEvent(space, time), y, rel_tol=rel_tol, near_circle_tol=near_circle_tol
        )

    center = w(x.space, x.time)
    time_second = w(x.space, x.time + h) - 2.0 * center + w(x.space, x.time - h)
    laplacian = 0j
    for axis in range(3):
        lo = list(x.space)
        hi = list(x.space)
        lo[axis] -= h
        hi[axis] += h
        laplacian += w(tuple(hi), x.time) - 2.0 * center + w(tuple(lo), x.time)
    return (time_second - laplacian) / (h * h)
