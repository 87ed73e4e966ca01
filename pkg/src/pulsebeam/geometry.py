"""Complexified radial distance and its branch structure.

For a real offset x and a fixed nonzero extension y, the complexified
squared distance is

    (x - iy) . (x - iy) = r^2 - a^2 - 2 i a x3,

with r = |x|, a = |y| and x3 the component of x along y.  Its square root
is taken on the branch with nonnegative real part and written p - iq, so

    p^2 - q^2 = r^2 - a^2,    p q = a x3,    0 <= p <= r,    |q| <= a,

with equality in the bounds exactly when x is parallel to y.  Level sets
of p are oblate spheroids, level sets of q one-sheeted hyperboloids, and
the two families share the focal circle r = a, x3 = 0 where the root
vanishes.  The root is double-valued around that circle; it is made
single-valued by cutting along the spanning disk r <= a, x3 = 0, across
which it flips sign.  On the cut itself this module returns the limit
from the x3 -> 0+ side, i.e. p = 0, q = +sqrt(a^2 - r^2), and flags the
point so callers can avoid relying on cut values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DegenerateExtensionError, UndefinedDirectionError, ValidationError
from .spacetime import as_vec3, dot3, norm3

# Guard radius around the branch circle, relative to the extension radius.
# The fields diverge like 1/|p - iq| there; callers get a flag, not a NaN.
NEAR_CIRCLE_REL_TOL = 1e-9


class BranchRegion(Enum):
    REGULAR = "regular"
    ON_CUT = "on_cut"
    ON_CIRCLE = "on_circle"


@dataclass(frozen=True)
class ComplexDistance:
    """The pair (p, q) with complex radial coordinate p - iq, plus branch flags."""

    p: float
    q: float
    on_cut: bool = False
    near_circle: bool = False

    @property
    def value(self) -> complex:
        return complex(self.p, -self.q)

    @property
    def magnitude(self) -> float:
        return math.hypot(self.p, self.q)


@dataclass(frozen=True)
class SpheroidalCoords:
    """Oblate-spheroidal coordinates (p, q, phi) of a point relative to an extension axis.

    rho is the cylindrical radius orthogonal to the axis.  Off the axis and
    off the cut the coordinates satisfy

        rho^2/(a^2 + p^2) + x3^2/p^2 = 1     (oblate spheroid through the point)
        rho^2/(a^2 - q^2) - x3^2/q^2 = 1     (one-sheeted hyperboloid through it)
    """

    p: float
    q: float
    phi: float
    rho: float


def complex_distance(
    x: Sequence[float], y: Sequence[float], near_circle_tol: float | None = None
) -> ComplexDistance:
    """Complex radial coordinate of x relative to the extension y != 0.

    Returns the square root of r^2 - a^2 - 2 i a x3 on the branch with
    nonnegative real part.  On the cut disk (x3 = 0, r < a) the value is
    the limit from the x3 -> 0+ side and on_cut is set.  near_circle is
    set when |p - iq| falls below near_circle_tol (default 1e-9 * a).

    A zero extension is rejected: the purely real distance is not a
    degenerate case of this routine but a separate code path in the
    field evaluators.
    """
    x = as_vec3(x, "observation offset")
    y = as_vec3(y, "extension vector")
    a = norm3(y)
    if a == 0.0:
        raise DegenerateExtensionError(
            "extension vector must be nonzero; the real-distance case is served "
            "by a separate path"
        )
    if near_circle_tol is None:
        near_circle_tol = NEAR_CIRCLE_REL_TOL * a
    r = norm3(x)
    x3 = dot3(x, y) / a
    if x3 == 0.0 and r < a:
        p, q = 0.0, math.sqrt(a * a - r * r)
        on_cut = True
    else:
        root = cmath.sqrt(complex(r * r - a * a, -2.0 * a * x3))
        p, q = root.real, -root.imag
        on_cut = False
    near = math.hypot(p, q) < near_circle_tol
    return ComplexDistance(p, q, on_cut=on_cut, near_circle=near)


def _transverse_frame(yhat: Sequence[float]):
    """Deterministic right-handed orthonormal pair completing yhat."""
    k = min(range(3), key=lambda i: abs(yhat[i]))
    ref = [0.0, 0.0, 0.0]
    ref[k] = 1.0
    proj = dot3(ref, yhat)
    e1 = tuple(ref[i] - proj * yhat[i] for i in range(3))
    n1 = norm3(e1)
    e1 = tuple(v / n1 for v in e1)
    e2 = (
        yhat[1] * e1[2] - yhat[2] * e1[1],
        yhat[2] * e1[0] - yhat[0] * e1[2],
        yhat[0] * e1[1] - yhat[1] * e1[0],
    )
    return e1, e2


def spheroidal_coords(x: Sequence[float], y: Sequence[float]) -> SpheroidalCoords:
    """Oblate-spheroidal coordinates of x relative to the axis of y != 0.

    phi is the azimuth of the component of x orthogonal to y, measured in a
    deterministic transverse frame, and 0 when x sits on the axis.
    """
    dist = complex_distance(x, y)
    x = as_vec3(x, "observation offset")
    y = as_vec3(y, "extension vector")
    a = norm3(y)
    yhat = tuple(v / a for v in y)
    r = norm3(x)
    x3 = dot3(x, yhat)
    rho = math.sqrt(max(r * r - x3 * x3, 0.0))
    if rho == 0.0:
        phi = 0.0
    else:
        e1, e2 = _transverse_frame(yhat)
        phi = math.atan2(dot3(x, e2), dot3(x, e1))
    return SpheroidalCoords(p=dist.p, q=dist.q, phi=phi, rho=rho)


def branch_classify(x: Sequence[float], y: Sequence[float], tol: float) -> BranchRegion:
    """Classify a point against the branch circle and the cut disk.

    ON_CIRCLE when |p - iq| < tol (i.e. r ~ a and x3 ~ 0 jointly),
    ON_CUT when the axis component vanishes within tol and r < a,
    REGULAR otherwise.  tol is a length and must be nonnegative.
    """
    tol = float(tol)
    if not (tol >= 0.0) or not math.isfinite(tol):
        raise ValidationError(f"classification tolerance must be finite and >= 0, got {tol}")
    x = as_vec3(x, "observation offset")
    y = as_vec3(y, "extension vector")
    a = norm3(y)
    if a == 0.0:
        raise DegenerateExtensionError("extension vector must be nonzero")
    r = norm3(x)
    x3 = dot3(x, y) / a
    dist = complex_distance(x, y)
    if dist.magnitude < tol or dist.magnitude == 0.0:
        return BranchRegion.ON_CIRCLE
    if abs(x3) < tol and r < a:
        return BranchRegion.ON_CUT
    if x3 == 0.0 and r < a:
        return BranchRegion.ON_CUT
    return BranchRegion.REGULAR


def far_zone_distance(x: Sequence[float], y: Sequence[float]) -> complex:
    """Leading far-zone form r - i a cos(theta) with cos(theta) = xhat . yhat.

    No accuracy is guaranteed unless r >> a; the deviation from the exact
    complex distance scales as a^2/r at fixed direction.
    """
    x = as_vec3(x, "observation offset")
    y = as_vec3(y, "extension vector")
    a = norm3(y)
    if a == 0.0:
        raise DegenerateExtensionError("extension vector must be nonzero")
    r = norm3(x)
    if r == 0.0:
        raise UndefinedDirectionError(
            "far-zone distance needs a direction; the observation offset is zero"
        )
    cos_theta = dot3(x, y) / (r * a)
    return complex(r, -a * cos_theta)


def segment_crosses_cut(
    p0: Sequence[float], p1: Sequence[float], y: Sequence[float]
) -> bool:
    """True when the straight segment p0 -> p1 meets the branch-cut disk of y."""
    p0 = as_vec3(p0, "segment start")
    p1 = as_vec3(p1, "segment end")
    y = as_vec3(y, "extension vector")
    a = norm3(y)
    if a == 0.0:
        raise DegenerateExtensionError("extension vector must be nonzero")
    s0 = dot3(p0, y) / a
    s1 = dot3(p1, y) / a
    if s0 == 0.0 and s1 == 0.0:
        # Segment lies in the cut plane: meets the disk iff it comes within a
        # of the origin.
        d = tuple(b - c for b, c in zip(p1, p0))
        dd = dot3(d, d)
        lam = 0.0 if dd == 0.0 else min(max(-dot3(p0, d) / dd, 0.0), 1.0)
        closest = tuple(c + lam * e for c, e in zip(p0, d))
        return norm3(closest) <= a
    if s0 == 0.0:
        return norm3(p0) <= a
    if s1 == 0.0:
        return norm3(p1) <= a
    if (s0 > 0.0) == (s1 > 0.0):
        return False
    lam = s0 / (s0 - s1)
    crossing = tuple(c + lam * (e - c) for c, e in zip(p0, p1))
    return norm3(crossing) <= a
