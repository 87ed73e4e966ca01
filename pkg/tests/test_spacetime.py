import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pulsebeam import (
    CausalityError,
    ComplexEvent,
    ConeStatus,
    ConeVector,
    RealEvent,
    Tube,
    ValidationError,
    cone_status,
    tube_difference,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def test_cone_status_interior():
    assert cone_status((0, 0, 1), 2.0) is ConeStatus.INTERIOR


def test_cone_status_null_endpoint():
    assert cone_status((0, 0, 0), 0.0) is ConeStatus.NULL_ENDPOINT


def test_cone_status_boundary_is_invalid():
    # the lightlike boundary s = |y| is rejected: the comparison is strict
    assert cone_status((0, 0, 1), 1.0) is ConeStatus.INVALID


def test_cone_status_past_pointing_invalid():
    assert cone_status((0, 0, 1), -2.0) is ConeStatus.INVALID
    assert cone_status((0, 0, 0), 0.5) is ConeStatus.INTERIOR


def test_cone_status_rejects_non_finite():
    with pytest.raises(ValidationError):
        cone_status((0, 0, math.nan), 1.0)
    with pytest.raises(ValidationError):
        cone_status((0, 0, 1), math.inf)


def test_cone_vector_construction():
    v = ConeVector((0, 0, 1), 2.0)
    assert v.is_interior and not v.is_null
    assert v.radius == 1.0
    null = ConeVector.null()
    assert null.is_null and not null.is_interior
    with pytest.raises(ValidationError):
        ConeVector((0, 0, 1), 1.0)


def test_real_event_validation_and_difference():
    a = RealEvent((1, 2, 3), 4.0)
    b = RealEvent((0.5, 2, 1), 1.0)
    d = a - b
    assert d.space == (0.5, 0.0, 2.0) and d.time == 3.0
    with pytest.raises(ValidationError):
        RealEvent((1, 2, math.inf), 0.0)


def test_real_event_shifted():
    moved = RealEvent((1, 0, 0), 2.0).shifted((0.5, -1.0, 0.0, 3.0))
    assert moved.space == (1.5, -1.0, 0.0) and moved.time == 5.0


def test_tube_difference_identity_translation():
    emitter = ComplexEvent(RealEvent((0, 0, 0), 0.0), ConeVector.null(), Tube.FUTURE)
    receiver = ComplexEvent(
        RealEvent((0, 0, 0), 1.0), ConeVector((0, 0, 1), 2.0), Tube.PAST
    )
    z = tube_difference(receiver, emitter)
    assert z.real.space == (0.0, 0.0, 0.0) and z.real.time == 1.0
    assert z.imag.space == (0.0, 0.0, 1.0) and z.imag.time == 2.0
    assert z.tube is Tube.PAST


def test_tube_difference_sums_extensions():
    emitter = ComplexEvent(
        RealEvent((0, 0, 0), 0.0), ConeVector((0, 0, 1), 2.0), Tube.FUTURE
    )
    receiver = ComplexEvent(
        RealEvent((1, 0, 0), 3.0), ConeVector((0, 0, 1), 2.0), Tube.PAST
    )
    z = tube_difference(receiver, emitter)
    assert z.imag.space == (0.0, 0.0, 2.0) and z.imag.time == 4.0


def test_tube_difference_two_null_endpoints_violate_causality():
    emitter = ComplexEvent(RealEvent((0, 0, 0), 0.0), ConeVector.null(), Tube.FUTURE)
    receiver = ComplexEvent(RealEvent((1, 0, 0), 1.0), ConeVector.null(), Tube.PAST)
    with pytest.raises(CausalityError):
        tube_difference(receiver, emitter)


def test_tube_difference_checks_tube_tags():
    future = ComplexEvent(RealEvent((0, 0, 0), 0.0), ConeVector((0, 0, 1), 2.0), Tube.FUTURE)
    with pytest.raises(ValidationError):
        tube_difference(future, future)


def test_cone_sum_convexity_bulk():
    # interior + interior stays interior: convexity of the future cone
    rng = np.random.default_rng(42)
    for _ in range(10_000):
        d1 = rng.normal(size=3)
        d2 = rng.normal(size=3)
        a1, a2 = rng.uniform(0.01, 3.0, size=2)
        m1, m2 = rng.uniform(0.001, 2.0, size=2)
        v1 = ConeVector(tuple(a1 * d1 / np.linalg.norm(d1)), a1 + m1)
        v2 = ConeVector(tuple(a2 * d2 / np.linalg.norm(d2)), a2 + m2)
        assert (v1 + v2).is_interior


@given(
    st.tuples(finite, finite, finite),
    st.floats(min_value=1e-6, max_value=1e6),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_cone_status_scale_invariant(space, margin, factor):
    time = math.sqrt(sum(c * c for c in space)) + margin
    scaled_space = tuple(factor * c for c in space)
    assert cone_status(space, time) is ConeStatus.INTERIOR
    assert cone_status(scaled_space, factor * time) is ConeStatus.INTERIOR
    # and a past-pointing vector stays invalid under positive scaling
    assert cone_status(space, -time) is ConeStatus.INVALID
    assert cone_status(scaled_space, -factor * time) is ConeStatus.INVALID
