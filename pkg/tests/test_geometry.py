import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pulsebeam import (
    BranchRegion,
    DegenerateExtensionError,
    UndefinedDirectionError,
    ValidationError,
    branch_classify,
    complex_distance,
    far_zone_distance,
    spheroidal_coords,
)
from pulsebeam.geometry import segment_crosses_cut


def test_on_axis_value():
    d = complex_distance((0, 0, 3), (0, 0, 1))
    assert d.p == pytest.approx(3.0, abs=1e-15)
    assert d.q == pytest.approx(1.0, abs=1e-15)
    assert not d.on_cut and not d.near_circle


def test_disk_center_uses_positive_side_limit():
    d = complex_distance((0, 0, 0), (0, 0, 1))
    assert d.p == 0.0
    assert d.q == 1.0
    assert d.on_cut


def test_generic_point_against_principal_root_oracle():
    # oracle: principal square root of 1 - 2i by polar decomposition,
    # p = sqrt((sqrt(5)+1)/2), q = sqrt((sqrt(5)-1)/2)
    d = complex_distance((1, 0, 1), (0, 0, 1))
    assert d.p == pytest.approx(1.272019649514069, rel=1e-15)
    assert d.q == pytest.approx(0.7861513777574233, rel=1e-15)
    assert d.p**2 - d.q**2 == pytest.approx(1.0, abs=1e-14)
    assert d.p * d.q == pytest.approx(1.0, abs=1e-14)


def test_zero_extension_rejected():
    with pytest.raises(DegenerateExtensionError):
        complex_distance((1, 0, 0), (0, 0, 0))


def test_sign_flip_across_cut():
    # crossing the disk flips the root's sign
    for delta in (1e-3, 1e-6, 1e-9):
        above = complex_distance((0.5, 0, delta), (0, 0, 1))
        below = complex_distance((0.5, 0, -delta), (0, 0, 1))
        assert above.q > 0 > below.q
        assert above.q == pytest.approx(-below.q, rel=1e-12)
        assert above.p == pytest.approx(below.p, rel=1e-9, abs=1e-12)
    # and the on-cut value is the limit from the positive side
    exact = complex_distance((0.5, 0, 0.0), (0, 0, 1))
    assert exact.q == pytest.approx(math.sqrt(1 - 0.25), rel=1e-12)


def test_near_circle_flag_with_custom_tolerance():
    d = complex_distance((1.0000001, 0, 0), (0, 0, 1), near_circle_tol=1e-3)
    assert d.near_circle
    d = complex_distance((1.0000001, 0, 0), (0, 0, 1))
    assert not d.near_circle  # default guard is 1e-9 * a


def test_spheroidal_on_axis():
    sc = spheroidal_coords((0, 0, 3), (0, 0, 1))
    assert sc.rho == 0.0
    assert sc.phi == 0.0
    assert sc.p == pytest.approx(3.0)


def test_spheroidal_on_branch_circle():
    sc = spheroidal_coords((1, 0, 0), (0, 0, 1))
    assert sc.rho == pytest.approx(1.0)
    assert sc.p == 0.0 and sc.q == 0.0


def test_spheroidal_surface_identities_direct_substitution():
    sc = spheroidal_coords((1, 0, 1), (0, 0, 1))
    a = 1.0
    x3 = 1.0
    assert sc.rho == pytest.approx(1.0, rel=1e-15)
    res1 = sc.rho**2 / (a**2 + sc.p**2) + x3**2 / sc.p**2 - 1.0
    res2 = sc.rho**2 / (a**2 - sc.q**2) - x3**2 / sc.q**2 - 1.0
    assert abs(res1) < 1e-10
    assert abs(res2) < 1e-10


def test_spheroidal_azimuth_is_deterministic():
    a = spheroidal_coords((1, 0, 1), (0, 0, 1))
    b = spheroidal_coords((0, 1, 1), (0, 0, 1))
    assert abs(abs(a.phi - b.phi) - math.pi / 2) < 1e-12


def test_branch_classify_examples():
    assert branch_classify((1, 0, 0), (0, 0, 1), 1e-9) is BranchRegion.ON_CIRCLE
    assert branch_classify((0.5, 0, 0), (0, 0, 1), 1e-9) is BranchRegion.ON_CUT
    assert branch_classify((0, 0, 5), (0, 0, 1), 1e-9) is BranchRegion.REGULAR
    with pytest.raises(ValidationError):
        branch_classify((1, 0, 0), (0, 0, 1), -1.0)


def test_far_zone_distance_values():
    assert far_zone_distance((0, 0, 100), (0, 0, 1)) == pytest.approx(100 - 1j)
    assert far_zone_distance((100, 0, 0), (0, 0, 1)) == pytest.approx(100 + 0j)
    with pytest.raises(UndefinedDirectionError):
        far_zone_distance((0, 0, 0), (0, 0, 1))


def test_far_zone_exact_on_axis():
    # on the axis the expansion terminates: r~ = x3 - i a exactly
    exact = complex_distance((0, 0, 10), (0, 0, 1)).value
    assert abs(exact - far_zone_distance((0, 0, 10), (0, 0, 1))) < 1e-13


def test_far_zone_error_magnitude_and_scaling():
    # oracle: |complex_distance - far_zone| at 60 degrees off axis, a = 1;
    # the deviation is a^2 sin^2(theta)/(2r) to leading order
    theta = math.pi / 3
    y = (0, 0, 1)

    def err(r):
        x = (r * math.sin(theta), 0.0, r * math.cos(theta))
        return abs(complex_distance(x, y).value - far_zone_distance(x, y))

    assert err(10.0) == pytest.approx(0.037523171636310082, rel=1e-12)
    for r in (50.0, 100.0):
        ratio = err(2 * r) / err(r)
        assert 0.4 <= ratio <= 0.6


@settings(max_examples=200, deadline=None)
@given(
    st.tuples(*[st.floats(-5, 5) for _ in range(3)]),
    st.tuples(*[st.floats(-2, 2) for _ in range(3)]),
)
def test_defining_identities_property(x, y):
    a = math.hypot(*y)
    r = math.hypot(*x)
    if a < 1e-3:
        return
    x3 = sum(c * d for c, d in zip(x, y)) / a
    d = complex_distance(x, y)
    assert abs((d.p**2 - d.q**2) - (r * r - a * a)) <= 1e-12 * (r + a) ** 2
    assert abs(d.p * d.q - a * x3) <= 1e-12 * max(a * r, 1e-12)
    assert d.p <= r * (1 + 1e-13) + 1e-300
    assert abs(d.q) <= a * (1 + 1e-13)


def test_bounds_saturate_only_on_axis():
    rng = np.random.default_rng(7)
    for _ in range(500):
        yhat = rng.normal(size=3)
        yhat /= np.linalg.norm(yhat)
        a = float(rng.uniform(0.2, 2.0))
        lam = float(rng.uniform(-3.0, 3.0))
        on_axis = complex_distance(tuple(lam * yhat), tuple(a * yhat))
        assert abs(on_axis.p - abs(lam)) <= 1e-12 * max(abs(lam), a)
        assert abs(abs(on_axis.q) - a) <= 1e-12 * a
        perp = np.cross(yhat, rng.normal(size=3))
        perp /= np.linalg.norm(perp)
        oblique = complex_distance(tuple(lam * yhat + 0.7 * perp), tuple(a * yhat))
        r = math.hypot(lam, 0.7)
        assert r - oblique.p > 0.0
        assert a - abs(oblique.q) > 0.0


def test_segment_crosses_cut():
    y = (0, 0, 1)
    assert segment_crosses_cut((0.3, 0, -0.01), (0.3, 0, 0.01), y)
    assert not segment_crosses_cut((2.0, 0, -0.01), (2.0, 0, 0.01), y)
    assert not segment_crosses_cut((0.3, 0, 0.01), (0.3, 0, 0.03), y)
    # in-plane segment meeting the disk
    assert segment_crosses_cut((-2, 0, 0), (2, 0, 0), y)
    assert not segment_crosses_cut((-2, 3, 0), (2, 3, 0), y)
