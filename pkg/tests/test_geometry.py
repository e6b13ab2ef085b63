import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hyperlap.errors import GeometryError
from hyperlap.geometry import (AmbientPoint, GeodesicPolar, KernelParams,
                               bilinear_form, boost_to_origin, euclidean_inner,
                               from_geodesic_polar, geodesic_distance, geodesic_distance_polar,
                               on_hyperboloid, separation_angle, to_geodesic_polar)

EPS = 2.220446049250313e-16


@st.composite
def polar_points(draw, d, r_max=10.0):
    r = draw(st.floats(0.0, r_max))
    theta = tuple(draw(st.floats(0.0, math.pi)) for _ in range(d - 2))
    phi = draw(st.floats(0.0, 2 * math.pi, exclude_max=True))
    return GeodesicPolar(r, theta, phi)


dims = st.integers(2, 12)
radii = st.sampled_from([0.5, 1.0, 2.0, 10.0])


# ------------------------------------------------------------- parameters


def test_kernel_params_defaults_and_bounds():
    p = KernelParams(3)
    assert (p.R, p.tol_rel, p.rho_min) == (1.0, 1e-10, 1e-6)
    for bad in (1, 13, 2.5):
        with pytest.raises(ValueError):
            KernelParams(bad)
    with pytest.raises(ValueError):
        KernelParams(3, R=0.0)


def test_polar_invariants():
    with pytest.raises(GeometryError):
        GeodesicPolar(-0.1)
    with pytest.raises(GeometryError):
        GeodesicPolar(1.0, (4.0,))
    with pytest.raises(GeometryError):
        GeodesicPolar(1.0, (), 2 * math.pi)
    assert GeodesicPolar(1.0, (0.3, 0.2), 1.0).dim == 4


def test_ambient_point_is_read_only():
    x = AmbientPoint([1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        x.coords[0] = 2.0
    with pytest.raises(GeometryError):
        AmbientPoint([1.0, 0.0])


# ---------------------------------------------------------- inner products


def test_bilinear_form_examples():
    assert bilinear_form((1, 0, 0), (1, 0, 0)) == 1
    c, s = math.cosh(1), math.sinh(1)
    assert abs(bilinear_form((c, s, 0), (c, -s, 0)) - math.cosh(2)) < 1e-15 * math.cosh(2)
    with pytest.raises(GeometryError):
        bilinear_form((1, 0, 0), (1, 0, 0, 0))


@given(st.floats(0, 10), st.floats(0.1, 10))
def test_bilinear_form_on_hyperboloid(r, R):
    x = (R * math.cosh(r), R * math.sinh(r), 0.0)
    assert abs(bilinear_form(x, x) - R * R) <= 4 * EPS * x[0] ** 2


def test_euclidean_inner_examples():
    assert euclidean_inner((1, 0), (0, 1)) == 0
    assert euclidean_inner((1, 2), (3, 4)) == 11
    assert euclidean_inner((2.5,), (2.5,)) == 6.25
    with pytest.raises(GeometryError):
        euclidean_inner((1, 2), (1, 2, 3))


# --------------------------------------------------------------- distance


def test_geodesic_distance_examples():
    p = KernelParams(2)
    assert geodesic_distance((1, 0, 0), (1, 0, 0), p) == 0
    x = (math.cosh(1), math.sinh(1), 0.0)
    assert abs(geodesic_distance(x, (1, 0, 0), p) - 1.0) < 1e-15
    p2 = KernelParams(2, R=2.0)
    x2 = tuple(2 * c for c in x)
    assert abs(geodesic_distance(x2, (2, 0, 0), p2) - 2.0) < 1e-15


def test_geodesic_distance_rejects_off_sheet_points():
    p = KernelParams(2)
    with pytest.raises(GeometryError):
        geodesic_distance((2.0, 0, 0), (1, 0, 0), p)
    with pytest.raises(GeometryError):
        geodesic_distance((-1.0, 0, 0), (1, 0, 0), p)


@pytest.mark.parametrize("r", [1e-9, 1.0, 5.0, 10.0])
def test_geodesic_distance_zero_for_coincident_points(r):
    p = KernelParams(3, R=10.0)
    x = from_geodesic_polar(GeodesicPolar(r, (0.3,), 0.2), p)
    assert geodesic_distance(x, x, p) == 0.0


def test_geodesic_distance_close_points_relative_accuracy():
    p = KernelParams(2)
    a = from_geodesic_polar(GeodesicPolar(1e-8, (), 0.0), p)
    b = from_geodesic_polar(GeodesicPolar(3e-8, (), 0.0), p)
    assert abs(geodesic_distance(a, b, p) - 2e-8) < 1e-20


@settings(max_examples=60)
@given(st.data(), dims, radii)
def test_distance_symmetric_and_scaled(data, d, R):
    p = KernelParams(d, R=R)
    a = data.draw(polar_points(d, 5.0))
    b = data.draw(polar_points(d, 5.0))
    x, y = from_geodesic_polar(a, p), from_geodesic_polar(b, p)
    dxy = geodesic_distance(x, y, p)
    assert dxy == geodesic_distance(y, x, p)
    # rho = d(x, y) / R is the distance between the normalised points
    unit = KernelParams(d)
    rho = geodesic_distance(from_geodesic_polar(a, unit), from_geodesic_polar(b, unit), unit)
    # coordinates carry eps * cosh r absolute rounding
    floor = 8 * EPS * math.cosh(a.r) * math.cosh(b.r)
    assert abs(dxy / R - rho) <= 1e-9 * rho + floor


@settings(max_examples=100)
@given(st.data(), dims)
def test_distance_polar_matches_ambient(data, d):
    p = KernelParams(d)
    a = data.draw(polar_points(d, 4.0))
    b = data.draw(polar_points(d, 4.0))
    ambient = geodesic_distance(from_geodesic_polar(a, p), from_geodesic_polar(b, p), p)
    polar = geodesic_distance_polar(a.r, b.r, separation_angle(a, b), p)
    # the ambient form inherits eps * cosh r cosh r' absolute error in [x, x']
    scale = math.cosh(a.r) * math.cosh(b.r)
    assume(ambient > 1e-3)
    assert abs(ambient - polar) <= 1e-9 * polar + 20 * EPS * scale / math.sinh(polar)


@given(st.floats(0, 10), st.floats(0, 10), radii)
def test_distance_polar_special_angles(r, r2, R):
    p = KernelParams(2, R=R)
    assert math.isclose(geodesic_distance_polar(r, 0.0, 1.3, p), R * r, rel_tol=1e-14, abs_tol=1e-300)
    assert math.isclose(geodesic_distance_polar(r, r2, 0.0, p), R * abs(r - r2), rel_tol=1e-12,
                        abs_tol=1e-14)
    assert math.isclose(geodesic_distance_polar(r, r2, math.pi, p), R * (r + r2), rel_tol=1e-12,
                        abs_tol=1e-14)


# ---------------------------------------------------------- polar coords


def test_from_polar_examples():
    p = KernelParams(4, R=3.0)
    x = from_geodesic_polar(GeodesicPolar(0.0, (1.0, 2.0), 0.5), p)
    assert np.array_equal(x.coords, [3.0, 0, 0, 0, 0])
    x = from_geodesic_polar(GeodesicPolar(1.0, (), 0.0), KernelParams(2))
    assert np.allclose(x.coords, [math.cosh(1), math.sinh(1), 0.0], rtol=0, atol=1e-16)
    x = from_geodesic_polar(GeodesicPolar(1.0, (), math.pi / 2), KernelParams(2))
    assert abs(x[1]) < 1e-16 and abs(x[2] - math.sinh(1)) < 1e-15


@given(st.data(), dims, radii)
def test_from_polar_lies_on_hyperboloid(data, d, R):
    pt = data.draw(polar_points(d))
    x = from_geodesic_polar(pt, KernelParams(d, R=R))
    residual = abs(bilinear_form(x, x) - R * R)
    # cosh^2 - sinh^2 = 1 holds to about eps cosh^2 r in floating point
    assert residual <= 8 * EPS * R * R * math.cosh(pt.r) ** 2
    if pt.r <= 1.0:
        assert residual < 1e-12 * R * R
    assert on_hyperboloid(x, R, 1e-12)


def test_to_polar_examples():
    p = KernelParams(3)
    pt = to_geodesic_polar((1, 0, 0, 0), p)
    assert pt.r == 0 and pt.theta == (0.0,) and pt.phi == 0.0
    pt = to_geodesic_polar((math.cosh(2), math.sinh(2), 0, 0), p)
    assert abs(pt.r - 2) < 1e-15 and pt.theta == (0.0,)
    with pytest.raises(GeometryError):
        to_geodesic_polar((0.5, 0, 0, 0), p)


@settings(max_examples=200)
@given(st.data(), dims, radii)
def test_polar_round_trip(data, d, R):
    p = KernelParams(d, R=R)
    pt = data.draw(polar_points(d, 8.0))
    # at the pole angles are reset to 0 by convention
    assume(pt.r > p.rho_min)
    x = from_geodesic_polar(pt, p)
    back = from_geodesic_polar(to_geodesic_polar(x, p), p)
    assert np.max(np.abs(back.coords - x.coords)) <= 1e-10 * np.max(np.abs(x.coords))


# --------------------------------------------------------- separation angle


def test_separation_angle_examples():
    a = GeodesicPolar(1.0, (0.4, 1.1), 2.0)
    assert separation_angle(a, a) < 1e-7
    b = GeodesicPolar(1.0, (math.pi / 2,), 0.0)
    c = GeodesicPolar(2.0, (math.pi / 2,), math.pi)
    assert abs(separation_angle(b, c) - math.pi) < 1e-15
    with pytest.raises(GeometryError):
        separation_angle(a, b)


@settings(max_examples=100)
@given(st.data(), dims)
def test_separation_angle_matches_ambient_angle(data, d):
    a = data.draw(polar_points(d))
    b = data.draw(polar_points(d))
    assume(a.r > 0.1 and b.r > 0.1)
    p = KernelParams(d)
    u = from_geodesic_polar(a, p).coords[1:]
    v = from_geodesic_polar(b, p).coords[1:]
    cos = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    assert abs(math.cos(separation_angle(a, b)) - cos) < 1e-12


@given(st.data(), st.integers(3, 12))
def test_antipodal_directions(data, d):
    a = data.draw(polar_points(d))
    anti = GeodesicPolar(1.0, tuple(math.pi - t for t in a.theta), (a.phi + math.pi) % (2 * math.pi))
    assert abs(separation_angle(a, anti) - math.pi) < 1e-6


# ----------------------------------------------------------------- boosts


def test_boost_of_origin_is_identity():
    T = boost_to_origin((2.0, 0, 0, 0), R=2.0)
    assert np.array_equal(T.matrix, np.eye(4))
    assert T.rapidity == 0.0


def test_boost_known_rapidity():
    x = (math.cosh(1), math.sinh(1), 0.0)
    T = boost_to_origin(x)
    assert abs(T.rapidity - 1.0) < 1e-15
    assert np.allclose(T(x).coords, [1, 0, 0], atol=1e-15)


@settings(max_examples=100)
@given(st.data(), dims, radii)
def test_boost_is_isometry(data, d, R):
    p = KernelParams(d, R=R)
    x = from_geodesic_polar(data.draw(polar_points(d, 3.0)), p)
    y = from_geodesic_polar(data.draw(polar_points(d, 3.0)), p)
    z = from_geodesic_polar(data.draw(polar_points(d, 3.0)), p)
    T = boost_to_origin(x, R)
    origin = np.zeros(d + 1)
    origin[0] = R
    assert np.max(np.abs(T(x).coords - origin)) <= 1e-10 * R
    for a, b in ((y, z), (x, y), (y, y)):
        ref = bilinear_form(a, b)
        assert abs(bilinear_form(T(a), T(b)) - ref) <= 1e-10 * abs(ref)
    assert abs(np.linalg.det(T.matrix) - 1.0) < 1e-8


def test_boost_rejects_lower_sheet():
    with pytest.raises(GeometryError):
        boost_to_origin((-1.0, 0, 0))
