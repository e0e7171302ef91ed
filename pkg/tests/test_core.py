import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sphgeom import core
from sphgeom.errors import (CoincidentCircles, DegenerateInput, InvalidDistance,
                            PointNotOnCircle, RangeError)

from conftest import separated_pair, unit_vectors
from oracles import acos_dist, geo

X, Y, Z = np.eye(3)


def test_geo_axes():
    assert np.allclose(core.from_geo(core.GeoCoord(0.0, 0.0)), X)
    for lon in (-3.0, 0.0, 1.0, math.pi):
        assert np.allclose(core.from_geo(core.GeoCoord(math.pi / 2, lon)), Z)


def test_geo_ranges():
    with pytest.raises(RangeError):
        core.GeoCoord(2.0, 0.0)
    with pytest.raises(RangeError):
        core.GeoCoord(0.0, -math.pi)
    assert core.wrap_lon(-math.pi) == pytest.approx(math.pi)
    assert core.wrap_lon(3 * math.pi / 2) == pytest.approx(-math.pi / 2)


def test_dist_examples():
    assert core.dist(X, X) == 0.0
    assert core.dist(X, -X) == pytest.approx(math.pi, abs=1e-15)
    assert core.dist(X, Y) == pytest.approx(math.pi / 2, abs=1e-15)


def test_dist_small_angles_keep_precision():
    # arccos loses half the digits here
    p = geo(0.0, 0.0)
    q = geo(0.0, 1e-9)
    assert core.dist(p, q) == pytest.approx(1e-9, rel=1e-6)


def test_antipode():
    assert np.allclose(core.antipode(Z), -Z)
    p = core.spoint(1, 2, 3)
    assert np.allclose(core.antipode(core.antipode(p)), p)
    assert core.dist(p, core.antipode(p)) == pytest.approx(math.pi)


def test_spoint_rejects_zero():
    with pytest.raises(DegenerateInput):
        core.spoint(0, 0, 0)


def test_great_circle_through_examples():
    g = core.great_circle_through(X, Y)
    assert abs(abs(g.pole @ Z) - 1) < 1e-15
    with pytest.raises(DegenerateInput):
        core.great_circle_through(X, -X)


def test_intersect_equator_meridian():
    eq = core.GreatCircle(Z)
    mer = core.GreatCircle(Y)   # the meridian through lon 0 and lon pi
    p, q = core.intersect(eq, mer)
    assert np.allclose(p, -q)
    assert {round(float(p @ X)), round(float(q @ X))} == {1, -1}
    for g in (eq, mer):
        assert g.contains(p, 1e-12) and g.contains(q, 1e-12)
    with pytest.raises(CoincidentCircles):
        core.intersect(eq, core.GreatCircle(-Z))


def test_midpoint_examples():
    assert np.allclose(core.midpoint(X, Y), np.array([1, 1, 0]) / math.sqrt(2))
    p = core.spoint(0.2, -0.4, 0.9)
    assert np.allclose(core.midpoint(p, p), p)


def test_perpendicular_at():
    eq = core.GreatCircle(Z)
    g = core.perpendicular_at(eq, X)
    assert g.contains(Z) and g.contains(X)     # the meridian at lon 0
    assert abs(g.pole @ eq.pole) < 1e-15
    with pytest.raises(PointNotOnCircle):
        core.perpendicular_at(eq, Z)


def test_equidistant_circles():
    c1, c2 = core.equidistant_circles(core.GreatCircle(Z), math.pi / 4)
    assert c1.radius == pytest.approx(math.pi / 4)
    assert abs(c1.pole @ c2.pole + 1) < 1e-15
    for p in c1.sample(16):
        assert math.asin(p @ Z) == pytest.approx(math.pi / 4, abs=1e-12)
    near, _ = core.equidistant_circles(core.GreatCircle(Z), 1e-9)
    assert near.radius == pytest.approx(math.pi / 2, abs=1e-8)
    with pytest.raises(InvalidDistance):
        core.equidistant_circles(core.GreatCircle(Z), 0.0)


def test_interior_angle_examples():
    assert core.interior_angle(Z, X, Y) == pytest.approx(math.pi / 2)
    assert core.interior_angle(Z, X, X) == 0.0
    assert core.interior_angle(X, geo(0, -0.5), geo(0, 0.7)) == pytest.approx(math.pi)


def test_small_circle_canonical():
    c = core.SmallCircle(Z, 2.0)
    assert np.allclose(c.pole, -Z) and c.radius == pytest.approx(math.pi - 2.0)
    with pytest.raises(RangeError):
        core.SmallCircle(Z, 0.0)


@given(unit_vectors(), unit_vectors())
def test_dist_matches_arccos_and_is_symmetric(p, q):
    assert core.dist(p, q) == core.dist(q, p)
    assert core.dist(p, q) == pytest.approx(acos_dist(p, q), abs=1e-7)


@given(unit_vectors(), unit_vectors(), unit_vectors())
def test_triangle_inequality(p, q, r):
    assert core.dist(p, r) <= core.dist(p, q) + core.dist(q, r) + 1e-12


@given(unit_vectors())
def test_geo_roundtrip(p):
    g = core.to_geo(p)
    assert -math.pi < g.lon <= math.pi
    assert np.allclose(core.from_geo(g), p, atol=1e-14)


@given(separated_pair())
def test_midpoint_equidistant(pq):
    p, q = pq
    m = core.midpoint(p, q)
    assert core.dist(m, p) == pytest.approx(core.dist(m, q), abs=1e-12)
    assert core.dist(m, p) == pytest.approx(core.dist(p, q) / 2, abs=1e-12)


@given(separated_pair(), st.floats(0.0, 1.0))
def test_slerp_stays_on_arc(pq, t):
    p, q = pq
    s = core.slerp(p, q, t)
    assert core.dist(p, s) == pytest.approx(t * core.dist(p, q), abs=1e-12)
    assert core.great_circle_through(p, q).contains(s, 1e-12)


@given(unit_vectors(), unit_vectors())
def test_intersections_lie_on_both(n1, n2):
    g1, g2 = core.GreatCircle(n1), core.GreatCircle(n2)
    if g1.same_as(g2, 1e-9):
        return
    for p in core.intersect(g1, g2):
        assert g1.contains(p, 1e-12) and g2.contains(p, 1e-12)


@given(unit_vectors(), st.floats(0.05, 1.5), st.floats(-math.pi, math.pi))
def test_equidistant_points_at_distance(n, d, t):
    g = core.GreatCircle(n)
    for c in core.equidistant_circles(g, d):
        p = c.point(t)
        assert core.distance_to_great_circle(g, p) == pytest.approx(d, abs=1e-12)


@given(unit_vectors(), st.floats(0.1, 3.0), st.floats(-3.0, 3.0))
def test_small_circle_point_parameter_roundtrip(n, r, t):
    c = core.SmallCircle(n, r)
    p = c.point(t)
    assert abs(c.residual(p)) < 1e-12
    assert np.allclose(c.point(c.parameter(p)), p, atol=1e-12)


@given(unit_vectors())
def test_tangent_basis_is_right_handed(n):
    u, w = core.tangent_basis(n)
    assert np.allclose(np.cross(u, w), n / np.linalg.norm(n), atol=1e-14)
    assert abs(u @ n) < 1e-14 and abs(w @ n) < 1e-14
