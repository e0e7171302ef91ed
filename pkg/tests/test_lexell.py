import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sphgeom import core, lexell
from sphgeom.errors import DegenerateBase, InvalidArea, NotConcyclic

from conftest import separated_pair, unit_vectors
from oracles import acos_dist, geo, lhuilier

H = math.pi / 2


def base(a):
    return geo(0.0, -a / 2), geo(0.0, a / 2)


def test_printed_radius_forced_arithmetic():
    # tan x = tan(pi/4) / tan(pi/4) = 1
    assert lexell.radius_printed(H, H) == pytest.approx(math.pi / 4)


def test_constructed_radius_differs_from_printed():
    A, B = base(H)
    loc = lexell.lexell_circle_euler(A, B, H)
    assert loc.circle.radius == pytest.approx(lexell.radius_closed_form(H, H), abs=1e-14)
    assert loc.circle.radius == pytest.approx(math.atan(math.sqrt(2)), abs=1e-14)
    assert abs(loc.circle.radius - lexell.radius_printed(H, H)) > 0.1


def test_long_base_tends_to_great_circle():
    A, B = base(math.pi - 1e-3)
    loc = lexell.lexell_circle_euler(A, B, 1.0)
    assert loc.circle.radius == pytest.approx(H, abs=1e-3)


def test_small_area_limit():
    A, B = base(1.0)
    n = core.spoint(np.cross(A, B))
    loc = lexell.lexell_circle_euler(A, B, 1e-7)
    # the circle flattens onto the base's great circle
    assert abs(abs(loc.circle.pole @ n) - 1) < 1e-6
    assert loc.circle.radius == pytest.approx(H, abs=1e-6)


def test_errors():
    A, B = base(1.0)
    with pytest.raises(InvalidArea):
        lexell.lexell_circle_euler(A, B, 0.0)
    with pytest.raises(InvalidArea):
        lexell.lexell_circle_lexell(A, B, 7.0)
    with pytest.raises(DegenerateBase):
        lexell.lexell_circle_euler(A, -A, 1.0)


def test_steiner_square_on_parallel():
    qs = [geo(0.6, k * H) for k in range(4)]
    assert lexell.steiner_check(*qs) < 1e-12


def test_steiner_off_circle():
    qs = [geo(0.6, k * H) for k in range(4)]
    qs[3] = geo(0.601, 3 * H)
    with pytest.raises(NotConcyclic):
        lexell.steiner_check(*qs)


def test_parallelogram_mirror_and_degenerate():
    g = core.GreatCircle([0, 0, 1])
    E, e = geo(0.4, 0.3), geo(-0.4, 1.1)
    assert lexell.parallelogram_lemma_check(g, 0.4, E, e) == pytest.approx((0, 0), abs=1e-12)
    assert lexell.parallelogram_lemma_check(g, 0.0, geo(0, 0), geo(0, 1)) == (0.0, 0.0)


@given(st.floats(-2.0, 2.0), st.floats(-1.0, 1.0), st.floats(0.05, 1.2))
def test_parallelogram_random(lon1, dlon, d):
    g = core.GreatCircle([0, 0, 1])
    E, e = geo(d, lon1), geo(-d, lon1 + dlon)
    r = lexell.parallelogram_lemma_check(g, d, E, e)
    assert max(r) < 1e-10


def test_euclid_locus():
    assert lexell.euclid_locus(2.0, 1.0).height == 1.0
    assert lexell.euclid_locus(1.0, 0.5).height == 1.0
    loc = lexell.euclid_locus(3.0, 2.0)
    for x in (-1.0, 0.5, 7.0):
        apex = np.array(loc.point) + x * np.array(loc.direction)
        assert 0.5 * 3.0 * apex[1] == pytest.approx(2.0)


def test_small_sphere_matches_plane():
    s = 1e-3
    A, B = base(s)
    D = 0.5 * s * s      # planar height s
    h = lexell.locus_height(lexell.lexell_circle_euler(A, B, D))
    assert h == pytest.approx(lexell.euclid_locus(s, D).height, rel=1e-2)


@given(separated_pair(0.1, math.pi - 0.1), st.floats(0.05, 2 * math.pi - 0.05))
def test_constructions_agree(AB, D):
    A, B = AB
    e = lexell.lexell_circle_euler(A, B, D).circle
    x = lexell.lexell_circle_lexell(A, B, D).circle
    assert core.dist(e.pole, x.pole) < 1e-10
    assert e.radius == pytest.approx(x.radius, abs=1e-10)


@given(separated_pair(0.1, math.pi - 0.1), st.floats(0.05, 2 * math.pi - 0.05))
def test_antipodes_on_circle_and_closed_form(AB, D):
    A, B = AB
    loc = lexell.lexell_circle_euler(A, B, D)
    assert abs(loc.circle.residual(-A)) < 1e-10 and abs(loc.circle.residual(-B)) < 1e-10
    r = lexell.radius_closed_form(core.dist(A, B), D)
    assert min(r, math.pi - r) == pytest.approx(loc.circle.radius, abs=1e-10)


@given(separated_pair(0.1, math.pi - 0.1), st.floats(0.05, 2 * math.pi - 0.05))
def test_sampled_apexes_have_the_area(AB, D):
    A, B = AB
    loc = lexell.lexell_circle_lexell(A, B, D)
    for V in loc.sample_apexes(12):
        assert loc.on_locus_arc(V)
        assert lexell.apex_area(loc, V) == pytest.approx(D, abs=1e-8)
        if D < math.pi:
            # side-based oracle, independent of the vertex formula
            ref = lhuilier(acos_dist(B, V), acos_dist(A, V), acos_dist(A, B))
            assert ref == pytest.approx(D, abs=1e-6)


@given(unit_vectors(), st.floats(0.1, 1.4), st.lists(st.floats(0, 2 * math.pi), min_size=4,
                                                      max_size=4, unique=True))
def test_steiner_random_concyclic(n, r, ts):
    c = core.SmallCircle(n, r)
    ts = sorted(ts)
    if min(np.diff(ts + [ts[0] + 2 * math.pi])) < 0.05:
        return
    assert lexell.steiner_check(*(c.point(t) for t in ts)) < 1e-9
