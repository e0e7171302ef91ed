import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphgeom import core, pappus
from sphgeom.errors import NoSolution, TangentTarget, TargetOnCircleAtV

from oracles import arc_meets_point, geo, line_meets_point

E, S = pappus.EUCLIDEAN, pappus.SPHERICAL
UNIT = pappus.PlaneCircle(np.zeros(2), 1.0)


def on_unit(deg):
    r = math.radians(deg)
    return np.array([math.cos(r), math.sin(r)])


def polar_pt(r, deg):
    return r * on_unit(deg)


def plane_chord(v, P):
    """Second intersection of the line vP with the unit circle (quadratic)."""
    d = P - v
    s = -2.0 * (v @ d) / (d @ d)
    return v + s * d


def scan_fixed_points(targets, order, n=20000):
    """Roots of the wrapped displacement of the composed chord map."""
    t = np.linspace(0, 2 * math.pi, n, endpoint=False)
    out = []
    g = []
    for x in t:
        v = np.array([math.cos(x), math.sin(x)])
        w = v
        for k in order:
            w = plane_chord(w, targets[k])
        g.append(math.remainder(math.atan2(w[1], w[0]) - x, 2 * math.pi))
    g = np.array(g)
    for i in range(n):
        j = (i + 1) % n
        if g[i] * g[j] < 0 and abs(g[i] - g[j]) < 1.0:
            out.append(on_unit(math.degrees(t[i])))
    return out


def assert_incident(sol, targets, geometry):
    meet = line_meets_point if geometry == E else arc_meets_point
    V = sol.vertices
    for i, k in enumerate(sol.order):
        assert meet(V[i], V[(i + 1) % 3], targets[k]) < 1e-8


def test_chord_through_centre_and_involution():
    v = on_unit(40)
    w = pappus.chord_through(UNIT, v, np.zeros(2))
    assert np.allclose(w, -v, atol=1e-15)
    P = np.array([0.3, -0.2])
    assert np.allclose(pappus.chord_through(UNIT, pappus.chord_through(UNIT, v, P), P), v)


def test_chord_through_spherical_pole():
    c = core.SmallCircle(geo(0.3, 0.2), 0.7)
    v = c.point(1.0)
    w = pappus.chord_through(c, v, c.pole)
    assert core.dist(w, c.point(1.0 + math.pi)) < 1e-12


def test_chord_target_on_circle_at_v():
    with pytest.raises(TargetOnCircleAtV):
        pappus.chord_through(UNIT, on_unit(10), on_unit(10))


def test_tangent_target_rejected():
    with pytest.raises(TangentTarget):
        pappus.PappusInstance(E, UNIT, on_unit(0), np.zeros(2), np.array([0.1, 0.1]))


def test_equilateral_midpoints():
    T = [polar_pt(0.5, a) for a in (90, 210, 330)]
    sols = pappus.solve_pappus(pappus.PappusInstance(E, UNIT, *T))
    want = np.array([on_unit(a) for a in (30, 150, 270)])
    assert any(all(min(np.linalg.norm(v - w) for v in s.vertices) < 1e-8 for w in want)
               for s in sols)
    for s in sols:
        assert_incident(s, T, E)


def test_collinear_targets():
    V = [on_unit(a) for a in (-20, 125, 250)]
    T = []
    for i in range(3):
        p, q = V[i], V[(i + 1) % 3]
        s = (0.5 - p[1]) / (q[1] - p[1])
        T.append(p + s * (q - p))           # side line meets y = 1/2
    sols = pappus.solve_pappus(pappus.PappusInstance(E, UNIT, *T))
    assert len(sols) >= 1
    for s in sols:
        assert_incident(s, T, E)
        assert max(s.residuals) < 1e-8


def test_spherical_symmetric_targets():
    circ = core.SmallCircle([0, 0, 1], math.radians(60))    # the latitude 30 degree circle
    T = [geo(math.radians(40), math.radians(a)) for a in (0, 120, 240)]
    sols = pappus.solve_pappus(pappus.PappusInstance(S, circ, *T))
    assert sols
    for s in sols:
        assert_incident(s, T, S)
        lons = sorted(core.to_geo(v).lon % (2 * math.pi) for v in s.vertices)
        gaps = np.diff(lons + [lons[0] + 2 * math.pi])
        assert gaps == pytest.approx([2 * math.pi / 3] * 3, abs=1e-8)


def test_spherical_targets_beyond_reach():
    # a chord of the latitude-30 circle spanning 120 degrees peaks at
    # latitude atan(tan 30 / cos 60) = 49.1 degrees
    circ = core.SmallCircle([0, 0, 1], math.radians(60))
    T = [geo(math.radians(60), math.radians(a)) for a in (0, 120, 240)]
    with pytest.raises(NoSolution):
        pappus.solve_pappus(pappus.PappusInstance(S, circ, *T))


def test_outputs_sorted_and_labelled():
    V = [on_unit(a) for a in (10, 130, 250)]
    T = [V[0] + 0.3 * (V[1] - V[0]), V[1] + 0.6 * (V[2] - V[1]), V[2] + 0.45 * (V[0] - V[2])]
    sols = pappus.solve_pappus(pappus.PappusInstance(E, UNIT, *T))
    assert [s.t for s in sols] == sorted(s.t for s in sols)
    assert sols and {s.order for s in sols} <= {(0, 1, 2), (0, 2, 1)}


@settings(max_examples=25)
@given(st.lists(st.tuples(st.floats(0.0, 0.9), st.floats(0, 360)), min_size=3, max_size=3))
def test_solver_finds_every_scanned_fixed_point(pts):
    T = [polar_pt(r, a) for r, a in pts]
    if min(np.linalg.norm(T[i] - T[j]) for i in range(3) for j in range(i)) < 0.05:
        return
    try:
        sols = pappus.solve_pappus(pappus.PappusInstance(E, UNIT, *T))
    except NoSolution:
        sols = []
    verts = [v for s in sols for v in s.vertices]
    for order in ((0, 1, 2), (0, 2, 1)):
        for v in scan_fixed_points(T, order, n=4000):
            assert verts and min(np.linalg.norm(v - w) for w in verts) < 5e-3
    for s in sols:
        assert_incident(s, T, E)


@settings(max_examples=25)
@given(st.lists(st.floats(0, 2 * math.pi), min_size=3, max_size=3),
       st.lists(st.floats(0.2, 0.8), min_size=3, max_size=3))
def test_seeded_spherical_recovered(ts, fr):
    circ = core.SmallCircle(geo(0.4, -0.3), 0.9)
    ts = sorted(ts)
    if min(np.diff(ts + [ts[0] + 2 * math.pi])) < 0.3:
        return
    V = [circ.point(t) for t in ts]
    T = [core.slerp(V[i], V[(i + 1) % 3], f) for i, f in enumerate(fr)]
    sols = pappus.solve_pappus(pappus.PappusInstance(S, circ, *T))
    hit = [s for s in sols
           if all(min(core.dist(v, w) for w in s.vertices) < 1e-8 for v in V)]
    assert hit
    for s in sols:
        assert_incident(s, T, S)
