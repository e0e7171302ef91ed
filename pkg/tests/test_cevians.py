import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sphgeom import cevians as cv, core
from sphgeom.errors import NotConcurrent, RelationViolated

from oracles import geo

E, S = cv.EUCLIDEAN, cv.SPHERICAL
TRI = (np.array([0.0, 0.0]), np.array([4.0, 0.0]), np.array([1.0, 3.0]))
weight = st.floats(0.1, 1.0)


def sph_triangle(scale=0.6):
    return geo(scale * 0.6, 0.0), geo(-scale * 0.4, scale * 0.7), geo(-scale * 0.5, -scale * 0.6)


def interior(V, w, geometry):
    w = np.asarray(w) / np.sum(w)
    p = w[0] * V[0] + w[1] * V[1] + w[2] * V[2]
    return core.spoint(p) if geometry == S else p


def shift_foot(cfg, eps):
    """Slide foot ``a`` along BC by ``eps`` of the side."""
    if cfg.geometry == S:
        t = core.dist(cfg.B, cfg.a) / core.dist(cfg.B, cfg.C)
        a = core.slerp(cfg.B, cfg.C, t + eps)
    else:
        a = cfg.a + eps * (cfg.C - cfg.B)
    return cfg.with_feet(a, cfg.b, cfg.c)


def test_euclidean_medians_meet_at_centroid():
    cfg = cv.medians(*TRI)
    assert np.allclose(cv.cevian_point(cfg), np.mean(TRI, axis=0), atol=1e-14)
    assert cv.ratios(cfg) == pytest.approx((2, 2, 2))
    assert cv.euler_relation_residual_euclidean(cfg) < 1e-13
    assert cv.euler_identity_residual_euclidean(cfg) < 1e-15
    assert cv.ceva_residual(cfg) < 1e-15


def test_spherical_equilateral_medians():
    V = [geo(math.pi / 2 - 0.5, k * 2 * math.pi / 3) for k in range(3)]
    cfg = cv.medians(*V, geometry=S)
    assert np.allclose(cv.cevian_point(cfg), [0, 0, 1], atol=1e-14)
    assert cv.euler_relation_residual_spherical(cfg) < 1e-9


def test_perturbed_foot_is_not_concurrent():
    for cfg in (cv.medians(*TRI), cv.medians(*sph_triangle(), geometry=S)):
        bad = shift_foot(cfg, 1e-2)
        with pytest.raises(NotConcurrent):
            cv.cevian_point(bad)
        with pytest.raises(NotConcurrent):
            cv.ratios(bad, require_concurrent=True)


def test_perturbed_residuals_are_large():
    cfg = shift_foot(cv.through_point(*TRI, interior(TRI, (1, 2, 3), E)), 1e-2)
    assert cv.euler_relation_residual_euclidean(cfg) > 1e-3
    assert cv.euler_identity_residual_euclidean(cfg) > 1e-4
    assert cv.ceva_residual(cfg) > 1e-4
    V = sph_triangle()
    cfg = shift_foot(cv.through_point(*V, interior(V, (1, 2, 3), S), S), 1e-2)
    assert cv.euler_relation_residual_spherical(cfg) > 1e-4
    assert cv.ceva_residual(cfg) > 1e-4


def test_non_concurrent_residual_scales_with_offset():
    cfg = cv.medians(*TRI)
    r1 = cv.euler_relation_residual_euclidean(shift_foot(cfg, 1e-3))
    r2 = cv.euler_relation_residual_euclidean(shift_foot(cfg, 2e-3))
    assert r2 / r1 == pytest.approx(2.0, rel=0.05)


def test_tiny_spherical_medians_match_plane():
    V = sph_triangle(1e-3)
    cfg = cv.medians(*V, geometry=S)
    assert cv.euler_relation_residual_spherical(cfg) < 1e-6
    assert cv.ratios(cfg) == pytest.approx((2, 2, 2), abs=1e-5)


def test_euclidean_limit_of_non_concurrent_residuals():
    """Shrinking a perturbed spherical configuration, its residual
    approaches the one of the same configuration in the tangent plane."""
    s = 1e-3
    w = (1.0, 2.0, 3.0)
    V2 = [np.array(p) * s / 4 for p in TRI]
    plane = shift_foot(cv.through_point(*V2, interior(V2, w, E)), 1e-2)
    lift = lambda p: core.spoint(p[0], p[1], 1.0)
    sph = cv.CevianConfig(S, *(lift(p) for p in (plane.A, plane.B, plane.C,
                                                 plane.a, plane.b, plane.c)))
    r_e = cv.euler_relation_residual_euclidean(plane)
    r_s = cv.euler_relation_residual_spherical(sph)
    assert r_s / r_e == pytest.approx(1.0, rel=1e-2)


def test_printed_sum_identity_probe():
    cfg = cv.medians(*sph_triangle(1e-3), geometry=S)
    p = cv.spherical_identity_probe(cfg)
    assert p["printed_sum"] == pytest.approx(6.0, abs=1e-4)
    assert p["printed_fails"]
    assert p["product_minus_2"] < 1e-9
    assert p["sin_cos"] < 1e-9


def test_approach_vertex_identity_stays_one():
    for t in (0.5, 0.9, 0.99, 0.999):
        O = (1 - t) * np.mean(TRI, axis=0) + t * (TRI[0] + 1e-3 * (TRI[1] + TRI[2] - 2 * TRI[0]))
        cfg = cv.through_point(*TRI, O)
        assert cv.euler_identity_residual_euclidean(cfg) < 1e-9


def test_construct_from_median_data():
    m = math.sqrt(3) / 2          # median of the unit equilateral triangle
    t = cv.construct_from_cevians(2 * m / 3, m / 3, 2 * m / 3, m / 3, 2 * m / 3, m / 3)
    side = [np.linalg.norm(t.B - t.C), np.linalg.norm(t.C - t.A), np.linalg.norm(t.A - t.B)]
    assert side == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)
    assert abs(t.angles[1] - t.angles[0]) == pytest.approx(2 * math.pi / 3)


def test_construct_rejects_bad_relation():
    m = math.sqrt(3) / 2
    with pytest.raises(RelationViolated):
        cv.construct_from_cevians(2 * m / 3 + 1e-2, m / 3, 2 * m / 3, m / 3, 2 * m / 3, m / 3)


@given(weight, weight, weight)
def test_construct_roundtrip(w1, w2, w3):
    cfg = cv.through_point(*TRI, interior(TRI, (w1, w2, w3), E))
    segs = [(np.linalg.norm(V - cfg.O), np.linalg.norm(cfg.O - f)) for V, f in cfg.cevians]
    t = cv.construct_from_cevians(*(x for s in segs for x in s))
    rebuilt = t.config()
    assert cv.spread(rebuilt) < 1e-9
    for (V, f), (VO, Of) in zip(rebuilt.cevians, segs):
        assert np.linalg.norm(V - t.O) == pytest.approx(VO, rel=1e-9)
        assert np.linalg.norm(t.O - f) == pytest.approx(Of, rel=1e-9)
    assert cv.foot_offsets(rebuilt) == pytest.approx((0, 0, 0), abs=1e-9)
    # shape fixed up to congruence: compare side lengths
    orig = sorted(np.linalg.norm(P - Q) for P, Q in ((TRI[1], TRI[2]), (TRI[2], TRI[0]), (TRI[0], TRI[1])))
    new = sorted(np.linalg.norm(P - Q) for P, Q in ((t.B, t.C), (t.C, t.A), (t.A, t.B)))
    assert new == pytest.approx(orig, rel=1e-9)


@given(weight, weight, weight)
def test_concurrent_euclidean_relations(w1, w2, w3):
    cfg = cv.through_point(*TRI, interior(TRI, (w1, w2, w3), E))
    assert cv.spread(cfg) < 1e-12
    assert cv.euler_relation_residual_euclidean(cfg, require_concurrent=True) < 1e-9
    assert cv.euler_identity_residual_euclidean(cfg, require_concurrent=True) < 1e-9
    assert cv.ceva_residual(cfg) < 1e-9


@given(weight, weight, weight, st.floats(0.2, 1.2))
def test_concurrent_spherical_relations(w1, w2, w3, scale):
    V = sph_triangle(scale)
    cfg = cv.through_point(*V, interior(V, (w1, w2, w3), S), S)
    assert cv.euler_relation_residual_spherical(cfg, require_concurrent=True) < 1e-9
    assert cv.ceva_residual(cfg) < 1e-9
    p = cv.spherical_identity_probe(cfg, require_concurrent=True)
    assert p["product_minus_2"] < 1e-9 and p["sin_cos"] < 1e-9


@given(weight, weight, weight)
def test_ceva_equivalences(w1, w2, w3):
    cfg = cv.through_point(*TRI, interior(TRI, (w1, w2, w3), E))
    for c in (cfg, shift_foot(cfg, 5e-3)):
        ok = [cv.euler_relation_residual_euclidean(c) < 1e-9, cv.ceva_residual(c) < 1e-9]
        try:
            cv.cevian_point(c, tol=1e-9)
            ok.append(True)
        except NotConcurrent:
            ok.append(False)
        assert len(set(ok)) == 1
