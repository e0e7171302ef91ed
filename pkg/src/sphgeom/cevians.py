"""Concurrency relations for cevians in the plane and on the sphere.

A configuration holds a triangle ``A, B, C`` and feet ``a, b, c`` on the
lines (great circles) carrying the opposite sides.  Length relations are
evaluated at the common point ``O`` of the three cevians.  For a
configuration that is not concurrent each cevian is cut where it crosses the
next one in cyclic order (``Aa`` at ``Bb``, ``Bb`` at ``Cc``, ``Cc`` at
``Aa``).  That keeps the residuals defined and makes them grow linearly with
the departure from concurrency; a symmetric choice such as the mean of the
crossings cancels to first order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import core
from .errors import NotConcurrent, RelationViolated

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"

CONCURRENCY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class CevianConfig:
    geometry: str
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    O: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.geometry not in (EUCLIDEAN, SPHERICAL):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        conv = core.spoint if self.geometry == SPHERICAL else (
            lambda v: np.asarray(v, dtype=float).reshape(2))
        for k in ("A", "B", "C", "a", "b", "c"):
            object.__setattr__(self, k, conv(getattr(self, k)))
        if self.O is not None:
            object.__setattr__(self, "O", conv(self.O))

    @property
    def cevians(self):
        return ((self.A, self.a), (self.B, self.b), (self.C, self.c))

    def with_feet(self, a, b, c) -> "CevianConfig":
        return replace(self, a=a, b=b, c=c, O=None)


# ------------------------------------------------------------- constructors

def _line_intersection(p1, p2, q1, q2) -> np.ndarray:
    d1, d2 = p2 - p1, q2 - q1
    m = np.array([d1, -d2]).T
    if abs(np.linalg.det(m)) < 1e-300:
        return np.full(2, np.nan)
    s, _ = np.linalg.solve(m, q1 - p1)
    return p1 + s * d1


def _gc_intersection(p1, p2, q1, q2, near) -> np.ndarray:
    x = np.cross(np.cross(p1, p2), np.cross(q1, q2))
    nx = np.linalg.norm(x)
    if nx < 1e-300:
        return np.full(3, np.nan)
    x = x / nx
    return x if np.dot(x, near) >= 0 else -x


def through_point(A, B, C, O, geometry: str = EUCLIDEAN) -> CevianConfig:
    """Cevians from each vertex through ``O`` to the opposite side."""
    if geometry == SPHERICAL:
        A, B, C, O = (core.spoint(v) for v in (A, B, C, O))
        feet = [_gc_intersection(V, O, P, Q, P + Q) for V, P, Q in ((A, B, C), (B, C, A), (C, A, B))]
    else:
        A, B, C, O = (np.asarray(v, dtype=float) for v in (A, B, C, O))
        feet = [_line_intersection(V, O, P, Q) for V, P, Q in ((A, B, C), (B, C, A), (C, A, B))]
    return CevianConfig(geometry, A, B, C, *feet, O=O)


def medians(A, B, C, geometry: str = EUCLIDEAN) -> CevianConfig:
    if geometry == SPHERICAL:
        feet = [core.midpoint(P, Q) for P, Q in ((B, C), (C, A), (A, B))]
    else:
        A, B, C = (np.asarray(v, dtype=float) for v in (A, B, C))
        feet = [0.5 * (P + Q) for P, Q in ((B, C), (C, A), (A, B))]
    return CevianConfig(geometry, A, B, C, *feet)


# -------------------------------------------------------------- concurrency

def _distance(cfg: CevianConfig, p, q) -> float:
    if cfg.geometry == SPHERICAL:
        return core.dist(p, q)
    return float(np.linalg.norm(np.asarray(p) - np.asarray(q)))


def pairwise_intersections(cfg: CevianConfig) -> list[np.ndarray]:
    out = []
    centre = cfg.A + cfg.B + cfg.C
    for (V, f), (W, g) in itertools.combinations(cfg.cevians, 2):
        if cfg.geometry == SPHERICAL:
            out.append(_gc_intersection(V, f, W, g, centre))
        else:
            out.append(_line_intersection(V, f, W, g))
    return out


def spread(cfg: CevianConfig) -> float:
    pts = pairwise_intersections(cfg)
    if any(not np.all(np.isfinite(p)) for p in pts):
        return math.inf
    return max(_distance(cfg, p, q) for p, q in itertools.combinations(pts, 2))


def _mean_point(cfg: CevianConfig) -> np.ndarray:
    pts = pairwise_intersections(cfg)
    m = np.mean(pts, axis=0)
    return core.spoint(m) if cfg.geometry == SPHERICAL else m


def cevian_point(cfg: CevianConfig, tol: float = CONCURRENCY_TOL) -> np.ndarray:
    """Common point of the three cevians; :class:`NotConcurrent` otherwise."""
    s = spread(cfg)
    if not s <= tol:
        raise NotConcurrent(s)
    return _mean_point(cfg)


def _centres(cfg: CevianConfig, require_concurrent: bool) -> list[np.ndarray]:
    """Point used on each cevian: the common point, or the cyclic crossings."""
    if require_concurrent:
        return [cevian_point(cfg)] * 3
    if cfg.O is not None:
        return [cfg.O] * 3
    out = []
    ces = cfg.cevians
    for i in range(3):
        (V, f), (W, g) = ces[i], ces[(i + 1) % 3]
        if cfg.geometry == SPHERICAL:
            out.append(_gc_intersection(V, f, W, g, cfg.A + cfg.B + cfg.C))
        else:
            out.append(_line_intersection(V, f, W, g))
    return out


def _segments(cfg: CevianConfig, require_concurrent: bool) -> list[tuple[float, float, float]]:
    """``(VO, Of, Vf)`` for each cevian ``V -> f``."""
    return [(_distance(cfg, V, O), _distance(cfg, O, f), _distance(cfg, V, f))
            for (V, f), O in zip(cfg.cevians, _centres(cfg, require_concurrent))]


# ---------------------------------------------------------------- relations

def ratios(cfg: CevianConfig, require_concurrent: bool = False) -> tuple[float, float, float]:
    """``AO/Oa`` etc. in the plane, ``tan AO / tan Oa`` etc. on the sphere."""
    segs = _segments(cfg, require_concurrent)
    if cfg.geometry == SPHERICAL:
        return tuple(math.tan(v) / math.tan(f) for v, f, _ in segs)
    return tuple(v / f for v, f, _ in segs)


def _product_sum_residual(x: float, y: float, z: float) -> float:
    return abs(x * y * z - (x + y + z + 2.0))


def euler_relation_residual_euclidean(cfg: CevianConfig, require_concurrent: bool = False) -> float:
    """``|xyz - (x + y + z + 2)|`` with ``x = AO/Oa``, ``y = BO/Ob``, ``z = CO/Oc``."""
    if cfg.geometry != EUCLIDEAN:
        raise ValueError("configuration is not Euclidean")
    return _product_sum_residual(*ratios(cfg, require_concurrent))


def euler_relation_residual_spherical(cfg: CevianConfig, require_concurrent: bool = False) -> float:
    """Same relation with ``x = tan AO / tan Oa`` and so on."""
    if cfg.geometry != SPHERICAL:
        raise ValueError("configuration is not spherical")
    return _product_sum_residual(*ratios(cfg, require_concurrent))


def euler_identity_residual_euclidean(cfg: CevianConfig, require_concurrent: bool = False) -> float:
    """``|Oa/Aa + Ob/Bb + Oc/Cc - 1|``."""
    if cfg.geometry != EUCLIDEAN:
        raise ValueError("configuration is not Euclidean")
    total = sum(f / L for _, f, L in _segments(cfg, require_concurrent))
    return abs(total - 1.0)


def spherical_identity_probe(cfg: CevianConfig, require_concurrent: bool = False) -> dict:
    """Evaluate the spherical sum identity as printed and several variants.

    ``printed``        sum tan AO / tan Oa = 1
    ``inverted``       sum tan Oa / tan AO = 1
    ``tan_full``       sum tan Oa / tan Aa = 1
    ``sin_full``       sum sin Oa / sin Aa = 1
    ``sin_cos``        sum sin Oa cos AO / sin Aa = 1
    ``product_minus_2``  sum x = xyz - 2 with x = tan AO / tan Oa

    Only residuals are reported (``|lhs - rhs|``); nothing is promoted.
    ``printed_fails`` flags the printed form missing by more than 1e-6.
    """
    if cfg.geometry != SPHERICAL:
        raise ValueError("configuration is not spherical")
    segs = _segments(cfg, require_concurrent)
    x = [math.tan(v) / math.tan(f) for v, f, _ in segs]
    res = {
        "printed": abs(sum(x) - 1.0),
        "printed_sum": sum(x),
        "inverted": abs(sum(1.0 / r for r in x) - 1.0),
        "tan_full": abs(sum(math.tan(f) / math.tan(L) for _, f, L in segs) - 1.0),
        "sin_full": abs(sum(math.sin(f) / math.sin(L) for _, f, L in segs) - 1.0),
        "sin_cos": abs(sum(math.sin(f) * math.cos(v) / math.sin(L) for v, f, L in segs) - 1.0),
        "product_minus_2": abs(sum(x) - (x[0] * x[1] * x[2] - 2.0)),
    }
    res["printed_fails"] = res["printed"] > 1e-6
    return res


def ceva_residual(cfg: CevianConfig) -> float:
    """``|cA/cB * aB/aC * bC/bA - 1|``; sines of the sub-arcs on the sphere."""
    d = (lambda p, q: math.sin(_distance(cfg, p, q))) if cfg.geometry == SPHERICAL else \
        (lambda p, q: _distance(cfg, p, q))
    A, B, C, a, b, c = cfg.A, cfg.B, cfg.C, cfg.a, cfg.b, cfg.c
    prod = (d(c, A) / d(c, B)) * (d(a, B) / d(a, C)) * (d(b, C) / d(b, A))
    return abs(prod - 1.0)


# ------------------------------------------------------------------ converse

@dataclass(frozen=True, eq=False)
class CevianTriangle:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    O: np.ndarray
    angles: tuple[float, float, float]   # directions of OA, OB, OC

    def config(self) -> CevianConfig:
        return CevianConfig(EUCLIDEAN, self.A, self.B, self.C, self.a, self.b, self.c, O=self.O)


def construct_from_cevians(AO: float, Oa: float, BO: float, Ob: float,
                           CO: float, Oc: float, tol: float = 1e-9) -> CevianTriangle:
    """Planar triangle whose cevians through ``O`` have the given pieces.

    With ``x = AO/Oa`` the point ``O`` has barycentric weight ``1/(1+x)`` at
    ``A`` (likewise at ``B``, ``C``); the product-sum relation is exactly the
    statement that the three weights add to one.  The directions of ``OA``,
    ``OB``, ``OC`` then follow from the closed triangle formed by the weighted
    vectors, so they are outputs rather than inputs.
    """
    lengths = (AO, Oa, BO, Ob, CO, Oc)
    if min(lengths) <= 0:
        raise RelationViolated("segment lengths must be positive")
    x, y, z = AO / Oa, BO / Ob, CO / Oc
    if _product_sum_residual(x, y, z) > tol:
        raise RelationViolated(
            f"product-sum relation fails by {_product_sum_residual(x, y, z):.3e}")
    w = np.array([1.0 / (1.0 + x), 1.0 / (1.0 + y), 1.0 / (1.0 + z)])
    w /= w.sum()
    pA, pB, pC = w[0] * AO, w[1] * BO, w[2] * CO
    if not (pA < pB + pC and pB < pA + pC and pC < pA + pB):
        raise RelationViolated("weighted segments cannot close up into a triangle")
    th_b = math.acos((pC * pC - pA * pA - pB * pB) / (2 * pA * pB))
    th_c = -math.acos((pB * pB - pA * pA - pC * pC) / (2 * pA * pC))
    dirs = [np.array([math.cos(t), math.sin(t)]) for t in (0.0, th_b, th_c)]
    O = np.zeros(2)
    A, B, C = AO * dirs[0], BO * dirs[1], CO * dirs[2]
    a, b, c = -Oa * dirs[0], -Ob * dirs[1], -Oc * dirs[2]
    return CevianTriangle(A, B, C, a, b, c, O, (0.0, th_b, th_c))


def foot_offsets(cfg: CevianConfig) -> tuple[float, float, float]:
    """Distance of each foot from the line through the two other vertices."""
    def off(f, P, Q):
        if cfg.geometry == SPHERICAL:
            n = core.spoint(np.cross(P, Q))
            return abs(math.asin(max(-1.0, min(1.0, float(np.dot(f, n))))))
        d = Q - P
        return abs(float(d[0] * (f - P)[1] - d[1] * (f - P)[0])) / float(np.linalg.norm(d))
    return off(cfg.a, cfg.B, cfg.C), off(cfg.b, cfg.C, cfg.A), off(cfg.c, cfg.A, cfg.B)
