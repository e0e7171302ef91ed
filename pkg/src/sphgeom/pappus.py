"""Triangles inscribed in a circle whose sides pass through three given points.

Works in the plane and on the sphere with the same method.  Sending a point
of the circle along the line (great circle) through a target to the second
intersection with the circle is an involution of the circle.  Composing the
three involutions gives a self-map whose fixed points are the first vertices
of the solutions.  Fixed points are bracketed by sign changes of the
displacement on a uniform grid and bisected.  A fixed point where the
displacement only touches zero (a double fixed point, as for the triangle
whose side midpoints are the targets) has no sign change; local minima of
the absolute displacement are refined separately and kept if they reach
zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import core
from .errors import NoSolution, TangentTarget, TargetOnCircleAtV

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"

GRID = 2048
BISECT_TOL = 1e-12
DEDUP_TOL = 1e-6
TOUCH_TOL = 1e-12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class PlaneCircle:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float).reshape(2))
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def residual(self, p) -> float:
        return float(np.linalg.norm(np.asarray(p) - self.center)) - self.radius

    def contains(self, p, tol: float = core.TOL) -> bool:
        return abs(self.residual(p)) <= tol

    def point(self, t: float) -> np.ndarray:
        return self.center + self.radius * np.array([math.cos(t), math.sin(t)])

    def points(self, t: np.ndarray) -> np.ndarray:
        return self.center + self.radius * np.column_stack([np.cos(t), np.sin(t)])

    def parameter(self, p) -> float:
        d = np.asarray(p) - self.center
        return math.atan2(d[1], d[0])

    def parameters(self, p: np.ndarray) -> np.ndarray:
        d = p - self.center
        return np.arctan2(d[:, 1], d[:, 0])


def _sphere_points(circle: core.SmallCircle, t: np.ndarray) -> np.ndarray:
    u, w = core.tangent_basis(circle.pole)
    s, c = math.sin(circle.radius), math.cos(circle.radius)
    return c * circle.pole + s * (np.outer(np.cos(t), u) + np.outer(np.sin(t), w))


def _sphere_parameters(circle: core.SmallCircle, p: np.ndarray) -> np.ndarray:
    u, w = core.tangent_basis(circle.pole)
    return np.arctan2(p @ w, p @ u)


@dataclass(frozen=True, eq=False)
class PappusInstance:
    geometry: str
    circle: PlaneCircle | core.SmallCircle
    P1: np.ndarray
    P2: np.ndarray
    P3: np.ndarray

    def __post_init__(self):
        if self.geometry not in (EUCLIDEAN, SPHERICAL):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        conv = core.spoint if self.geometry == SPHERICAL else (
            lambda v: np.asarray(v, dtype=float).reshape(2))
        pts = [conv(getattr(self, k)) for k in ("P1", "P2", "P3")]
        for k, p in zip(("P1", "P2", "P3"), pts):
            object.__setattr__(self, k, p)
            if self.circle.contains(p, 1e-9):
                raise TangentTarget(f"target {k} lies on the circle")
        for i in range(3):
            for j in range(i + 1, 3):
                if np.linalg.norm(pts[i] - pts[j]) < 1e-12:
                    raise ValueError("targets must be distinct")

    @property
    def targets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.P1, self.P2, self.P3

    def points(self, t: np.ndarray) -> np.ndarray:
        if self.geometry == SPHERICAL:
            return _sphere_points(self.circle, t)
        return self.circle.points(t)

    def parameters(self, p: np.ndarray) -> np.ndarray:
        if self.geometry == SPHERICAL:
            return _sphere_parameters(self.circle, p)
        return self.circle.parameters(p)


@dataclass(frozen=True, eq=False)
class PappusTriangle:
    vertices: np.ndarray       # (3, dim); side i joins vertex i and i+1
    order: tuple[int, int, int]  # target index carried by each side
    t: float                   # circle parameter of the first vertex
    residuals: tuple[float, float]  # (max off-circle, max side-to-target)


# ------------------------------------------------------------ chord steps

def _chord_plane(circle: PlaneCircle, v: np.ndarray, target) -> np.ndarray:
    d = target - v
    nd = np.linalg.norm(d, axis=1, keepdims=True)
    d = d / np.where(nd == 0, 1.0, nd)
    s = -2.0 * np.sum((v - circle.center) * d, axis=1, keepdims=True)
    return v + s * d


def _chord_sphere(circle: core.SmallCircle, v: np.ndarray, target) -> np.ndarray:
    m = np.cross(v, target)
    nm = np.linalg.norm(m, axis=1, keepdims=True)
    m = m / np.where(nm == 0, 1.0, nm)
    # projection of the circle's pole into the great circle's plane
    nt = circle.pole - (m @ circle.pole)[:, None] * m
    nn = np.linalg.norm(nt, axis=1, keepdims=True)
    nt = nt / np.where(nn == 0, 1.0, nn)
    w = 2.0 * np.sum(v * nt, axis=1, keepdims=True) * nt - v
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def _chord_many(inst: PappusInstance, v: np.ndarray, target) -> np.ndarray:
    if inst.geometry == SPHERICAL:
        return _chord_sphere(inst.circle, v, target)
    return _chord_plane(inst.circle, v, target)


def chord_through(circle, v, target, tol: float = 1e-12) -> np.ndarray:
    """Second intersection with ``circle`` of the line (great circle) through
    ``v`` and ``target``; ``v`` itself when that line is tangent."""
    if isinstance(circle, core.SmallCircle):
        v, target = core.spoint(v), core.spoint(target)
        if np.linalg.norm(np.cross(v, target)) < tol:
            raise TargetOnCircleAtV("target coincides with v or its antipode")
        return _chord_sphere(circle, v[None, :], target)[0]
    v, target = np.asarray(v, dtype=float), np.asarray(target, dtype=float)
    if np.linalg.norm(target - v) < tol:
        raise TargetOnCircleAtV("target coincides with v")
    return _chord_plane(circle, v[None, :], target)[0]


# ---------------------------------------------------------------- solver

def _compose(inst: PappusInstance, t: np.ndarray, order) -> tuple[np.ndarray, list]:
    v = inst.points(t)
    chain = [v]
    for k in order:
        v = _chord_many(inst, v, inst.targets[k])
        chain.append(v)
    return inst.parameters(v), chain


def _displacement(inst, t, order) -> np.ndarray:
    ft, _ = _compose(inst, t, order)
    return (ft - t + math.pi) % TWO_PI - math.pi


def _incidence(inst: PappusInstance, verts: np.ndarray, order) -> tuple[float, float]:
    on = max(abs(inst.circle.residual(v)) for v in verts)
    side = 0.0
    for i, k in enumerate(order):
        p, q, x = verts[i], verts[(i + 1) % 3], inst.targets[k]
        if inst.geometry == SPHERICAL:
            n = np.cross(p, q)
            off = abs(float(np.dot(n, x))) / float(np.linalg.norm(n))
        else:
            d = q - p
            off = abs(d[0] * (x - p)[1] - d[1] * (x - p)[0]) / float(np.linalg.norm(d))
        side = max(side, off)
    return on, side


def _same_triangle(u: np.ndarray, w: np.ndarray) -> bool:
    return all(min(np.linalg.norm(p - q) for q in w) < DEDUP_TOL for p in u)


def _bisect(inst, order, lo: float, hi: float, glo: float) -> float:
    if glo == 0.0:
        return lo
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        gm = _displacement(inst, np.array([mid]), order)[0]
        if gm != 0.0 and (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _close_roots(inst, order, lo: float, hi: float, sgn: float) -> list[float]:
    """Roots hiding inside a grid cell pair: a double root, or two roots
    closer than the grid spacing."""
    def f(t):
        return sgn * _displacement(inst, np.array([t]), order)[0]
    r = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": BISECT_TOL})
    if r.fun < 0.0:
        tm = float(r.x)
        return [_bisect(inst, order, lo, tm, sgn * f(lo)), _bisect(inst, order, tm, hi, sgn * f(tm))]
    if r.fun < TOUCH_TOL:
        return [float(r.x)]
    return []


def solve_pappus(inst: PappusInstance, grid: int = GRID) -> list[PappusTriangle]:
    """All triangles found for both cyclic target orders, deduplicated and
    sorted by the circle parameter of the first vertex."""
    ts = np.linspace(-math.pi, math.pi, grid + 1)
    found: list[PappusTriangle] = []
    best = math.inf
    for order in ((0, 1, 2), (0, 2, 1)):
        g = _displacement(inst, ts, order)
        best = min(best, float(np.min(np.abs(g))))
        roots: list[float] = []
        for i in range(grid):
            g0, g1 = g[i], g[i + 1]
            # a jump across +-pi is a wrap, not a root
            if g0 * g1 > 0 or abs(g0 - g1) > math.pi:
                continue
            roots.append(_bisect(inst, order, ts[i], ts[i + 1], g0))
        a = np.abs(g)
        for i in range(1, grid):
            if a[i] <= a[i - 1] and a[i] <= a[i + 1] and a[i] < 1e-2 and g[i - 1] * g[i + 1] > 0:
                roots.extend(_close_roots(inst, order, ts[i - 1], ts[i + 1], np.sign(g[i])))
        for t in roots:
            _, chain = _compose(inst, np.array([t]), order)
            verts = np.array([chain[0][0], chain[1][0], chain[2][0]])
            if min(np.linalg.norm(verts[i] - verts[(i + 1) % 3]) for i in range(3)) < DEDUP_TOL:
                continue   # collapsed triangle (a side is tangent)
            res = _incidence(inst, verts, order)
            if res[1] > 1e-8:
                continue   # discontinuity, not a fixed point
            tri = PappusTriangle(verts, order, float(t), res)
            if not any(_same_triangle(tri.vertices, f.vertices) for f in found):
                found.append(tri)
    if not found:
        raise NoSolution(best)
    found.sort(key=lambda f: f.t)
    return found
