"""Shortest paths through the length functional in polar coordinates.

A point has polar angle ``x`` (from the north pole) and azimuth ``y``, the
length element is ``ds = sqrt(dx^2 + sin^2 x dy^2)`` and its Euler-Lagrange
equations, parametrised by arc length, are

    x'' = sin x cos x y'^2,     y'' = -2 cot x x' y'.

They are integrated with classical fixed-step Runge-Kutta.  ``sin^2 x y'``
is a first integral.  The chart is singular at the poles, so a trajectory
that comes within ``POLE_MARGIN`` of one is re-integrated in a rotated frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from . import core
from .errors import AntipodalEndpoints, QuadratureNotConverged, RangeError, SingularCoordinate

PI = math.pi
STEP = 1e-3
POLE_MARGIN = 0.05
SINGULAR_TOL = 1e-6
GATE = 1e-8

_GL_X, _GL_W = np.polynomial.legendre.leggauss(6)


@dataclass(frozen=True, eq=False)
class SurfacePath:
    x: np.ndarray
    y: np.ndarray
    t: np.ndarray | None = None   # monotone parameter; sample index when omitted

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
            raise ValueError("need matching 1-d coordinate arrays with at least 2 samples")
        t = np.arange(len(x), dtype=float) if self.t is None else np.asarray(self.t, dtype=float)
        if t.shape != x.shape or np.any(np.diff(t) <= 0):
            raise ValueError("parameter must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", t)

    def points(self) -> np.ndarray:
        s = np.sin(self.x)
        return np.column_stack([s * np.cos(self.y), s * np.sin(self.y), np.cos(self.x)])


def coords(p) -> tuple[float, float]:
    """``(x, y)`` of a unit vector: polar angle and azimuth."""
    p = core.spoint(p)
    return math.atan2(math.hypot(p[0], p[1]), p[2]), math.atan2(p[1], p[0])


def embed(x: float, y: float) -> np.ndarray:
    s = math.sin(x)
    return np.array([s * math.cos(y), s * math.sin(y), math.cos(x)])


def path_from_points(P: np.ndarray, t=None) -> SurfacePath:
    """Chart coordinates of ambient samples, azimuth unwrapped."""
    P = np.asarray(P, dtype=float)
    x = np.arctan2(np.hypot(P[:, 0], P[:, 1]), P[:, 2])
    y = np.unwrap(np.arctan2(P[:, 1], P[:, 0]))
    return SurfacePath(x, y, t)


# ------------------------------------------------------------------ length

def _length_once(x: np.ndarray, y: np.ndarray, t: np.ndarray) -> float:
    if len(t) == 2:
        sx, sy = CubicSpline(t, x, bc_type="natural"), CubicSpline(t, y, bc_type="natural")
    else:
        sx, sy = CubicSpline(t, x), CubicSpline(t, y)
    dx, dy = sx.derivative(), sy.derivative()
    a, b = t[:-1], t[1:]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    f = np.sqrt(dx(nodes) ** 2 + (np.sin(sx(nodes)) * dy(nodes)) ** 2)
    return float(np.dot(w, f))


def path_length(p: SurfacePath, gate: float = GATE) -> float:
    """Length of the cubic-spline path through the samples.

    Each spline piece is integrated by 6-point Gauss-Legendre.  With at
    least 5 samples the result is compared against the same computation on
    every other sample; a gap above ``gate`` raises
    :class:`QuadratureNotConverged`.
    """
    if np.any(p.x < SINGULAR_TOL) or np.any(p.x > PI - SINGULAR_TOL):
        raise SingularCoordinate("path touches a pole of the chart")
    full = _length_once(p.x, p.y, p.t)
    if len(p.t) >= 5:
        sl = slice(None, None, 2) if len(p.t) % 2 == 1 else np.r_[0:len(p.t) - 1:2, len(p.t) - 1]
        coarse = _length_once(p.x[sl], p.y[sl], p.t[sl])
        if abs(coarse - full) > gate:
            raise QuadratureNotConverged(
                f"halving the sampling moves the length by {abs(coarse - full):.3e}")
    return full


# ---------------------------------------------------------------- shooting

@dataclass(frozen=True, eq=False)
class GeodesicSolution:
    path: SurfacePath           # in the caller's chart
    length: float
    c: float                    # sin^2 x dy/ds at the start, in the integration chart
    drift: float                # max |sin^2 x dy/ds - c| along the path
    points: np.ndarray          # ambient samples
    frame: np.ndarray = field(default_factory=lambda: np.eye(3))  # caller -> integration chart


def _rhs(u: np.ndarray) -> np.ndarray:
    x, y, dx, dy = u
    s, c = math.sin(x), math.cos(x)
    return np.array([dx, dy, s * c * dy * dy, -2.0 * c / s * dx * dy])


def integrate(x0: float, y0: float, bearing: float, length: float,
              step: float = STEP) -> tuple[np.ndarray, float]:
    """RK4 solution ``(samples (n+1, 4), actual step)`` of the geodesic
    equations; the state is ``(x, y, x', y')``.  Raises
    :class:`SingularCoordinate` if the path gets within the pole margin."""
    n = max(1, math.ceil(length / step - 1e-9))
    h = length / n
    u = np.array([x0, y0, -math.cos(bearing), math.sin(bearing) / math.sin(x0)])
    out = np.empty((n + 1, 4))
    out[0] = u
    for k in range(n):
        k1 = _rhs(u)
        k2 = _rhs(u + 0.5 * h * k1)
        k3 = _rhs(u + 0.5 * h * k2)
        k4 = _rhs(u + h * k3)
        u = u + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not POLE_MARGIN < u[0] < PI - POLE_MARGIN:
            raise SingularCoordinate(f"trajectory reaches polar angle {u[0]:.3f}")
        out[k + 1] = u
    return out, h


def bearing_of(p, v) -> float:
    """Bearing (clockwise from north) of the tangent ``v`` at ``p``."""
    p = core.spoint(p)
    x, y = coords(p)
    north = np.array([-math.cos(x) * math.cos(y), -math.cos(x) * math.sin(y), math.sin(x)])
    east = np.array([-math.sin(y), math.cos(y), 0.0])
    return math.atan2(float(np.dot(v, east)), float(np.dot(v, north)))


def _tangent(p, bearing: float) -> np.ndarray:
    x, y = coords(p)
    north = np.array([-math.cos(x) * math.cos(y), -math.cos(x) * math.sin(y), math.sin(x)])
    east = np.array([-math.sin(y), math.cos(y), 0.0])
    return math.cos(bearing) * north + math.sin(bearing) * east


def _good_frame(p, v) -> np.ndarray:
    """Rotation taking ``p`` to the chart's equator with bearing 45 degrees,
    so the great circle stays at least 45 degrees from both poles."""
    p = core.spoint(p)
    v = v / np.linalg.norm(v)
    e = np.array([1.0, 0.0, 0.0])
    tv = math.sqrt(0.5) * np.array([0.0, 0.0, 1.0]) + math.sqrt(0.5) * np.array([0.0, 1.0, 0.0])
    src = np.column_stack([p, v, np.cross(p, v)])
    dst = np.column_stack([e, tv, np.cross(e, tv)])
    return dst @ src.T


def geodesic_shoot(start, direction, length: float, step: float = STEP,
                   reframe: bool = True) -> GeodesicSolution:
    """Integrate from ``start`` for ``length`` along ``direction``.

    ``start`` is a chart pair ``(x, y)`` or a unit vector; ``direction`` a
    bearing (radians clockwise from north) or an ambient tangent vector.
    """
    if not 0.0 < length < PI:
        raise RangeError(f"length {length} outside (0, pi)")
    start = np.asarray(start, dtype=float)
    p = embed(*start) if start.shape == (2,) else core.spoint(start)
    x0, y0 = coords(p)
    if np.ndim(direction) == 0:
        if not SINGULAR_TOL < x0 < PI - SINGULAR_TOL:
            raise SingularCoordinate("a bearing is undefined at the poles")
        v = _tangent(p, float(direction))
    else:
        v = np.asarray(direction, dtype=float)
        v = v - np.dot(v, p) * p
        v = v / np.linalg.norm(v)
    R = np.eye(3)
    try:
        if not POLE_MARGIN < x0 < PI - POLE_MARGIN:
            raise SingularCoordinate("start too close to a pole of the chart")
        traj, h = integrate(x0, y0, bearing_of(p, v), length, step)
    except SingularCoordinate:
        if not reframe:
            raise
        R = _good_frame(p, v)
        q = R @ p
        xq, yq = coords(q)
        traj, h = integrate(xq, yq, bearing_of(q, R @ v), length, step)
    clair = np.sin(traj[:, 0]) ** 2 * traj[:, 3]
    s = np.sin(traj[:, 0])
    local = np.column_stack([s * np.cos(traj[:, 1]), s * np.sin(traj[:, 1]), np.cos(traj[:, 0])])
    pts = local @ R            # back to the caller's frame (R orthogonal)
    t = np.arange(len(traj)) * h
    return GeodesicSolution(path_from_points(pts, t), length, float(clair[0]),
                            float(np.max(np.abs(clair - clair[0]))), pts, R)


def great_circle_point(p, v, s: float) -> np.ndarray:
    """Closed form: the point at distance ``s`` from ``p`` along tangent ``v``."""
    p = core.spoint(p)
    v = np.asarray(v, dtype=float)
    v = v - np.dot(v, p) * p
    v = v / np.linalg.norm(v)
    return math.cos(s) * p + math.sin(s) * v


def geodesic_connect(p, q, step: float = STEP, tol: float = 1e-13,
                     max_iter: int = 20) -> GeodesicSolution:
    """Shooting solution of the boundary problem from ``p`` to ``q``.

    The initial direction and length come from the closed form; Newton steps
    on (direction angle, length) then drive the integrated endpoint onto
    ``q``, with the Jacobian taken by finite differences.
    """
    p, q = core.spoint(p), core.spoint(q)
    if np.linalg.norm(np.cross(p, q)) < 1e-12:
        if np.dot(p, q) < 0:
            raise AntipodalEndpoints("every half great circle joins antipodes")
        raise RangeError("endpoints coincide")
    # tangent frame at p; the shooting angle is measured from t0 towards t1
    t0 = core.tangent_towards(p, q)
    t1 = np.cross(p, t0)
    t1 = t1 / np.linalg.norm(t1)
    u0 = core.tangent_towards(q, p)
    u1 = np.cross(q, u0)
    u1 = u1 / np.linalg.norm(u1)

    def miss(z):
        a, L = z
        sol = geodesic_shoot(p, math.cos(a) * t0 + math.sin(a) * t1, L, step)
        e = sol.points[-1] - q
        return np.array([float(e @ u1), float(e @ u0)]), sol

    z = np.array([0.0, core.dist(p, q)])
    for _ in range(max_iter):
        r, sol = miss(z)
        if np.linalg.norm(r) < tol:
            break
        eps = 1e-7
        J = np.empty((2, 2))
        for j in range(2):
            dz = np.zeros(2)
            dz[j] = eps
            J[:, j] = (miss(z + dz)[0] - r) / eps
        z = z - np.linalg.solve(J, r)
    return sol


def order_ratios(start, bearing: float, length: float,
                 steps=(0.1, 0.05, 0.025, 0.0125)) -> tuple[list[float], list[float]]:
    """Endpoint errors against the closed form at each step, and the ratios
    of successive errors (about 16 for a fourth-order method)."""
    start = np.asarray(start, dtype=float)
    p = embed(*start) if start.shape == (2,) else core.spoint(start)
    v = _tangent(p, bearing)
    exact = great_circle_point(p, v, length)
    errs = [float(np.linalg.norm(geodesic_shoot(p, bearing, length, h).points[-1] - exact))
            for h in steps]
    return errs, [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
