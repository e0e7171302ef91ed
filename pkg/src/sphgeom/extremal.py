"""Fuss's extremal-vertex problems and spherical ellipses.

A Fuss instance fixes a base ``AB`` and a great circle carrying the third
vertex ``V``.  Each objective is sampled around the whole circle, every
local extremum is bracketed on the grid and polished by golden-section
search, and the best one of the requested kind is flagged as the optimum.

A spherical ellipse is the set of points whose distances to two foci add up
to a constant ``2s``; it is the trace on the sphere of a quadric cone with
apex at the centre.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import core
from .errors import DegenerateFoci, DegenerateInstance, EmptyLocus

PI = math.pi
TWO_PI = 2.0 * math.pi
GRID = 4096


class Objective(str, enum.Enum):
    MAX_ANGLE = "max_angle"
    MIN_SIDE_SUM = "min_side_sum"
    MAX_AREA = "max_area"


@dataclass(frozen=True, eq=False)
class FussInstance:
    A: np.ndarray
    B: np.ndarray
    constraint: core.GreatCircle

    def __post_init__(self):
        A, B = core.spoint(self.A), core.spoint(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if not 1e-12 < core.dist(A, B) < PI - 1e-12:
            raise DegenerateInstance("base endpoints coincide or are antipodal")
        if self.constraint.contains(A) and self.constraint.contains(B):
            raise DegenerateInstance("base lies on the constraint circle")

    @property
    def proper(self) -> bool:
        """False when the constraint meets the closed base segment; then every
        objective peaks at a collapsed triangle (vertex on the base or on its
        antipodal arc)."""
        n = self.constraint.pole
        sa, sb = float(n @ self.A), float(n @ self.B)
        return sa * sb > 0.0 and not (self.constraint.contains(self.A)
                                      or self.constraint.contains(self.B))

    def vertices(self, t: np.ndarray) -> np.ndarray:
        u, w = core.tangent_basis(self.constraint.pole)
        return np.outer(np.cos(t), u) + np.outer(np.sin(t), w)


@dataclass(frozen=True)
class CriticalVertex:
    t: float
    V: np.ndarray
    value: float
    kind: str           # "max" or "min"
    degenerate: bool    # V on the base's great circle
    side: int           # sign of det(A, B, V)


@dataclass(frozen=True)
class FussResult:
    objective: Objective
    critical: list[CriticalVertex]
    optimum: CriticalVertex


def _rowdist(P: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.arctan2(np.linalg.norm(np.cross(P, q), axis=1), P @ q)


def objective_values(inst: FussInstance, objective: Objective, t) -> np.ndarray:
    """Objective at the vertices with parameters ``t`` (vectorised)."""
    V = inst.vertices(np.atleast_1d(np.asarray(t, dtype=float)))
    A, B = inst.A, inst.B
    objective = Objective(objective)
    if objective is Objective.MAX_ANGLE:
        n1, n2 = np.cross(V, A), np.cross(V, B)
        return np.arctan2(np.linalg.norm(np.cross(n1, n2), axis=1), np.sum(n1 * n2, axis=1))
    if objective is Objective.MIN_SIDE_SUM:
        return _rowdist(V, A) + _rowdist(V, B)
    # signed area: the triangle A, B, V counted positive when det(A, B, V) > 0
    det = V @ np.cross(A, B)
    den = 1.0 + float(A @ B) + V @ B + V @ A
    return 2.0 * np.arctan2(det, den)


def _score(objective: Objective) -> float:
    return -1.0 if objective is Objective.MIN_SIDE_SUM else 1.0


def _oriented_only(objective: Objective) -> bool:
    # the angle at V equals the angle at -V, so the two halves of the circle
    # tie; as for the area, only positively oriented triangles compete
    return objective is not Objective.MIN_SIDE_SUM


def fuss_solve(inst: FussInstance, objective, grid: int = GRID) -> FussResult:
    """All local extrema of ``objective`` along the constraint circle.

    Points where the vertex falls on the base's great circle are flagged
    ``degenerate``; for an instance that is not :attr:`FussInstance.proper`
    the optimum is one of them.  Ties go to the smaller parameter.
    Extrema of the requested kind (maxima for the two ``max_`` objectives,
    minima for ``min_side_sum``) are the candidates; the best of them is the
    optimum.  Extrema of the opposite kind are reported for classification.
    """
    objective = Objective(objective)
    sgn = _score(objective)
    ts = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    h = TWO_PI / grid
    s = sgn * objective_values(inst, objective, ts)
    n_base = core.spoint(np.cross(inst.A, inst.B))
    out: list[CriticalVertex] = []
    for i in range(grid):
        sp, sc, sn = s[i - 1], s[i], s[(i + 1) % grid]
        if sc >= sp and sc > sn:
            kind, sign = "max", -1.0   # minimise -score
        elif sc <= sp and sc < sn:
            kind, sign = "min", 1.0
        else:
            continue

        def f(t, sign=sign):
            return sign * sgn * float(objective_values(inst, objective, t)[0])

        t0 = ts[i]
        try:
            r = minimize_scalar(f, bracket=(t0 - h, t0, t0 + h), method="golden",
                                options={"xtol": 1e-12})
        except ValueError:   # flat bracket
            r = minimize_scalar(f, bounds=(t0 - h, t0 + h), method="bounded",
                                options={"xatol": 1e-12})
        t = float(r.x) % TWO_PI
        if t > TWO_PI - 1e-12:
            t = 0.0
        V = inst.vertices(np.array([t]))[0]
        val = float(objective_values(inst, objective, t)[0])
        off = float(V @ n_base)
        out.append(CriticalVertex(t, V, val, "max" if (kind == "max") == (sgn > 0) else "min",
                                  abs(off) < 1e-9, int(np.sign(off)) if abs(off) >= 1e-9 else 0))
    want = "max" if sgn > 0 else "min"
    cands = [c for c in out if c.kind == want]
    if _oriented_only(objective) and any(c.side > 0 for c in cands):
        cands = [c for c in cands if c.side > 0]
    if not cands:
        raise DegenerateInstance("objective is constant along the constraint circle")
    best = max(cands, key=lambda c: sgn * c.value)
    return FussResult(objective, out, best)


def one_sided_differences(inst: FussInstance, objective, t: float,
                          h: float = 1e-5) -> tuple[float, float]:
    """``(f(t) - f(t - h), f(t + h) - f(t))``; opposite signs at an extremum."""
    f = objective_values(inst, objective, np.array([t - h, t, t + h]))
    return float(f[1] - f[0]), float(f[2] - f[1])


def grid_optimum(inst: FussInstance, objective, n: int = 100_000) -> tuple[float, float]:
    """Brute-force ``(t, value)`` of the optimum over ``n`` equally spaced vertices."""
    objective = Objective(objective)
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    s = _score(objective) * objective_values(inst, objective, ts)
    if _oriented_only(objective):
        side = inst.vertices(ts) @ np.cross(inst.A, inst.B)
        if np.any(side > 0):
            s = np.where(side > 0, s, -np.inf)
    i = int(np.argmax(s))
    return float(ts[i]), float(_score(objective) * s[i])


def side_sum_tangency(inst: FussInstance, V, radius: float = 1e-3, n: int = 41) -> float:
    """Smallest ellipse residual along the constraint near ``V``.

    The ellipse has foci ``A``, ``B`` and passes through ``V``; it touches the
    constraint there when the residual keeps one sign nearby, so a result
    ``>= -tiny`` means the circle stays outside the ellipse.
    """
    V = core.spoint(V)
    if not inst.proper:
        raise DegenerateInstance("constraint meets the base; no proper tangency")
    e = SphericalEllipse(inst.A, inst.B, core.dist(V, inst.A) + core.dist(V, inst.B))
    u, w = core.tangent_basis(inst.constraint.pole)
    t0 = math.atan2(float(V @ w), float(V @ u))
    ts = t0 + np.linspace(-radius, radius, n)
    return min(ellipse_residual(e, p) for p in inst.vertices(ts))


# ---------------------------------------------------------------- ellipses

@dataclass(frozen=True, eq=False)
class SphericalEllipse:
    f1: np.ndarray
    f2: np.ndarray
    total: float        # the constant sum 2s

    def __post_init__(self):
        f1, f2 = core.spoint(self.f1), core.spoint(self.f2)
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)
        d = core.dist(f1, f2)
        if d > PI - 1e-12:
            raise DegenerateFoci("antipodal foci")
        if not d < self.total < TWO_PI - d:
            raise EmptyLocus(f"sum {self.total} outside ({d}, {TWO_PI - d})")

    @property
    def centre(self) -> np.ndarray:
        return core.spoint(self.f1 + self.f2)


def ellipse_residual(e: SphericalEllipse, p) -> float:
    p = core.spoint(p)
    return core.dist(p, e.f1) + core.dist(p, e.f2) - e.total


def _rays(e: SphericalEllipse):
    m = e.centre
    if core.dist(e.f1, e.f2) < 1e-12:
        u, w = core.tangent_basis(m)
    else:
        u = core.tangent_towards(m, e.f2)
        w = np.cross(m, u)
    return m, u, w


def ellipse_trace(e: SphericalEllipse, n: int, offset: float = 0.0) -> np.ndarray:
    """``n`` points of the ellipse ordered by bearing around the focal midpoint.

    Along each great circle leaving the midpoint the residual runs from
    ``d - 2s < 0`` at the midpoint to ``2pi - d - 2s > 0`` at its antipode;
    the crossing is found by Brent's method.
    """
    if n < 6:
        raise ValueError("need at least 6 points")
    m, u, w = _rays(e)
    # along p(s) = cos s m + sin s d both dot and cross products with the foci
    # are linear in (cos s, sin s), which keeps the root finding cheap
    mf = [(float(m @ f), np.cross(m, f)) for f in (e.f1, e.f2)]
    out = np.empty((n, 3))
    for k in range(n):
        th = offset + TWO_PI * k / n
        d = math.cos(th) * u + math.sin(th) * w
        parts = [(a, float(d @ f), x, np.cross(d, f)) for (a, x), f in zip(mf, (e.f1, e.f2))]

        def res(s, parts=parts):
            c, sn = math.cos(s), math.sin(s)
            tot = 0.0
            for a, b, x, y in parts:
                v = c * x + sn * y
                tot += math.atan2(math.sqrt(float(v @ v)), c * a + sn * b)
            return tot - e.total

        r = brentq(res, 0.0, PI, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        out[k] = core.spoint(math.cos(r) * m + math.sin(r) * d)
    return out


def fit_cone(points: np.ndarray) -> np.ndarray:
    """Symmetric ``Q`` (unit Frobenius norm) minimising ``sum (p^T Q p)^2``.

    The six independent entries are the right singular vector of the design
    matrix with the smallest singular value.
    """
    P = np.asarray(points, dtype=float)
    if len(P) < 9:
        raise ValueError("need at least 9 points")
    x, y, z = P[:, 0], P[:, 1], P[:, 2]
    D = np.column_stack([x * x, y * y, z * z, 2 * x * y, 2 * x * z, 2 * y * z])
    q = np.linalg.svd(D)[2][-1]
    Q = np.array([[q[0], q[3], q[4]], [q[3], q[1], q[5]], [q[4], q[5], q[2]]])
    return Q / np.linalg.norm(Q)


def cone_residual(Q: np.ndarray, points: np.ndarray) -> float:
    P = np.asarray(points, dtype=float)
    return float(np.max(np.abs(np.einsum("ij,jk,ik->i", P, Q, P))))


def ellipse_cone_check(e: SphericalEllipse, n_fit: int = 24,
                       n_check: int = 100) -> tuple[float, np.ndarray]:
    """``(max |p^T Q p| over fresh points, Q)`` for the fitted central cone."""
    Q = fit_cone(ellipse_trace(e, n_fit))
    fresh = ellipse_trace(e, n_check, offset=0.5 * TWO_PI / n_check + 1e-3)
    return cone_residual(Q, fresh), Q


def cone_sphere_points(Q: np.ndarray, inside, n: int) -> np.ndarray:
    """Points of ``p^T Q p = 0`` on the sphere, one per bearing around ``inside``
    (a point where the form is nonzero)."""
    m = core.spoint(inside)
    u, w = core.tangent_basis(m)
    f0 = float(m @ Q @ m)
    out = []
    for k in range(n):
        th = TWO_PI * k / n
        d = math.cos(th) * u + math.sin(th) * w
        g = lambda s: float((math.cos(s) * m + math.sin(s) * d) @ Q @ (math.cos(s) * m + math.sin(s) * d))
        ss = np.linspace(0.0, PI, 257)
        vals = [g(s) for s in ss]
        j = next(j for j in range(256) if vals[j + 1] * f0 <= 0)
        r = brentq(g, ss[j], ss[j + 1], xtol=1e-15)
        out.append(math.cos(r) * m + math.sin(r) * d)
    return np.array(out)


def plane_factor_residual(Q: np.ndarray, n) -> float:
    """Size of ``Q`` restricted to the plane normal to ``n``.

    Quadratic forms vanishing on a great circle are exactly ``sym(n l^T)``;
    the fit cannot single out ``n n^T`` among them, but every such form is
    zero on the plane, which this measures.
    """
    n = core.spoint(n)
    P = np.eye(3) - np.outer(n, n)
    return float(np.linalg.norm(P @ Q @ P))


def ellipse_degenerate(f1, f2) -> core.GreatCircle:
    """The locus for ``2s = pi``: points equidistant from ``f2`` and ``-f1``."""
    f1, f2 = core.spoint(f1), core.spoint(f2)
    if np.linalg.norm(np.cross(f1, f2)) < 1e-12:
        raise DegenerateFoci("foci coincide or are antipodal")
    return core.GreatCircle(f1 + f2)
