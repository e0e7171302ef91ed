"""Locus of apexes of triangles with a fixed base and a fixed area.

Two independent constructions of the same small circle are provided, one
through the isosceles triangle on the base (Euler) and one through the
antipodes of the base's endpoint and midpoint (Lexell), plus the lemmas used
along the way and the planar analogue.

Orientation convention: the triangle ``A, B, V`` is counted with
``det(A, B, V) > 0``.  The apexes of area ``area`` fill the arc of the
returned circle lying on that side of the base's great circle; the arc ends
at the antipodes of ``A`` and ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .area import vertex_area
from .errors import (
    ArcMissesCircle,
    DegenerateBase,
    InvalidArea,
    NotConcyclic,
    RangeError,
)

PI = math.pi
HALF_PI = 0.5 * math.pi


@dataclass(frozen=True, eq=False)
class LexellConstruction:
    A: np.ndarray
    B: np.ndarray
    area: float
    P: np.ndarray        # apex of the isosceles triangle on the base
    p: np.ndarray        # its antipode, the circle's pole
    phi: float           # base angle of the isosceles triangle
    radius: float
    O: np.ndarray        # antipode of A
    C: np.ndarray        # midpoint of AB
    M: np.ndarray        # antipode of C


@dataclass(frozen=True, eq=False)
class LexellLocus:
    circle: core.SmallCircle
    construction: LexellConstruction | None = None

    @property
    def base_normal(self) -> np.ndarray:
        c = self.construction
        return core.spoint(np.cross(c.A, c.B))

    def on_locus_arc(self, V, tol: float = 1e-9) -> bool:
        """True for points of the circle that are apexes of the target area."""
        return self.circle.contains(V, tol) and float(np.dot(V, self.base_normal)) > tol

    def sample_apexes(self, n: int, margin: float = 1e-3) -> np.ndarray:
        """``n`` points spread along the valid arc, away from its end points."""
        c = self.construction
        t0 = self.circle.parameter(-c.A)
        t1 = self.circle.parameter(-c.B)
        mid = self.circle.point(0.5 * (t0 + t1))
        if np.dot(mid, self.base_normal) < 0:
            t1 += 2 * PI if t1 < t0 else -2 * PI
        span = t1 - t0
        ts = t0 + span * np.linspace(margin, 1.0 - margin, n)
        return np.array([self.circle.point(t) for t in ts])


def _check(A, B, area: float) -> float:
    if not 0.0 < area < 2.0 * PI:
        raise InvalidArea(f"area {area} outside (0, 2 pi)")
    a = core.dist(A, B)
    if not 1e-12 < a < PI - 1e-12:
        raise DegenerateBase("base endpoints coincide or are antipodal")
    return a


def lexell_circle_euler(A, B, area: float) -> LexellLocus:
    """Circle through the isosceles-triangle construction.

    With base angle ``phi = (pi - area) / 2`` the isosceles triangle ``PAB``
    is erected on the side away from the apexes (reflected across the base
    when ``phi < 0``); the
    locus is the circle around the antipode ``p`` of ``P`` with radius
    ``PA``.
    """
    A, B = core.spoint(A), core.spoint(B)
    a = _check(A, B, area)
    phi = 0.5 * (PI - area)
    C = core.midpoint(A, B)
    n = core.spoint(np.cross(A, B))
    # right triangle A-C-P: legs a/2 and h, angle phi at A
    h = math.atan(math.sin(a / 2) * math.tan(phi))
    P = math.cos(h) * C - math.sin(h) * n
    radius = core.dist(P, A)
    p = -P
    con = LexellConstruction(A, B, area, P, p, phi, radius, -A, C, -C)
    return LexellLocus(core.SmallCircle(p, radius), con)


def lexell_circle_lexell(A, B, area: float) -> LexellLocus:
    """Circle through the antipode construction.

    ``O = -A`` and ``M = -C`` (``C`` the base midpoint) lie on the base's
    great circle at distance ``a/2``.  The great circle through ``O`` making
    angle ``pi/2 - delta`` with ``OM`` meets the perpendicular bisector of the
    base at the pole, and the circle passes through ``O``.  ``delta`` is half
    the triangle area; the equivalence with :func:`lexell_circle_euler`
    confirms that convention.
    """
    A, B = core.spoint(A), core.spoint(B)
    _check(A, B, area)
    delta = 0.5 * area
    O, C = -A, core.midpoint(A, B)
    M = -C
    n = core.spoint(np.cross(A, B))
    base = core.GreatCircle(n)
    bisector = core.perpendicular_at(base, C)
    t_om = core.tangent_towards(O, M)
    # rotate towards the apex side by pi/2 - delta (away from it once delta > pi/2)
    t_op = math.cos(HALF_PI - delta) * t_om + math.sin(HALF_PI - delta) * n
    g_op = core.GreatCircle(np.cross(O, t_op))
    q1, q2 = core.intersect(g_op, bisector)
    pole = q1 if core.dist(q1, M) < core.dist(q2, M) else q2
    radius = core.dist(pole, O)
    phi = 0.5 * (PI - area)
    con = LexellConstruction(A, B, area, -pole, pole, phi, radius, O, C, M)
    return LexellLocus(core.SmallCircle(pole, radius), con)


def radius_printed(a: float, area: float) -> float:
    """Radius from ``tan x = tan(a/2) / tan(area/2)``, the form quoted for
    Euler's construction.  It disagrees with both constructions; kept for
    comparison only."""
    return math.atan2(math.tan(a / 2), math.tan(area / 2))


def radius_closed_form(a: float, area: float) -> float:
    """Radius of the locus, ``tan x = tan(a/2) / sin(area/2)``."""
    return math.atan2(math.tan(a / 2), math.sin(area / 2))


# ------------------------------------------------------------------ lemmas

def parallelogram_lemma_check(g: core.GreatCircle, d: float, E, e,
                              tol: float = 1e-12) -> tuple[float, float]:
    """Residuals ``(|eO - EO|, |angle meO - angle NEO|)``.

    ``E`` and ``e`` sit on the two circles at distance ``d`` on opposite sides
    of ``g`` and ``O`` is where the arc ``Ee`` crosses ``g``.  The angles are
    taken between the arc and the circle tangent, pointing one way along the
    circle at ``E`` and the opposite way at ``e`` (alternate angles).
    """
    if d < tol:
        return 0.0, 0.0
    E, e = core.spoint(E), core.spoint(e)
    n = g.pole
    if abs(abs(float(np.dot(E, n))) - math.sin(d)) > 1e-9 or \
            abs(abs(float(np.dot(e, n))) - math.sin(d)) > 1e-9:
        raise ArcMissesCircle("points are not on the equidistant circles")
    if np.dot(E, n) * np.dot(e, n) >= 0:
        raise ArcMissesCircle("points lie on the same side of the great circle")
    O = core.spoint(np.cross(np.cross(E, e), n))
    if np.dot(O, E + e) < 0:
        O = -O
    EO, eO = core.dist(E, O), core.dist(e, O)
    if abs(EO + eO - core.dist(E, e)) > 1e-9:
        raise ArcMissesCircle("minor arc Ee does not cross the great circle")
    east_E = core.spoint(np.cross(n, E))
    west_e = -core.spoint(np.cross(n, e))
    ang_E = _angle(core.tangent_towards(E, O), east_E)
    ang_e = _angle(core.tangent_towards(e, O), west_e)
    return abs(eO - EO), abs(ang_e - ang_E)


def _angle(u, v) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def circle_through(p, q, r) -> core.SmallCircle:
    n = np.cross(q - p, r - p)
    if np.linalg.norm(n) < 1e-14:
        raise NotConcyclic("points do not determine a circle")
    n = n / np.linalg.norm(n)
    c = float(np.dot(n, p))
    if c < 0:
        n, c = -n, -c
    return core.SmallCircle(n, math.acos(min(1.0, c)))


def steiner_check(q1, q2, q3, q4, tol: float = 1e-9) -> float:
    """``|(A + C) - (B + D)|`` for a quadrilateral inscribed in a small circle.

    Vertices are given in cyclic order; the circle is fitted through the first
    three and the fourth must lie on it within ``tol``.
    """
    qs = [core.spoint(q) for q in (q1, q2, q3, q4)]
    circ = circle_through(qs[0], qs[1], qs[2])
    off = abs(circ.residual(qs[3]))
    if off > tol:
        raise NotConcyclic(f"fourth point is {off:.3e} off the circle")
    ang = [core.interior_angle(qs[i], qs[i - 1], qs[(i + 1) % 4]) for i in range(4)]
    return abs((ang[0] + ang[2]) - (ang[1] + ang[3]))


# ---------------------------------------------------------------- the plane

@dataclass(frozen=True)
class PlanarLocus:
    point: tuple[float, float]
    direction: tuple[float, float]

    @property
    def height(self) -> float:
        return self.point[1]


def euclid_locus(base_length: float, area: float) -> PlanarLocus:
    """Line of apexes over the base from (0, 0) to (base_length, 0)."""
    if base_length <= 0 or area <= 0:
        raise RangeError("base length and area must be positive")
    return PlanarLocus((0.0, 2.0 * area / base_length), (1.0, 0.0))


def locus_height(locus: LexellLocus) -> float:
    """Height above the base of the apex on the base's perpendicular bisector."""
    c = locus.construction
    n = locus.base_normal
    circ = locus.circle
    # points of the bisector great circle: cos s C + sin s n
    # solve dist(pole, .) = radius for s in (0, pi)
    u = float(np.dot(circ.pole, c.C))
    w = float(np.dot(circ.pole, n))
    R = math.hypot(u, w)
    base = math.atan2(w, u)
    dlt = math.acos(max(-1.0, min(1.0, math.cos(circ.radius) / R)))
    cands = [s for s in (base + dlt, base - dlt, base + dlt - 2 * PI, base - dlt + 2 * PI)
             if 0.0 < s < PI]
    return min(cands)


def apex_area(locus: LexellLocus, V) -> float:
    c = locus.construction
    return vertex_area(c.A, c.B, V)
