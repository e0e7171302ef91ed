"""Area of spherical triangles by several classical formulas.

Every function returns the full area on the unit sphere (steradians), the
same number as the angular excess.  Lexell's coordinate formula is written
for half the area; :func:`area_lexell_xy` doubles it before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .errors import DegenerateHeight, DegenerateTriangle, InvalidElements, RangeError
from .trig import Elements, SphTriangle

PI = math.pi

METHODS = ("excess", "euler_tan", "euler_cos", "lagrange", "puissant_sas", "puissant_alt")


def _elements(t) -> Elements:
    if isinstance(t, SphTriangle):
        return t.elements
    if isinstance(t, Elements):
        return t
    raise TypeError(f"expected SphTriangle or Elements, got {type(t).__name__}")


def excess(e: Elements) -> float:
    return e.A + e.B + e.C - PI


def euler_tan(a: float, b: float, c: float) -> float:
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    rad = 1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc
    return 2.0 * math.atan2(math.sqrt(max(rad, 0.0)), 1.0 + ca + cb + cc)


def euler_cos(a: float, b: float, c: float) -> float:
    num = 1.0 + math.cos(a) + math.cos(b) + math.cos(c)
    den = 4.0 * math.cos(a / 2) * math.cos(b / 2) * math.cos(c / 2)
    return 2.0 * math.acos(max(-1.0, min(1.0, num / den)))


def lagrange(a: float, b: float, c: float) -> float:
    s = 0.5 * (a + b + c)
    prod = math.sin(s) * math.sin(s - b) * math.sin(s - c) * math.sin(s - a)
    num = 2.0 * math.sqrt(max(prod, 0.0))
    return 2.0 * math.atan2(num, 1.0 + math.cos(a) + math.cos(b) + math.cos(c))


def puissant_sas(a: float, b: float, C: float) -> float:
    k = math.tan(a / 2) * math.tan(b / 2)
    return 2.0 * math.atan2(k * math.sin(C), 1.0 + k * math.cos(C))


def puissant_alt(a: float, b: float, c: float, C: float) -> float:
    # cot(d/2) = num / den, with d/2 in (0, pi)
    num = 1.0 + math.cos(a) + math.cos(b) + math.cos(c)
    den = math.sin(a) * math.sin(b) * math.sin(C)
    return 2.0 * math.atan2(den, num)


def area(t, method: str = "excess") -> float:
    """Area of a triangle (``SphTriangle`` or ``Elements``) by ``method``."""
    e = _elements(t)
    if not all(0.0 < v < PI for v in e):
        raise InvalidElements("elements must lie in (0, pi)")
    if method == "excess":
        val = excess(e)
    elif method == "euler_tan":
        val = euler_tan(e.a, e.b, e.c)
    elif method == "euler_cos":
        val = euler_cos(e.a, e.b, e.c)
    elif method == "lagrange":
        val = lagrange(e.a, e.b, e.c)
    elif method == "puissant_sas":
        val = puissant_sas(e.a, e.b, e.C)
    elif method == "puissant_alt":
        val = puissant_alt(e.a, e.b, e.c, e.C)
    else:
        raise ValueError(f"unknown area method {method!r}")
    if not 0.0 < val < 2.0 * PI:
        raise InvalidElements(f"area {val} outside (0, 2 pi)")
    return val


def vertex_area(A, B, C) -> float:
    """Area straight from vertex vectors (solid-angle formula), unsigned."""
    num = abs(core.triple(A, B, C))
    den = 1.0 + np.dot(A, B) + np.dot(B, C) + np.dot(C, A)
    return 2.0 * math.atan2(num, float(den))


def signed_vertex_area(A, B, C) -> float:
    """Area with the sign of the orientation of ``A, B, C``."""
    num = core.triple(A, B, C)
    den = 1.0 + np.dot(A, B) + np.dot(B, C) + np.dot(C, A)
    return 2.0 * math.atan2(num, float(den))


# ------------------------------------------------------------ Lexell's formula

@dataclass(frozen=True)
class LexellXY:
    """Apex position relative to the base midpoint.

    ``a`` is half the base (the distance from the midpoint to either end),
    ``x`` the offset of the foot of the altitude along the base from the
    midpoint, ``y`` the altitude.
    """

    a: float
    x: float
    y: float

    def __post_init__(self):
        if not 0.0 < self.a <= PI / 2:
            raise RangeError(f"half-base {self.a} outside (0, pi/2]")
        if not 0.0 <= self.y <= PI / 2:
            raise RangeError(f"height {self.y} outside [0, pi/2]")


def area_lexell_xy(c: LexellXY, tol: float = 1e-12) -> float:
    if c.y <= tol:
        raise DegenerateHeight("apex on the base line")
    # cot(d) = (cos y cos x + cos a) / (sin a sin y), full area = 2 d
    d = math.atan2(math.sin(c.a) * math.sin(c.y),
                   math.cos(c.y) * math.cos(c.x) + math.cos(c.a))
    return 2.0 * d


def lexell_xy_of(t: SphTriangle) -> LexellXY:
    """Coordinates of apex ``C`` over base ``AB`` of a triangle."""
    n = core.spoint(np.cross(t.A, t.B))
    mid = core.midpoint(t.A, t.B)
    along = core.spoint(np.cross(n, mid))  # tangent at mid pointing to B
    foot = t.C - np.dot(t.C, n) * n
    y = math.asin(min(1.0, abs(float(np.dot(t.C, n)))))
    x = math.atan2(float(np.dot(foot, along)), float(np.dot(foot, mid)))
    return LexellXY(t.c / 2.0, x, y)


def lexell_reconstruct(c: LexellXY) -> SphTriangle:
    """Vertices for Lexell coordinates: base on the equator centred at lon 0."""
    A = np.array([math.cos(c.a), -math.sin(c.a), 0.0])
    B = np.array([math.cos(c.a), math.sin(c.a), 0.0])
    V = np.array([math.cos(c.y) * math.cos(c.x), math.cos(c.y) * math.sin(c.x), math.sin(c.y)])
    return SphTriangle(A, B, V)


# --------------------------------------------------------------- lunes, dA

def lune_area(A: float) -> float:
    if not 0.0 < A <= PI:
        raise RangeError(f"lune angle {A} outside (0, pi]")
    return 2.0 * A


def apex_from_base_angles(A, B, phi: float, psi: float, side: int = 1) -> np.ndarray:
    """Apex of the triangle on base ``AB`` with base angles ``phi`` at ``A``
    and ``psi`` at ``B``, on the side ``sign(det(A, B, apex)) = side``."""
    n = side * core.spoint(np.cross(A, B))
    # direction at A rotated from AB towards n by phi, likewise at B
    dA = math.cos(phi) * core.tangent_towards(A, B) + math.sin(phi) * n
    dB = math.cos(psi) * core.tangent_towards(B, A) + math.sin(psi) * n
    gA = core.GreatCircle(np.cross(A, dA))
    gB = core.GreatCircle(np.cross(B, dB))
    z1, z2 = core.intersect(gA, gB)
    return z1 if np.dot(z1, n) > 0 else z2


def area_differential_check(t: SphTriangle, dphi: float, dpsi: float) -> float:
    """First-order check of ``dArea = dphi (1 - cos x) + dpsi (1 - cos y)``.

    The apex ``C`` is moved so that the base angles at ``A`` and ``B`` grow by
    ``dphi`` and ``dpsi``; ``x = AC`` and ``y = BC``.  Returns the absolute gap
    between the exact area change and the first-order prediction.
    """
    if max(abs(dphi), abs(dpsi)) > 1e-4:
        raise RangeError("perturbations must be at most 1e-4")
    if dphi == 0.0 and dpsi == 0.0:
        return 0.0
    phi, psi, _ = t.angles
    side = t.orientation
    if min(phi + dphi, psi + dpsi) <= 0.0 or phi + psi + dphi + dpsi >= 2 * PI:
        raise DegenerateTriangle("perturbed base angles leave the valid range")
    try:
        Z = apex_from_base_angles(t.A, t.B, phi + dphi, psi + dpsi, side)
    except Exception as exc:  # coincident great circles
        raise DegenerateTriangle(str(exc)) from exc
    before = vertex_area(t.A, t.B, t.C)
    after = vertex_area(t.A, t.B, Z)
    x, y = t.b, t.a
    predicted = dphi * (1.0 - math.cos(x)) + dpsi * (1.0 - math.cos(y))
    return abs((after - before) - predicted)
