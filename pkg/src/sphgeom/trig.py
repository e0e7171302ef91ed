"""Spherical triangles: elements, solvers, polar duality.

Sides ``a, b, c`` are opposite the vertices ``A, B, C``; the same capital
letters name the interior angles.  The general solver leans on three
relations (sine rule, the five-part rule and the side cosine rule) written
in ``atan2`` form so that small and near-pi elements keep full precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import core
from .errors import Degenerate, DegenerateInput, Inconsistent, RangeError

PI = math.pi
HALF_PI = 0.5 * math.pi
SOLVE_TOL = 1e-10


class Elements(NamedTuple):
    a: float
    b: float
    c: float
    A: float
    B: float
    C: float

    def polar(self) -> "Elements":
        return Elements(PI - self.A, PI - self.B, PI - self.C,
                        PI - self.a, PI - self.b, PI - self.c)

    @property
    def excess(self) -> float:
        return self.A + self.B + self.C - PI


@dataclass(frozen=True, eq=False)
class SphTriangle:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in "ABC":
            object.__setattr__(self, name, core.spoint(getattr(self, name)))
        if abs(core.triple(self.A, self.B, self.C)) < 1e-14:
            raise DegenerateInput("vertices lie on one great circle")
        for s in (self.a, self.b, self.c):
            if not 0.0 < s < PI:
                raise DegenerateInput("side outside (0, pi)")

    @cached_property
    def a(self) -> float:
        return core.dist(self.B, self.C)

    @cached_property
    def b(self) -> float:
        return core.dist(self.C, self.A)

    @cached_property
    def c(self) -> float:
        return core.dist(self.A, self.B)

    @cached_property
    def angles(self) -> tuple[float, float, float]:
        return (core.interior_angle(self.A, self.B, self.C),
                core.interior_angle(self.B, self.C, self.A),
                core.interior_angle(self.C, self.A, self.B))

    @property
    def elements(self) -> Elements:
        return Elements(self.a, self.b, self.c, *self.angles)

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C])

    @property
    def orientation(self) -> int:
        return 1 if core.triple(self.A, self.B, self.C) > 0 else -1


def realize(e: Elements) -> SphTriangle:
    """Vertex coordinates for an element set: A at (1,0,0), B in z=0, C above."""
    A = np.array([1.0, 0.0, 0.0])
    B = np.array([math.cos(e.c), math.sin(e.c), 0.0])
    t = np.array([0.0, math.cos(e.A), math.sin(e.A)])
    C = math.cos(e.b) * A + math.sin(e.b) * t
    return SphTriangle(A, B, C)


# ---------------------------------------------------------------- validation

def _check_range(**vals: float) -> None:
    for k, v in vals.items():
        if not (0.0 < v < PI):
            raise RangeError(f"{k}={v} outside (0, pi)")


def basic_residuals(e: Elements) -> tuple[float, float, float]:
    """Residuals of the sine rule, the five-part rule and the cosine rule."""
    a, b, c, A, B, C = e
    sine = max(abs(math.sin(A) * math.sin(b) - math.sin(B) * math.sin(a)),
               abs(math.sin(C) * math.sin(a) - math.sin(A) * math.sin(c)))
    five = abs(math.cos(A) * math.sin(c)
               - (math.cos(a) * math.sin(b) - math.sin(a) * math.cos(b) * math.cos(C)))
    cosr = abs(math.cos(c) - (math.cos(a) * math.cos(b)
                              + math.sin(a) * math.sin(b) * math.cos(C)))
    return sine, five, cosr


def _valid(e: Elements, tol: float = SOLVE_TOL) -> bool:
    if not all(0.0 < v < PI for v in e):
        return False
    if e.A + e.B + e.C <= PI:
        return False
    return max(basic_residuals(e)) <= tol


# -------------------------------------------------------------- general cases

def _sss(a: float, b: float, c: float) -> Elements:
    _check_range(a=a, b=b, c=c)
    s = 0.5 * (a + b + c)
    if not (s < PI and s - a > 0 and s - b > 0 and s - c > 0):
        raise Inconsistent("sides violate the spherical triangle inequalities")
    ss, sa, sb, sc = math.sin(s), math.sin(s - a), math.sin(s - b), math.sin(s - c)
    A = 2.0 * math.atan2(math.sqrt(sb * sc), math.sqrt(ss * sa))
    B = 2.0 * math.atan2(math.sqrt(sa * sc), math.sqrt(ss * sb))
    C = 2.0 * math.atan2(math.sqrt(sa * sb), math.sqrt(ss * sc))
    return Elements(a, b, c, A, B, C)


def _sas(a: float, b: float, C: float) -> Elements:
    _check_range(a=a, b=b, C=C)
    sa, ca, sb, cb = math.sin(a), math.cos(a), math.sin(b), math.cos(b)
    sC, cC = math.sin(C), math.cos(C)
    # sin c cos A and sin c sin A, from the five-part and sine rules
    ycA, ysA = ca * sb - sa * cb * cC, sa * sC
    ycB, ysB = cb * sa - sb * ca * cC, sb * sC
    c = math.atan2(math.hypot(ycA, ysA), ca * cb + sa * sb * cC)
    A = math.atan2(ysA, ycA)
    B = math.atan2(ysB, ycB)
    return Elements(a, b, c, A, B, C)


def _asa(A: float, B: float, c: float) -> Elements:
    p = _sas(PI - A, PI - B, PI - c)
    return p.polar()


def _aaa(A: float, B: float, C: float) -> Elements:
    _check_range(A=A, B=B, C=C)
    if A + B + C <= PI:
        raise Inconsistent("angle sum must exceed pi")
    return _sss(PI - A, PI - B, PI - C).polar()


def _ssa(a: float, b: float, A: float) -> list[Elements]:
    """Side ``a`` opposite the known angle ``A``; side ``b`` adjacent to it."""
    _check_range(a=a, b=b, A=A)
    sinB = math.sin(b) * math.sin(A) / math.sin(a)
    if sinB > 1.0 + 1e-12:
        return []
    B1 = math.asin(min(1.0, sinB))
    out: list[Elements] = []
    for B in (B1, PI - B1):
        if not 0.0 < B < PI:
            continue
        # remaining side from the two cosine rules written as a rotation:
        # cos a = cos b cos c + sin b cos A sin c
        R = math.hypot(math.cos(b), math.sin(b) * math.cos(A))
        phi = math.atan2(math.sin(b) * math.cos(A), math.cos(b))
        ratio = math.cos(a) / R
        if abs(ratio) > 1.0 + 1e-12:
            continue
        delta = math.acos(max(-1.0, min(1.0, ratio)))
        for c in (phi + delta, phi - delta, phi + delta + 2 * PI, phi - delta + 2 * PI):
            if not 0.0 < c < PI:
                continue
            cand = _from_sas_relabel(b, c, A)
            if abs(cand.a - a) <= 1e-9 and abs(cand.B - B) <= 1e-9 and _valid(cand):
                out.append(cand)
    return _dedupe(sorted(out, key=lambda e: e.B))


def _from_sas_relabel(b: float, c: float, A: float) -> Elements:
    """SAS with sides ``b, c`` around angle ``A``, returned in standard lettering."""
    r = _sas(b, c, A)  # lettering: r.a=b, r.b=c, r.C=A, r.c=a, r.A=B, r.B=C
    return Elements(r.c, b, c, A, r.A, r.B)


def _saa(A: float, B: float, a: float) -> list[Elements]:
    """Angles ``A, B`` with side ``a`` opposite ``A``."""
    return _dedupe(sorted((e.polar() for e in _ssa(PI - A, PI - B, PI - a)),
                          key=lambda e: e.b))


def _dedupe(es: list[Elements], tol: float = 1e-9) -> list[Elements]:
    out: list[Elements] = []
    for e in es:
        if all(max(abs(x - y) for x, y in zip(e, f)) > tol for f in out):
            out.append(e)
    return out


class SolveCase(enum.Enum):
    SSS = "sss"
    SAS = "sas"
    ASA = "asa"
    SAA = "saa"
    SSA = "ssa"
    AAA = "aaa"
    RIGHT = "right"


_CASE_KEYS = {
    SolveCase.SSS: ("a", "b", "c"),
    SolveCase.SAS: ("a", "b", "C"),
    SolveCase.ASA: ("A", "B", "c"),
    SolveCase.SAA: ("A", "B", "a"),
    SolveCase.SSA: ("a", "b", "A"),
    SolveCase.AAA: ("A", "B", "C"),
}


def solve(case: SolveCase | str, **data: float) -> list[Elements]:
    """Solve a spherical triangle from three given elements.

    Keyword names follow the standard lettering, e.g.
    ``solve("sas", a=1.0, b=0.7, C=0.4)``. ``SSA`` takes the side ``a``
    opposite the given angle ``A`` plus the adjacent side ``b`` and returns
    zero, one or two solutions ordered by ``B``; ``SAA`` is its polar dual.
    ``RIGHT`` forwards to :func:`solve_right` (C = pi/2).
    """
    case = SolveCase(case)
    if case is SolveCase.RIGHT:
        return solve_right(**data)
    keys = _CASE_KEYS[case]
    if set(data) != set(keys):
        raise TypeError(f"{case.name} expects exactly {keys}, got {sorted(data)}")
    v = [float(data[k]) for k in keys]
    if case is SolveCase.SSS:
        out = [_sss(*v)]
    elif case is SolveCase.SAS:
        out = [_sas(*v)]
    elif case is SolveCase.ASA:
        out = [_asa(*v)]
    elif case is SolveCase.AAA:
        out = [_aaa(*v)]
    elif case is SolveCase.SSA:
        out = _ssa(*v)
    else:
        out = _saa(*v)
    out = [e for e in out if _valid(e)]
    if not out:
        raise Inconsistent(f"no spherical triangle fits {case.name} data {data}")
    return out


# ------------------------------------------------------------ right triangles

def _right_from_legs(a: float, b: float) -> Elements:
    # cos c = cos a cos b, tan A = tan a / sin b, tan B = tan b / sin a
    cc = math.cos(a) * math.cos(b)
    c = math.atan2(math.sqrt(max(0.0, (1.0 - cc) * (1.0 + cc))), cc)
    A = math.atan2(math.sin(a), math.cos(a) * math.sin(b))
    B = math.atan2(math.sin(b), math.cos(b) * math.sin(a))
    return Elements(a, b, c, A, B, HALF_PI)


def _zero(x: float) -> bool:
    return abs(x) <= 1e-12


def solve_right(tol: float = SOLVE_TOL, **given: float) -> list[Elements]:
    """Right triangle with ``C = pi/2`` from two of ``a, b, c, A, B``.

    ``c`` is the hypotenuse, ``a`` and ``b`` the legs.  Ambiguous data return
    every solution; data that leave an element undetermined (the relation in
    use collapses to 0 = 0) raise :class:`Degenerate`.
    """
    keys = frozenset(given)
    if len(keys) != 2 or not keys <= {"a", "b", "c", "A", "B"}:
        raise TypeError("give exactly two of a, b, c, A, B")
    _check_range(**given)
    # by the symmetry a<->b, A<->B only half the pairs need code
    if keys in ({"b", "c"}, {"b", "B"}, {"b", "A"}, {"c", "B"}):
        swapped = {{"a": "b", "b": "a", "A": "B", "B": "A", "c": "c"}[k]: v
                   for k, v in given.items()}
        return [Elements(e.b, e.a, e.c, e.B, e.A, e.C)
                for e in solve_right(tol=tol, **swapped)]

    g = given
    legs: list[tuple[float, float]] = []
    if keys == {"a", "b"}:
        legs = [(g["a"], g["b"])]
    elif keys == {"a", "c"}:
        ca, cc = math.cos(g["a"]), math.cos(g["c"])
        if _zero(ca):
            if _zero(cc):
                raise Degenerate("a = c = pi/2 leaves b undetermined")
            raise Inconsistent("a = pi/2 forces c = pi/2")
        r = cc / ca
        if abs(r) > 1.0 + 1e-12:
            raise Inconsistent("|cos c / cos a| > 1")
        legs = [(g["a"], math.acos(max(-1.0, min(1.0, r))))]
    elif keys == {"a", "A"}:
        a, A = g["a"], g["A"]
        # sin a = sin c sin A: two hypotenuse candidates
        sc = math.sin(a) / math.sin(A)
        if sc > 1.0 + 1e-12:
            raise Inconsistent("sin a > sin A")
        if _zero(math.cos(a)) and _zero(math.cos(A)):
            raise Degenerate("a = A = pi/2 leaves b undetermined")
        c1 = math.asin(min(1.0, sc))
        for c in (c1, PI - c1):
            # tan b = sin a ... from cos c = cos a cos b
            if _zero(math.cos(a)):
                continue
            r = math.cos(c) / math.cos(a)
            if abs(r) > 1.0 + 1e-12:
                continue
            legs.append((a, math.acos(max(-1.0, min(1.0, r)))))
    elif keys == {"a", "B"}:
        a, B = g["a"], g["B"]
        # tan b = sin a tan B
        legs = [(a, math.atan2(math.sin(a) * math.sin(B), math.cos(B)))]
    elif keys == {"c", "A"}:
        c, A = g["c"], g["A"]
        if _zero(math.cos(c)) and _zero(math.cos(A)):
            raise Degenerate("c = A = pi/2 leaves the legs undetermined")
        # sin a = sin c sin A, tan b = tan c cos A
        sgn = 1.0 if math.cos(A) * math.sin(c) >= 0 else -1.0
        b = math.atan2(sgn * math.sin(c) * math.cos(A), sgn * math.cos(c))
        if b <= 0.0:
            b += PI
        if _zero(math.cos(b)):
            if not _zero(math.cos(c)):
                raise Inconsistent("b = pi/2 requires c = pi/2")
            a1 = math.asin(min(1.0, math.sin(c) * math.sin(A)))
            legs = [(a1, b), (PI - a1, b)]
        else:
            r = math.cos(c) / math.cos(b)
            if abs(r) > 1.0 + 1e-12:
                raise Inconsistent("no leg satisfies cos c = cos a cos b")
            legs = [(math.acos(max(-1.0, min(1.0, r))), b)]
    elif keys == {"A", "B"}:
        A, B = g["A"], g["B"]
        # cos A = cos a sin B, cos B = cos b sin A
        ra, rb = math.cos(A) / math.sin(B), math.cos(B) / math.sin(A)
        if abs(ra) > 1.0 + 1e-12 or abs(rb) > 1.0 + 1e-12:
            raise Inconsistent("angles admit no right triangle")
        legs = [(math.acos(max(-1.0, min(1.0, ra))), math.acos(max(-1.0, min(1.0, rb))))]

    out = []
    for a, b in legs:
        if not (0.0 < a < PI and 0.0 < b < PI):
            continue
        e = _right_from_legs(a, b)
        if all(abs(getattr(e, k) - v) <= 1e-9 for k, v in given.items()) and _right_ok(e, tol):
            out.append(e)
    out = _dedupe(sorted(out, key=lambda e: e.c))
    if not out:
        raise Inconsistent(f"no right spherical triangle fits {given}")
    return out


def _right_ok(e: Elements, tol: float) -> bool:
    return (abs(math.cos(e.c) - math.cos(e.a) * math.cos(e.b)) <= tol
            and abs(math.sin(e.a) - math.sin(e.c) * math.sin(e.A)) <= tol
            and abs(math.sin(e.b) - math.sin(e.c) * math.sin(e.B)) <= tol
            and _valid(e, tol))


# ---------------------------------------------------------------------- polar

def polar(t: SphTriangle) -> SphTriangle:
    """Polar triangle: each vertex is the pole of the opposite side, on the
    same side of that side as the original vertex."""
    def pole(v, p, q):
        n = core.spoint(np.cross(p, q))
        return n if np.dot(n, v) > 0 else -n
    return SphTriangle(pole(t.A, t.B, t.C), pole(t.B, t.C, t.A), pole(t.C, t.A, t.B))


# -------------------------------------------------------------- platonic solids

# (faces per vertex q, edges per face p)
PLATONIC = {
    "tetrahedron": (3, 3),
    "cube": (3, 4),
    "octahedron": (4, 3),
    "dodecahedron": (3, 5),
    "icosahedron": (5, 3),
}


def platonic_dihedral(solid: str) -> float:
    """Dihedral angle from the spherical vertex figure.

    Around a vertex ``q`` regular ``p``-gons meet; on a small sphere centred
    there they cut a regular spherical ``q``-gon whose sides are the face
    angles and whose angles are the dihedral angle.  For ``q = 3`` that
    polygon is a triangle solved by SSS; otherwise it is split into ``2q``
    right triangles around its centre.
    """
    try:
        q, p = PLATONIC[solid]
    except KeyError:
        raise RangeError(f"unknown solid {solid!r}") from None
    face_angle = PI * (p - 2) / p
    if q == 3:
        return solve("sss", a=face_angle, b=face_angle, c=face_angle)[0].A
    # leg a = half a side, opposite the central angle pi/q; angle B is half
    # the polygon angle.  Keep the branch whose circumradius is below pi/2.
    sols = solve_right(a=face_angle / 2.0, A=PI / q)
    e = min(sols, key=lambda e: e.c)
    return 2.0 * e.B
