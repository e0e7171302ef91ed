"""Spherical primitives on the unit sphere.

Points are plain ``numpy`` arrays of shape ``(3,)`` holding unit vectors;
:func:`spoint` builds and validates them. Circles and arcs are small frozen
dataclasses. All angles are in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentCircles,
    DegenerateInput,
    InvalidDistance,
    PointNotOnCircle,
    RangeError,
)

TOL = 1e-9
HALF_PI = 0.5 * math.pi

NORTH = np.array([0.0, 0.0, 1.0])
SOUTH = np.array([0.0, 0.0, -1.0])


def spoint(x, y=None, z=None) -> np.ndarray:
    """Return the unit vector along ``(x, y, z)``.

    Accepts either three scalars or a single length-3 sequence. Raises
    :class:`DegenerateInput` for the zero vector.
    """
    if y is None:
        v = np.asarray(x, dtype=float).reshape(3)
    else:
        v = np.array([x, y, z], dtype=float)
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n < 1e-300:
        raise DegenerateInput("cannot normalize a zero or non-finite vector")
    return v / n


def is_unit(p, tol: float = 1e-12) -> bool:
    return abs(float(np.dot(p, p)) - 1.0) <= tol


@dataclass(frozen=True)
class GeoCoord:
    lat: float
    lon: float

    def __post_init__(self):
        if not -HALF_PI - 1e-15 <= self.lat <= HALF_PI + 1e-15:
            raise RangeError(f"latitude {self.lat} outside [-pi/2, pi/2]")
        if not -math.pi < self.lon <= math.pi:
            raise RangeError(f"longitude {self.lon} outside (-pi, pi]")


def wrap_lon(lon: float) -> float:
    """Wrap a longitude into (-pi, pi]."""
    w = math.remainder(lon, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


def from_geo(g: GeoCoord) -> np.ndarray:
    cl = math.cos(g.lat)
    return np.array([cl * math.cos(g.lon), cl * math.sin(g.lon), math.sin(g.lat)])


def to_geo(p) -> GeoCoord:
    x, y, z = (float(c) for c in p)
    lat = math.atan2(z, math.hypot(x, y))
    if math.hypot(x, y) < 1e-15:
        return GeoCoord(lat, 0.0)
    return GeoCoord(lat, wrap_lon(math.atan2(y, x)))


def dist(p, q) -> float:
    """Angular distance in [0, pi].

    Uses ``atan2(|p x q|, p . q)``, which agrees with the clamped arccos of
    the dot product but keeps full precision near 0 and pi.
    """
    return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(np.dot(p, q)))


def antipode(p) -> np.ndarray:
    return -np.asarray(p, dtype=float)


def _canonical_sign(n: np.ndarray) -> np.ndarray:
    return n if tuple(n) >= tuple(-n) else -n


@dataclass(frozen=True, eq=False)
class GreatCircle:
    pole: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pole", _canonical_sign(spoint(self.pole)))

    @property
    def radius(self) -> float:
        return HALF_PI

    def contains(self, p, tol: float = TOL) -> bool:
        return abs(float(np.dot(self.pole, p))) <= tol

    def same_as(self, other: "GreatCircle", tol: float = TOL) -> bool:
        return 1.0 - abs(float(np.dot(self.pole, other.pole))) <= tol

    def point(self, t: float) -> np.ndarray:
        """Point at parameter ``t`` along the circle (fixed orthonormal frame)."""
        u, w = tangent_basis(self.pole)
        return math.cos(t) * u + math.sin(t) * w

    def sample(self, n: int) -> np.ndarray:
        u, w = tangent_basis(self.pole)
        t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        return np.outer(np.cos(t), u) + np.outer(np.sin(t), w)


@dataclass(frozen=True, eq=False)
class SmallCircle:
    """Points at angular distance ``radius`` from ``pole``.

    Stored in canonical form, radius <= pi/2; a circle given with a larger
    radius is replaced by the same point set around the antipodal pole.
    """

    pole: np.ndarray
    radius: float

    def __post_init__(self):
        if not 0.0 < self.radius < math.pi:
            raise RangeError(f"radius {self.radius} outside (0, pi)")
        p = spoint(self.pole)
        r = float(self.radius)
        if r > HALF_PI:
            p, r = -p, math.pi - r
        object.__setattr__(self, "pole", p)
        object.__setattr__(self, "radius", r)

    def residual(self, p) -> float:
        """Signed angular offset of ``p`` from the circle."""
        return dist(self.pole, p) - self.radius

    def contains(self, p, tol: float = TOL) -> bool:
        return abs(self.residual(p)) <= tol

    def same_as(self, other: "SmallCircle", tol: float = TOL) -> bool:
        return (
            dist(self.pole, other.pole) <= tol and abs(self.radius - other.radius) <= tol
        )

    def point(self, t: float) -> np.ndarray:
        u, w = tangent_basis(self.pole)
        s, c = math.sin(self.radius), math.cos(self.radius)
        return c * self.pole + s * (math.cos(t) * u + math.sin(t) * w)

    def parameter(self, p) -> float:
        """Inverse of :meth:`point` for a point on (or near) the circle."""
        u, w = tangent_basis(self.pole)
        return math.atan2(float(np.dot(p, w)), float(np.dot(p, u)))

    def sample(self, n: int, t0: float = 0.0, t1: float = 2.0 * math.pi) -> np.ndarray:
        u, w = tangent_basis(self.pole)
        t = np.linspace(t0, t1, n, endpoint=(t1 - t0) < 2.0 * math.pi)
        s, c = math.sin(self.radius), math.cos(self.radius)
        return c * self.pole + s * (np.outer(np.cos(t), u) + np.outer(np.sin(t), w))


@dataclass(frozen=True, eq=False)
class Arc:
    """Minor great-circle arc from ``a`` to ``b``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a, b = spoint(self.a), spoint(self.b)
        if np.linalg.norm(np.cross(a, b)) < 1e-12:
            raise DegenerateInput("arc endpoints coincide or are antipodal")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return dist(self.a, self.b)

    def sample(self, n: int) -> np.ndarray:
        return slerp(self.a, self.b, np.linspace(0.0, 1.0, n))


def tangent_basis(n) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair ``(u, w)`` with ``u x w = n``."""
    n = np.asarray(n, dtype=float)
    helper = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = np.cross(helper, n)
    u /= np.linalg.norm(u)
    w = np.cross(n, u)
    return u, w


def slerp(p, q, t) -> np.ndarray:
    """Points along the minor arc ``p -> q``; ``t`` is a scalar or array in [0, 1]."""
    theta = dist(p, q)
    t = np.asarray(t, dtype=float)
    if theta < 1e-15:
        return np.broadcast_to(p, t.shape + (3,)).copy()
    s = math.sin(theta)
    out = (np.sin((1.0 - t) * theta)[..., None] * p + np.sin(t * theta)[..., None] * q) / s
    return out


def great_circle_through(p, q) -> GreatCircle:
    n = np.cross(p, q)
    if np.linalg.norm(n) < 1e-12:
        raise DegenerateInput("points coincide or are antipodal: no unique great circle")
    return GreatCircle(n)


def intersect(g1: GreatCircle, g2: GreatCircle) -> tuple[np.ndarray, np.ndarray]:
    """The antipodal pair common to two distinct great circles."""
    x = np.cross(g1.pole, g2.pole)
    if np.linalg.norm(x) < 1e-12:
        raise CoincidentCircles("great circles coincide")
    x = x / np.linalg.norm(x)
    return x, -x


def midpoint(p, q) -> np.ndarray:
    s = np.asarray(p, dtype=float) + np.asarray(q, dtype=float)
    if np.linalg.norm(s) < 1e-12:
        raise DegenerateInput("antipodal points have no unique midpoint")
    return s / np.linalg.norm(s)


def perpendicular_at(g: GreatCircle, p, tol: float = TOL) -> GreatCircle:
    """Great circle through ``p`` crossing ``g`` at right angles."""
    if not g.contains(p, tol):
        raise PointNotOnCircle("point is not on the great circle")
    return GreatCircle(np.cross(p, g.pole))


def equidistant_circles(g: GreatCircle, d: float) -> tuple[SmallCircle, SmallCircle]:
    """The two small circles at distance ``d`` on either side of ``g``."""
    if not 0.0 < d < HALF_PI:
        raise InvalidDistance(f"distance {d} outside (0, pi/2)")
    return SmallCircle(g.pole, HALF_PI - d), SmallCircle(-g.pole, HALF_PI - d)


def distance_to_great_circle(g: GreatCircle, p) -> float:
    return math.asin(min(1.0, abs(float(np.dot(g.pole, p)))))


def interior_angle(vertex, p, q) -> float:
    """Angle at ``vertex`` between the arcs towards ``p`` and ``q``, in [0, pi]."""
    n1 = np.cross(vertex, p)
    n2 = np.cross(vertex, q)
    if np.linalg.norm(n1) < 1e-14 or np.linalg.norm(n2) < 1e-14:
        raise DegenerateInput("vertex coincides with or is antipodal to an endpoint")
    return math.atan2(float(np.linalg.norm(np.cross(n1, n2))), float(np.dot(n1, n2)))


def tangent_towards(p, q) -> np.ndarray:
    """Unit tangent at ``p`` of the minor arc towards ``q``."""
    t = np.asarray(q, dtype=float) - np.dot(p, q) * np.asarray(p, dtype=float)
    nt = np.linalg.norm(t)
    if nt < 1e-15:
        raise DegenerateInput("direction undefined for coincident or antipodal points")
    return t / nt


def destination(p, direction, s: float) -> np.ndarray:
    """Walk distance ``s`` from ``p`` along the unit tangent ``direction``."""
    return math.cos(s) * np.asarray(p) + math.sin(s) * np.asarray(direction)


def rotate(v, axis, angle: float) -> np.ndarray:
    """Rodrigues rotation of ``v`` about unit ``axis`` (right-hand rule)."""
    v = np.asarray(v, dtype=float)
    k = np.asarray(axis, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(k, v) * s + k * np.dot(k, v) * (1.0 - c)


def triple(a, b, c) -> float:
    return float(np.dot(a, np.cross(b, c)))


def random_points(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
