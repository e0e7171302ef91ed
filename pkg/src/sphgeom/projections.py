"""Maps from the sphere to the plane and numerical checks of their properties.

Five standard maps are provided: stereographic (from a pole onto the plane
through the centre), gnomonic (central, onto the tangent plane at a point),
Mercator, Lambert azimuthal equal-area and Lambert cylindrical equal-area.
Local properties are read off a finite-difference Jacobian taken in an
orthonormal tangent frame, so they do not depend on the chart used for the
sphere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import core
from .errors import OutOfDomain, PolarStart

PI = math.pi
HALF_PI = 0.5 * math.pi
FD_STEP = 1e-6
LAT_LIMIT = HALF_PI - 1e-6
NORTH = np.array([0.0, 0.0, 1.0])


class Kind(str, enum.Enum):
    STEREOGRAPHIC = "stereographic"
    GNOMONIC = "gnomonic"
    MERCATOR = "mercator"
    LAMBERT_AZIMUTHAL = "lambert_azimuthal"
    LAMBERT_CYLINDRICAL = "lambert_cylindrical"


CYLINDRICAL = (Kind.MERCATOR, Kind.LAMBERT_CYLINDRICAL)
CONFORMAL = (Kind.STEREOGRAPHIC, Kind.MERCATOR)
EQUAL_AREA = (Kind.LAMBERT_AZIMUTHAL, Kind.LAMBERT_CYLINDRICAL)


@dataclass(frozen=True, eq=False)
class ProjectionKind:
    """A map and its anchor point.

    ``point`` is the projection pole for the stereographic map (default the
    north pole, so the centre of the picture is the south pole) and the
    tangent point for the gnomonic and azimuthal maps (default the north
    pole).  The cylindrical maps ignore it.
    """

    kind: Kind
    point: np.ndarray = field(default_factory=lambda: NORTH.copy())

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "point", core.spoint(self.point))

    @property
    def centre(self) -> np.ndarray:
        """Point of the sphere sent to the origin."""
        if self.kind is Kind.STEREOGRAPHIC:
            return -self.point
        if self.kind in CYLINDRICAL:
            return np.array([1.0, 0.0, 0.0])
        return self.point

    def basis(self) -> tuple[np.ndarray, np.ndarray]:
        return core.tangent_basis(self.point)


def _latlon(p) -> tuple[float, float]:
    return math.asin(max(-1.0, min(1.0, float(p[2])))), math.atan2(float(p[1]), float(p[0]))


def project(k: ProjectionKind, p) -> np.ndarray:
    p = core.spoint(p)
    e1, e2 = k.basis()
    if k.kind is Kind.STEREOGRAPHIC:
        den = 1.0 - float(p @ k.point)
        if den < 1e-12:
            raise OutOfDomain("stereographic: point is the projection pole")
        return np.array([p @ e1, p @ e2]) / den
    if k.kind is Kind.GNOMONIC:
        den = float(p @ k.point)
        if den < 1e-6:
            raise OutOfDomain("gnomonic: point outside the open hemisphere of the tangent point")
        return np.array([p @ e1, p @ e2]) / den
    if k.kind is Kind.LAMBERT_AZIMUTHAL:
        c = float(p @ k.point)
        if c < -1.0 + 1e-12:
            raise OutOfDomain("lambert_azimuthal: point is antipodal to the tangent point")
        return math.sqrt(2.0 / (1.0 + c)) * np.array([p @ e1, p @ e2])
    lat, lon = _latlon(p)
    if abs(lat) > LAT_LIMIT:
        raise OutOfDomain(f"{k.kind.value}: latitude beyond +-(pi/2 - 1e-6)")
    if k.kind is Kind.MERCATOR:
        return np.array([lon, math.asinh(math.tan(lat))])
    return np.array([lon, math.sin(lat)])


def unproject(k: ProjectionKind, q) -> np.ndarray:
    u, v = (float(c) for c in np.asarray(q, dtype=float).reshape(2))
    if not (math.isfinite(u) and math.isfinite(v)):
        raise OutOfDomain("plane point is not finite")
    e1, e2 = k.basis()
    if k.kind is Kind.STEREOGRAPHIC:
        r2 = u * u + v * v
        return core.spoint((2.0 * (u * e1 + v * e2) + (r2 - 1.0) * k.point) / (r2 + 1.0))
    if k.kind is Kind.GNOMONIC:
        return core.spoint(k.point + u * e1 + v * e2)
    if k.kind is Kind.LAMBERT_AZIMUTHAL:
        r2 = u * u + v * v
        if r2 > 4.0:
            raise OutOfDomain("lambert_azimuthal: plane point beyond radius 2")
        return core.spoint((1.0 - 0.5 * r2) * k.point + math.sqrt(1.0 - 0.25 * r2) * (u * e1 + v * e2))
    if k.kind is Kind.MERCATOR:
        lat = math.atan(math.sinh(v))
    else:
        if abs(v) > 1.0:
            raise OutOfDomain("lambert_cylindrical: |v| > 1")
        lat = math.asin(v)
    return np.array([math.cos(lat) * math.cos(u), math.cos(lat) * math.sin(u), math.sin(lat)])


# ----------------------------------------------------------------- Jacobian

def _diff(k: ProjectionKind, a, b) -> np.ndarray:
    d = project(k, a) - project(k, b)
    if k.kind in CYLINDRICAL:
        d[0] = (d[0] + PI) % (2.0 * PI) - PI
    return d


def jacobian(k: ProjectionKind, p, h: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian in the tangent frame ``core.tangent_basis(p)``."""
    p = core.spoint(p)
    cols = []
    for e in core.tangent_basis(p):
        cols.append(_diff(k, core.destination(p, e, h), core.destination(p, e, -h)) / (2.0 * h))
    return np.column_stack(cols)


def conformality_defect(k: ProjectionKind, p) -> float:
    """``|J^T J - sigma I|_F / sigma`` with ``sigma`` the mean diagonal."""
    J = jacobian(k, p)
    G = J.T @ J
    sigma = 0.5 * float(np.trace(G))
    return float(np.linalg.norm(G - sigma * np.eye(2))) / sigma


def area_scale_defect(k: ProjectionKind, p) -> float:
    return abs(abs(float(np.linalg.det(jacobian(k, p)))) - 1.0)


def grid_points(k: ProjectionKind, n: int = 50, extent: float = 1.2) -> np.ndarray:
    """``n x n`` points well inside the domain of ``k``.

    Azimuthal maps get a polar grid around their centre (angular radius up to
    ``extent``); cylindrical maps a latitude-longitude grid with
    ``|lat| <= extent``.
    """
    out = []
    if k.kind in CYLINDRICAL:
        for lat in np.linspace(-extent, extent, n):
            for lon in np.linspace(-PI, PI, n + 1)[1:]:
                out.append(core.from_geo(core.GeoCoord(float(lat), float(lon))))
        return np.array(out)
    c = k.centre
    u, w = core.tangent_basis(c)
    for r in np.linspace(extent / n, extent, n):
        for th in np.linspace(0.0, 2.0 * PI, n, endpoint=False):
            out.append(core.destination(c, math.cos(th) * u + math.sin(th) * w, float(r)))
    return np.array(out)


# --------------------------------------------------------------- loxodromes

@dataclass(frozen=True, eq=False)
class Loxodrome:
    bearing: float
    lat: np.ndarray
    lon: np.ndarray          # continuous, not wrapped

    def points(self) -> np.ndarray:
        c = np.cos(self.lat)
        return np.column_stack([c * np.cos(self.lon), c * np.sin(self.lon), np.sin(self.lat)])


def loxodrome(start, bearing: float, n: int, length: float = 1.0,
              max_lat: float = 1.4) -> Loxodrome:
    """Curve crossing every meridian at ``bearing`` (clockwise from north).

    Integrates ``dlat/ds = cos b``, ``dlon/ds = sin b / cos lat`` by arc
    length; the run stops early if the latitude reaches ``max_lat``.
    """
    p = core.spoint(start)
    lat0, lon0 = _latlon(p)
    if abs(lat0) > LAT_LIMIT:
        raise PolarStart("loxodrome start at a pole")
    cb, sb = math.cos(bearing), math.sin(bearing)

    def rhs(s, y):
        return [cb, sb / math.cos(y[0])]

    def polar(s, y):
        return max_lat - abs(y[0])
    polar.terminal = True

    sol = solve_ivp(rhs, (0.0, length), [lat0, lon0], method="DOP853",
                    rtol=1e-13, atol=1e-14, dense_output=True, events=polar)
    end = float(sol.t[-1])
    ys = sol.sol(np.linspace(0.0, end, n))
    return Loxodrome(bearing, ys[0], ys[1])


def mercator_line_deviation(lox: Loxodrome) -> float:
    """Largest distance of the Mercator image from the straight line through
    its first point with direction ``(sin b, cos b)``, i.e. slope ``cot b``."""
    u = lox.lon
    v = np.arcsinh(np.tan(lox.lat))
    du, dv = u - u[0], v - v[0]
    return float(np.max(np.abs(du * math.cos(lox.bearing) - dv * math.sin(lox.bearing))))


# -------------------------------------------------------- straight images

def chord_deviation(q: np.ndarray) -> float:
    """Max distance of planar samples from the chord joining the end samples."""
    a, b = q[0], q[-1]
    d = b - a
    L = float(np.linalg.norm(d))
    return float(np.max(np.abs(d[0] * (q[:, 1] - a[1]) - d[1] * (q[:, 0] - a[0])))) / L


def geodesic_image_straightness(k: ProjectionKind, arc: core.Arc, n: int = 100) -> float:
    q = np.array([project(k, p) for p in arc.sample(n)])
    return chord_deviation(q)


def graticule_orthogonality(k: ProjectionKind, p, h: float = FD_STEP):
    """``(meridian image direction, parallel image direction, defect)``.

    The defect is the largest of: the meridian image's angle from the
    vertical, the parallel image's angle from the horizontal, and the gap
    of the angle between them from a right angle.
    """
    lat, lon = _latlon(core.spoint(p))
    if abs(lat) > LAT_LIMIT - h:
        raise OutOfDomain("graticule undefined at the poles")

    def at(a, b):
        return core.from_geo(core.GeoCoord(a, core.wrap_lon(b)))
    m = _diff(k, at(lat + h, lon), at(lat - h, lon))
    par = _diff(k, at(lat, lon + h), at(lat, lon - h))
    m, par = m / np.linalg.norm(m), par / np.linalg.norm(par)
    off_v = math.atan2(abs(m[0]), abs(m[1]))
    off_h = math.atan2(abs(par[1]), abs(par[0]))
    right = abs(math.atan2(abs(m[0] * par[1] - m[1] * par[0]), float(m @ par)) - HALF_PI)
    return m, par, max(off_v, off_h, right)


def nondevelopability_witness(k: ProjectionKind, r: float, n: int = 12) -> dict:
    """Distortion spread over the cap of angular radius ``r`` around the
    centre of ``k``.

    ``anisotropy`` is the largest ratio of the Jacobian's singular values,
    ``det_spread`` the ratio of the largest to smallest ``|det J|``.  A map
    that were an isometry would give 1 for both; ``fires`` is set when
    either exceeds ``1 + r^2 / 100``.
    """
    c = k.centre
    u, w = core.tangent_basis(c)
    sv, dets = [], []
    for rad in np.linspace(0.0, r, n):
        for th in np.linspace(0.0, 2.0 * PI, n, endpoint=False):
            p = core.destination(c, math.cos(th) * u + math.sin(th) * w, float(rad))
            s = np.linalg.svd(jacobian(k, p), compute_uv=False)
            sv.append(s[0] / s[1])
            dets.append(s[0] * s[1])
    aniso, spread = max(sv), max(dets) / min(dets)
    bound = 1.0 + r * r / 100.0
    return {"anisotropy": aniso, "det_spread": spread, "bound": bound,
            "fires": aniso > bound or spread > bound}


# ------------------------------------------------------ circles and Lexell

def fit_plane_circle(q: np.ndarray) -> tuple[float, tuple]:
    """Least-squares circle (or line) through planar points.

    Fits ``a (u^2 + v^2) + b u + c v + d = 0`` by the smallest singular
    vector, returns the largest geometric distance of the points from the
    fitted curve and the curve (``("circle", centre, radius)`` or
    ``("line", normal, offset)``).
    """
    q = np.asarray(q, dtype=float)
    D = np.column_stack([np.sum(q * q, axis=1), q[:, 0], q[:, 1], np.ones(len(q))])
    scale = np.max(np.abs(D), axis=0)
    a, b, c, d = np.linalg.svd(D / scale)[2][-1] / scale
    nb = math.hypot(b, c)
    if abs(a) * float(np.max(np.abs(q))) < 1e-12 * nb:
        n = np.array([b, c]) / nb
        return float(np.max(np.abs(q @ n + d / nb))), ("line", n, -d / nb)
    centre = np.array([-b / (2 * a), -c / (2 * a)])
    R = math.sqrt(max(float(centre @ centre) - d / a, 0.0))
    return float(np.max(np.abs(np.linalg.norm(q - centre, axis=1) - R))), ("circle", centre, R)


def _stereo_push(k: ProjectionKind, p, v) -> np.ndarray:
    """Exact differential of the stereographic map applied to tangent ``v``."""
    e1, e2 = k.basis()
    den = 1.0 - float(p @ k.point)
    a = np.array([p @ e1, p @ e2])
    da = np.array([v @ e1, v @ e2])
    return da / den + a * float(v @ k.point) / den ** 2


def _plane_angle(x, y) -> float:
    return math.atan2(abs(x[0] * y[1] - x[1] * y[0]), float(x @ y))


def lexell_image_check(A, B, area: float, pole=NORTH, n: int = 50) -> dict:
    """Stereographic image of the apexes of fixed-area triangles on ``AB``.

    Returns the circle-fit residual of the projected apexes and the spread of
    the angle sums of the curved image triangles.  Image angles are measured
    between the pushed-forward tangents of the sides at each vertex, so
    their constancy is a check of conformality as well as of the area.
    """
    from .lexell import lexell_circle_euler

    k = ProjectionKind(Kind.STEREOGRAPHIC, pole)
    locus = lexell_circle_euler(A, B, area)
    A, B = locus.construction.A, locus.construction.B
    for P in (A, B):
        project(k, P)     # a base vertex at the centre of projection has no image
    apexes = locus.sample_apexes(n)
    q = np.array([project(k, V) for V in apexes])
    fit, curve = fit_plane_circle(q)
    sums, sph = [], []
    for V in apexes:
        tot = 0.0
        for P, Q, R in ((A, B, V), (B, V, A), (V, A, B)):
            t1 = _stereo_push(k, P, core.tangent_towards(P, Q))
            t2 = _stereo_push(k, P, core.tangent_towards(P, R))
            tot += _plane_angle(t1, t2)
        sums.append(tot)
        sph.append(core.interior_angle(A, B, V) + core.interior_angle(B, V, A)
                   + core.interior_angle(V, A, B))
    return {"fit_residual": fit, "curve": curve,
            "angle_sum_spread": max(sums) - min(sums),
            "spherical_sum_spread": max(sph) - min(sph),
            "angle_sum": float(np.mean(sums)),
            "image": q}
