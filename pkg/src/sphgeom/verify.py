"""End-to-end property checks with brute-force oracles.

Each ``check_*`` function runs one criterion on seeded random data and
returns a :class:`CheckResult`.  The command line ``verify`` subcommand and
the acceptance tests both call them.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from . import area as area_mod
from . import cevians as cv
from . import core, extremal, geodesics, lexell, pappus, projections, trig
from .projections import Kind, ProjectionKind

PI = math.pi


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number}. {self.name} ({self.seconds:.2f}s)"


def _timed(number: int, name: str, fn, seed: int) -> CheckResult:
    t0 = time.perf_counter()
    passed, details = fn(np.random.default_rng(seed))
    return CheckResult(number, name, bool(passed), time.perf_counter() - t0, details)


# ------------------------------------------------------------- generators

def random_sss(rng: np.random.Generator, lo: float = 0.1, hi: float = 2.9) -> trig.Elements:
    """Side triple uniform in ``[lo, hi]^3`` conditioned on forming a triangle."""
    while True:
        a, b, c = rng.uniform(lo, hi, 3)
        if a < b + c and b < a + c and c < a + b and a + b + c < 2 * PI:
            try:
                return trig.solve("sss", a=a, b=b, c=c)[0]
            except ValueError:
                continue


def random_plane_triangle(rng, min_area: float = 0.05) -> np.ndarray:
    while True:
        P = rng.uniform(-1.0, 1.0, (3, 2))
        d1, d2 = P[1] - P[0], P[2] - P[0]
        if 0.5 * abs(d1[0] * d2[1] - d1[1] * d2[0]) > min_area:
            return P


def random_sphere_triangle(rng, min_det: float = 0.02) -> np.ndarray:
    while True:
        c = core.random_points(rng, 1)[0]
        u, w = core.tangent_basis(c)
        P = np.array([core.destination(c, math.cos(t) * u + math.sin(t) * w, r)
                      for r, t in zip(rng.uniform(0.2, 1.2, 3), rng.uniform(0, 2 * PI, 3))])
        if abs(core.triple(*P)) > min_det:
            return P


def concurrent_config(rng, geometry: str) -> cv.CevianConfig:
    wts = rng.dirichlet([3.0, 3.0, 3.0])
    if geometry == cv.SPHERICAL:
        P = random_sphere_triangle(rng)
        return cv.through_point(*P, core.spoint(wts @ P), cv.SPHERICAL)
    P = random_plane_triangle(rng)
    return cv.through_point(*P, wts @ P, cv.EUCLIDEAN)


def perturb_foot(rng, cfg: cv.CevianConfig, eps: float = 1e-2) -> cv.CevianConfig:
    """Slide one foot along its side by ``eps`` of the side's length."""
    feet = [cfg.a, cfg.b, cfg.c]
    sides = [(cfg.B, cfg.C), (cfg.C, cfg.A), (cfg.A, cfg.B)]
    i = int(rng.integers(3))
    P, Q = sides[i]
    s = eps * float(rng.choice([-1.0, 1.0]))
    if cfg.geometry == cv.SPHERICAL:
        frac = core.dist(P, feet[i]) / core.dist(P, Q)
        feet[i] = core.slerp(P, Q, frac + s)
    else:
        feet[i] = feet[i] + s * (Q - P)
    return cfg.with_feet(*feet)


def lift(p, scale: float) -> np.ndarray:
    """Inverse gnomonic image about the north pole of ``scale * p``."""
    return core.spoint([scale * p[0], scale * p[1], 1.0])


def seeded_pappus(rng, geometry: str, collinear: bool = False):
    """Instance built from a random inscribed triangle, one target per side
    line; ``collinear`` puts the targets where the side lines meet one line."""
    while True:
        th = np.sort(rng.uniform(-PI, PI, 3))
        if min(np.diff(np.r_[th, th[0] + 2 * PI])) < 0.05:
            continue
        if geometry == pappus.EUCLIDEAN:
            circ = pappus.PlaneCircle(rng.normal(size=2), rng.uniform(0.5, 2.0))
            V = circ.points(th)
            if collinear:
                a, d = rng.normal(size=2), rng.normal(size=2)
                n = np.array([-d[1], d[0]])
                T = []
                for i in range(3):
                    P, Q = V[i], V[(i + 1) % 3]
                    den = float(n @ (Q - P))
                    if abs(den) < 1e-3:
                        break
                    T.append(P + float(n @ (a - P)) / den * (Q - P))
                if len(T) < 3:
                    continue
            else:
                T = [V[i] + rng.uniform(-1.5, 2.5) * (V[(i + 1) % 3] - V[i]) for i in range(3)]
        else:
            circ = core.SmallCircle(core.random_points(rng, 1)[0], rng.uniform(0.3, 1.5))
            V = pappus._sphere_points(circ, th)
            if collinear:
                m = core.random_points(rng, 1)[0]
                T = [core.spoint(np.cross(np.cross(V[i], V[(i + 1) % 3]), m)) for i in range(3)]
            else:
                T = [core.slerp(V[i], V[(i + 1) % 3], rng.uniform(-1.0, 2.0)) for i in range(3)]
        T = [np.asarray(t, dtype=float) for t in T]
        if min(abs(circ.residual(t)) for t in T) < 1e-3:
            continue
        if min(np.linalg.norm(T[i] - T[j]) for i, j in ((0, 1), (1, 2), (0, 2))) < 1e-6:
            continue
        return pappus.PappusInstance(geometry, circ, *T), V


def proper_fuss(rng) -> extremal.FussInstance:
    while True:
        A, B = core.random_points(rng, 2)
        inst = extremal.FussInstance(A, B, core.GreatCircle(core.random_points(rng, 1)[0]))
        if inst.proper:
            return inst


def random_ellipse(rng) -> extremal.SphericalEllipse:
    f1, f2 = core.random_points(rng, 2)
    d = core.dist(f1, f2)
    return extremal.SphericalEllipse(f1, f2, rng.uniform(d + 0.01, 2 * PI - d - 0.01))


# --------------------------------------------------------------- criteria

def _c1(rng):
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        e = random_sss(rng)
        t = trig.realize(e)
        vals = [area_mod.area(e, m) for m in area_mod.METHODS]
        vals.append(area_mod.area_lexell_xy(area_mod.lexell_xy_of(t)))
        worst = max(worst, max(vals) - min(vals))
    dt = time.perf_counter() - t0
    return worst < 1e-9 and dt < 5.0, {"max_pairwise_gap": worst, "seconds": dt}


def _c2(rng):
    t0 = time.perf_counter()
    w = dict(constructions=0.0, antipodes=0.0, apex_area=0.0,
             radius_printed=0.0, radius_closed_form=0.0)
    for _ in range(200):
        A, B = core.random_points(rng, 2)
        if not 0.05 < core.dist(A, B) < PI - 0.05:
            continue
        D = float(rng.uniform(0.05, 2 * PI - 0.05))
        e = lexell.lexell_circle_euler(A, B, D)
        l = lexell.lexell_circle_lexell(A, B, D)
        w["constructions"] = max(w["constructions"], core.dist(e.circle.pole, l.circle.pole),
                                 abs(e.circle.radius - l.circle.radius))
        w["antipodes"] = max(w["antipodes"], abs(e.circle.residual(-A)), abs(e.circle.residual(-B)))
        for V in e.sample_apexes(50):
            w["apex_area"] = max(w["apex_area"], abs(lexell.apex_area(e, V) - D))
        a = core.dist(A, B)
        # the radius measured from the pole on the apex side
        x = core.dist(e.construction.p, -A)
        w["radius_printed"] = max(w["radius_printed"], abs(x - lexell.radius_printed(a, D)))
        w["radius_closed_form"] = max(w["radius_closed_form"],
                                      abs(x - lexell.radius_closed_form(a, D)))
    dt = time.perf_counter() - t0
    ok = (w["constructions"] < 1e-10 and w["antipodes"] < 1e-10 and w["apex_area"] < 1e-8
          and w["radius_printed"] < 1e-10 and dt < 10.0)
    w["seconds"] = dt
    return ok, w


def _c3(rng):
    conc = {"eq1": 0.0, "eq2": 0.0, "eq3": 0.0, "ceva_euclidean": 0.0,
            "ceva_spherical": 0.0, "eq2_derived_variant": 0.0}
    pert = {k: math.inf for k in ("eq1", "eq2", "eq3", "ceva_euclidean", "ceva_spherical")}
    for _ in range(500):
        c = concurrent_config(rng, cv.EUCLIDEAN)
        conc["eq1"] = max(conc["eq1"], cv.euler_relation_residual_euclidean(c))
        conc["eq3"] = max(conc["eq3"], cv.euler_identity_residual_euclidean(c))
        conc["ceva_euclidean"] = max(conc["ceva_euclidean"], cv.ceva_residual(c))
        p = perturb_foot(rng, c)
        pert["eq1"] = min(pert["eq1"], cv.euler_relation_residual_euclidean(p))
        pert["eq3"] = min(pert["eq3"], cv.euler_identity_residual_euclidean(p))
        pert["ceva_euclidean"] = min(pert["ceva_euclidean"], cv.ceva_residual(p))
        s = concurrent_config(rng, cv.SPHERICAL)
        conc["eq2"] = max(conc["eq2"], cv.euler_relation_residual_spherical(s))
        conc["ceva_spherical"] = max(conc["ceva_spherical"], cv.ceva_residual(s))
        conc["eq2_derived_variant"] = max(conc["eq2_derived_variant"],
                                          cv.spherical_identity_probe(s)["product_minus_2"])
        p = perturb_foot(rng, s)
        pert["eq2"] = min(pert["eq2"], cv.euler_relation_residual_spherical(p))
        pert["ceva_spherical"] = min(pert["ceva_spherical"], cv.ceva_residual(p))
    # Euclidean limit: a perturbed planar configuration lifted to diameter ~1e-3
    limit = 0.0
    for _ in range(100):
        p = perturb_foot(rng, concurrent_config(rng, cv.EUCLIDEAN))
        scale = 1e-3 / max(np.linalg.norm(u - v) for u, v in itertools.combinations((p.A, p.B, p.C), 2))
        sph = cv.CevianConfig(cv.SPHERICAL, *[lift(v, scale) for v in (p.A, p.B, p.C, p.a, p.b, p.c)])
        r_e = cv.euler_relation_residual_euclidean(p)
        r_s = cv.euler_relation_residual_spherical(sph)
        limit = max(limit, abs(r_s / r_e - 1.0))
    # printed sum identity on tiny medians
    P = random_plane_triangle(rng)
    scale = 1e-3 / 2.0
    tiny = cv.medians(*[lift(v, scale) for v in P], geometry=cv.SPHERICAL)
    probe = cv.spherical_identity_probe(tiny)
    details = {"concurrent_max": conc, "perturbed_min": pert, "euclidean_limit_rel_gap": limit,
               "printed_sum_tiny_medians": probe["printed_sum"],
               "printed_fails": probe["printed_fails"]}
    ok = (max(conc.values()) < 1e-9 and min(pert.values()) > 1e-4 and limit < 1e-2
          and probe["printed_fails"] and abs(probe["printed_sum"] - 6.0) < 1e-3
          and conc["eq2_derived_variant"] < 1e-9)
    return ok, details


def _c4(rng):
    t0 = time.perf_counter()
    out = {}
    ok = True
    for geom in (pappus.EUCLIDEAN, pappus.SPHERICAL):
        missed, worst = 0, 0.0
        for _ in range(100):
            inst, V = seeded_pappus(rng, geom)
            sols = pappus.solve_pappus(inst)
            hit = [s for s in sols if pappus._same_triangle(V, s.vertices)]
            missed += not hit
            worst = max([worst] + [max(s.residuals) for s in sols])
        coll_worst, coll_missed = 0.0, 0
        for _ in range(20):
            inst, V = seeded_pappus(rng, geom, collinear=True)
            sols = pappus.solve_pappus(inst)
            coll_missed += not any(pappus._same_triangle(V, s.vertices) for s in sols)
            coll_worst = max([coll_worst] + [max(s.residuals) for s in sols])
        out[geom] = {"missed": missed, "max_incidence": worst,
                     "collinear_missed": coll_missed, "collinear_max_incidence": coll_worst}
        ok &= missed == 0 and worst < 1e-8 and coll_missed == 0 and coll_worst < 1e-8
    dt = time.perf_counter() - t0
    out["seconds"] = dt
    return ok and dt < 30.0, out


def _c5(rng):
    t0 = time.perf_counter()
    cell = 2 * PI / 100_000
    worst = {o.value: 0.0 for o in extremal.Objective}
    for _ in range(50):
        inst = proper_fuss(rng)
        for obj in extremal.Objective:
            r = extremal.fuss_solve(inst, obj)
            tg, _ = extremal.grid_optimum(inst, obj)
            gap = abs((r.optimum.t - tg + PI) % (2 * PI) - PI)
            worst[obj.value] = max(worst[obj.value], gap)
    dt = time.perf_counter() - t0
    return max(worst.values()) <= cell and dt < 30.0, {"max_gap": worst, "cell": cell, "seconds": dt}


def _c6(rng):
    cone = 0.0
    for _ in range(20):
        r, _ = extremal.ellipse_cone_check(random_ellipse(rng))
        cone = max(cone, r)
    great = {}
    for sep in (0.4, 1.7):
        f1 = core.from_geo(core.GeoCoord(0.2, -0.5 * sep))
        f2 = core.from_geo(core.GeoCoord(-0.1, 0.5 * sep))
        g = extremal.ellipse_degenerate(f1, f2)
        pts = extremal.ellipse_trace(extremal.SphericalEllipse(f1, f2, PI), 100)
        great[sep] = float(np.max(np.abs(pts @ g.pole)))
    ok = cone < 1e-8 and max(great.values()) < 1e-10
    return ok, {"cone_residual": cone, "great_circle_offset": great}


def _c7(rng):
    err, drift = 0.0, 0.0
    for _ in range(100):
        p, q = core.random_points(rng, 2)
        sol = geodesics.geodesic_connect(p, q)
        err = max(err, abs(sol.length - core.dist(p, q)))
        drift = max(drift, sol.drift)
    _, ratios = geodesics.order_ratios((1.0, 0.2), 0.7, 2.0)
    ok = err < 1e-6 and drift < 1e-8 and all(14.0 <= r <= 18.0 for r in ratios)
    return ok, {"length_error": err, "first_integral_drift": drift, "order_ratios": ratios}


def _c8(rng):
    d = {}
    kinds = [ProjectionKind(k, core.random_points(rng, 1)[0]) for k in Kind]
    rt = 0.0
    for k in kinds:
        for p in core.random_points(rng, 1000):
            try:
                q = projections.project(k, p)
            except ValueError:
                continue
            rt = max(rt, float(np.linalg.norm(projections.unproject(k, q) - p)))
    d["inverse_pair"] = rt
    d["conformality"] = {k.kind.value: max(projections.conformality_defect(k, p)
                                           for p in projections.grid_points(k))
                         for k in kinds if k.kind in projections.CONFORMAL}
    d["area_scale"] = {k.kind.value: max(projections.area_scale_defect(k, p)
                                         for p in projections.grid_points(k))
                       for k in kinds if k.kind in projections.EQUAL_AREA}
    g = ProjectionKind(Kind.GNOMONIC, core.random_points(rng, 1)[0])
    straight = 0.0
    for _ in range(100):
        while True:
            a, b = core.random_points(rng, 2)
            if a @ g.point > 0.2 and b @ g.point > 0.2 and core.dist(a, b) > 0.05:
                break
        straight = max(straight, projections.geodesic_image_straightness(g, core.Arc(a, b)))
    d["gnomonic_chord_deviation"] = straight
    start = core.from_geo(core.GeoCoord(0.1, 0.3))
    d["loxodrome_deviation"] = max(
        projections.mercator_line_deviation(projections.loxodrome(start, float(b), 200))
        for b in np.linspace(0.0, 2 * PI, 16, endpoint=False))
    d["nondevelopable"] = {k.kind.value: projections.nondevelopability_witness(k, 0.5)["fires"]
                           for k in kinds}
    A, B = core.random_points(rng, 2)
    lx = projections.lexell_image_check(A, B, 1.3, pole=core.random_points(rng, 1)[0])
    d["lexell_circle_fit"] = lx["fit_residual"]
    d["lexell_angle_sum_spread"] = lx["angle_sum_spread"]
    ok = (rt < 1e-10 and max(d["conformality"].values()) < 1e-7
          and max(d["area_scale"].values()) < 1e-7 and straight < 1e-9
          and d["loxodrome_deviation"] < 1e-8 and all(d["nondevelopable"].values())
          and lx["fit_residual"] < 1e-8 and lx["angle_sum_spread"] < 1e-9)
    return ok, d


PLATONIC_VERTICES = {
    "tetrahedron": [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)],
    "cube": list(itertools.product((-1, 1), repeat=3)),
    "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
}


def _golden_solids():
    f = (1 + math.sqrt(5)) / 2
    ico = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            ico += [(0, s1, s2 * f), (s1, s2 * f, 0), (s2 * f, 0, s1)]
    dod = list(itertools.product((-1, 1), repeat=3))
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            dod += [(0, s1 / f, s2 * f), (s1 / f, s2 * f, 0), (s2 * f, 0, s1 / f)]
    return {"icosahedron": ico, "dodecahedron": dod}


def planar_dihedral(solid: str) -> float:
    """Dihedral angle from the face normals of the solid's convex hull."""
    verts = {**PLATONIC_VERTICES, **_golden_solids()}[solid]
    hull = ConvexHull(np.array(verts, dtype=float))
    normals = []
    for eq in hull.equations:
        n = eq[:3] / np.linalg.norm(eq[:3])
        if not any(np.linalg.norm(n - m) < 1e-9 for m in normals):
            normals.append(n)
    # adjacent faces have the closest normals
    best = min(math.atan2(np.linalg.norm(np.cross(n, m)), float(n @ m))
               for n, m in itertools.combinations(normals, 2))
    return PI - best


def _c9(rng):
    gaps = {}
    for solid in trig.PLATONIC:
        gaps[solid] = abs(trig.platonic_dihedral(solid) - planar_dihedral(solid))
    cube_exact = trig.platonic_dihedral("cube") == PI / 2
    return max(gaps.values()) < 1e-10 and cube_exact, {"gaps": gaps, "cube_exact": cube_exact}


CRITERIA = {
    1: ("area cross-agreement", _c1),
    2: ("Lexell locus", _c2),
    3: ("cevian relations", _c3),
    4: ("Pappus triangles", _c4),
    5: ("Fuss optimisation", _c5),
    6: ("ellipse and cone", _c6),
    7: ("geodesics", _c7),
    8: ("projections", _c8),
    9: ("Platonic dihedrals", _c9),
}


def run(number: int, seed: int = 0) -> CheckResult:
    name, fn = CRITERIA[number]
    return _timed(number, name, fn, seed + number)


def run_all(seed: int = 0, only=None) -> list[CheckResult]:
    return [run(n, seed) for n in sorted(CRITERIA) if only is None or n in only]
