"""Command-line front end.

Every subcommand prints one result record: ``key: value`` lines in text
mode, or one JSON object per line with the fields ``subcommand``,
``inputs``, ``outputs`` and ``residuals`` in ``json`` mode.  Points are
given as ``"lat,lon"`` (spherical) or ``"x,y"`` (plane) in the configured
units.  Figures are written to a file, never to standard output.

Exit codes: 0 success, 1 a ``verify`` criterion failed, 2 a geometric
error (its class name goes to standard error), 64 a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import area as area_mod
from . import cevians as cv
from . import core, extremal, geodesics, lexell, pappus, projections, trig, verify
from .errors import GeometryError
from .svg import Figure

EX_USAGE = 64
EX_GEOMETRY = 2
TOL_ENV = "SPHGEOM_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # point arguments such as "-0.2,0.3" start with a minus sign
    _NEGATIVE = re.compile(r"^-\.?\d[\d.eE+\-]*([,;][-+]?[\d.eE+\-]+)*$")

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        self._negative_number_matcher = self._NEGATIVE

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


# ---------------------------------------------------------------- helpers

class Ctx:
    def __init__(self, args):
        self.args = args
        self.deg = args.units == "deg"

    def angle(self, v: float | None) -> float | None:
        if v is None:
            return None
        return math.radians(v) if self.deg else float(v)

    def out_angle(self, v: float) -> float:
        return math.degrees(v) if self.deg else v

    def pair(self, s: str) -> tuple[float, float]:
        try:
            a, b = (float(x) for x in s.split(","))
        except ValueError:
            raise UsageError(f"expected two comma-separated numbers, got {s!r}") from None
        if not (math.isfinite(a) and math.isfinite(b)):
            raise UsageError(f"non-finite number in {s!r}")
        return a, b

    def spoint(self, s: str) -> np.ndarray:
        lat, lon = (self.angle(v) for v in self.pair(s))
        return core.from_geo(core.GeoCoord(lat, core.wrap_lon(lon)))

    def ppoint(self, s: str) -> np.ndarray:
        return np.array(self.pair(s))

    def geo(self, p) -> list[float]:
        g = core.to_geo(p)
        return [self.out_angle(g.lat), self.out_angle(g.lon)]


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_clean(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return 0.0 if x == 0.0 else x
    return x


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, list):
        return " ".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# diagnostics that are reported but are not expected to vanish
_UNGATED = ("probe_", "one_sided")


def emit(ctx: Ctx, sub: str, inputs: dict, outputs: dict, residuals: dict | None = None) -> None:
    residuals = residuals or {}
    gated = [v for k, v in residuals.items() if not k.startswith(_UNGATED)]
    if gated:
        outputs = {**outputs, "within_tolerance": max(gated) <= ctx.args.tol}
    rec = _clean({"subcommand": sub, "inputs": {**inputs, "tol": ctx.args.tol},
                  "outputs": outputs, "residuals": residuals})
    if ctx.args.output == "json":
        print(json.dumps(rec, sort_keys=True))
        return
    for section in ("outputs", "residuals"):
        for k, v in rec[section].items():
            print(f"{k}: {_fmt(v)}")


def _svg_path(ctx: Ctx, sub: str) -> str | None:
    if ctx.args.emit != "svg":
        return None
    return ctx.args.svg_out or f"{sub}.svg"


def _view(centre) -> projections.ProjectionKind:
    return projections.ProjectionKind(projections.Kind.LAMBERT_AZIMUTHAL, centre)


def _img(k, pts) -> np.ndarray:
    return np.array([projections.project(k, p) for p in np.atleast_2d(pts)])


# ------------------------------------------------------------ subcommands

def cmd_solve(ctx: Ctx) -> int:
    a = ctx.args
    given = {k: ctx.angle(getattr(a, k)) for k in ("a", "b", "c", "A", "B", "C")
             if getattr(a, k) is not None}
    sols = trig.solve(a.case, **given)
    outs = {}
    for i, e in enumerate(sols):
        outs[f"solution_{i + 1}"] = [ctx.out_angle(v) for v in e]
    res = {f"solution_{i + 1}": max(trig.basic_residuals(e)) for i, e in enumerate(sols)}
    emit(ctx, "solve", {"case": a.case, **given}, outs, res)
    return 0


def cmd_area(ctx: Ctx) -> int:
    a = ctx.args
    if a.points:
        if len(a.points) != 3:
            raise UsageError("--points needs exactly three points")
        t = trig.SphTriangle(*(ctx.spoint(p) for p in a.points))
        e = t.elements
        inputs = {"points": a.points}
    else:
        sides = [ctx.angle(v) for v in (a.a, a.b, a.c)]
        if None in sides:
            raise UsageError("give --a --b --c or --points")
        e = trig.solve("sss", a=sides[0], b=sides[1], c=sides[2])[0]
        t = trig.realize(e)
        inputs = {"a": sides[0], "b": sides[1], "c": sides[2]}
    methods = area_mod.METHODS if a.method == "all" else (a.method,)
    outs = {m: area_mod.area(e, m) for m in methods}
    if a.method == "all":
        outs["lexell_xy"] = area_mod.area_lexell_xy(area_mod.lexell_xy_of(t))
    vals = list(outs.values())
    emit(ctx, "area", inputs, outs, {"spread": max(vals) - min(vals)})
    return 0


def cmd_lexell(ctx: Ctx) -> int:
    a = ctx.args
    A, B = ctx.spoint(a.A), ctx.spoint(a.B)
    D = a.area
    eu = lexell.lexell_circle_euler(A, B, D)
    lx = lexell.lexell_circle_lexell(A, B, D)
    apexes = eu.sample_apexes(a.samples)
    base = core.dist(A, B)
    outs = {"pole": ctx.geo(eu.circle.pole), "radius": ctx.out_angle(eu.circle.radius),
            "radius_closed_form": ctx.out_angle(lexell.radius_closed_form(base, D)),
            "radius_printed_formula": ctx.out_angle(lexell.radius_printed(base, D))}
    res = {"constructions": max(core.dist(eu.circle.pole, lx.circle.pole),
                                abs(eu.circle.radius - lx.circle.radius)),
           "antipodes": max(abs(eu.circle.residual(-A)), abs(eu.circle.residual(-B))),
           "apex_area": max(abs(lexell.apex_area(eu, V) - D) for V in apexes)}
    path = _svg_path(ctx, "lexell")
    if path:
        k = _view(core.midpoint(A, B))
        fig = Figure(a.size)
        fig.polyline(_img(k, core.Arc(A, B).sample(64)), "black", 2)
        fig.polyline(_img(k, [p for p in eu.circle.sample(256) if p @ k.point > -0.999]), "blue",
                     closed=True)
        fig.dots(_img(k, apexes), "red")
        fig.dots(_img(k, [A, B]), "black", 4)
        fig.save(path)
        outs["svg"] = path
    emit(ctx, "lexell", {"A": a.A, "B": a.B, "area": D}, outs, res)
    return 0


def cmd_cevians(ctx: Ctx) -> int:
    a = ctx.args
    sph = a.geometry == cv.SPHERICAL
    pt = ctx.spoint if sph else ctx.ppoint
    V = [pt(s) for s in (a.A, a.B, a.C)]
    if a.O is not None:
        cfg = cv.through_point(*V, pt(a.O), a.geometry)
    elif a.feet:
        if len(a.feet) != 3:
            raise UsageError("--feet needs three points")
        cfg = cv.CevianConfig(a.geometry, *V, *(pt(s) for s in a.feet))
    else:
        cfg = cv.medians(*V, geometry=a.geometry)
    outs = {"spread": cv.spread(cfg), "ratios": list(cv.ratios(cfg))}
    res = {"ceva": cv.ceva_residual(cfg)}
    if sph:
        res["euler_relation"] = cv.euler_relation_residual_spherical(cfg)
        probe = cv.spherical_identity_probe(cfg)
        res.update({f"probe_{k}": v for k, v in probe.items() if k != "printed_fails"})
        outs["printed_sum_identity_fails"] = probe["printed_fails"]
    else:
        res["euler_relation"] = cv.euler_relation_residual_euclidean(cfg)
        res["euler_identity"] = cv.euler_identity_residual_euclidean(cfg)
    emit(ctx, "cevians", {"geometry": a.geometry, "A": a.A, "B": a.B, "C": a.C,
                          "O": a.O, "feet": a.feet}, outs, res)
    return 0


def cmd_pappus(ctx: Ctx) -> int:
    a = ctx.args
    sph = a.geometry == pappus.SPHERICAL
    if sph:
        if a.pole is None:
            raise UsageError("spherical instance needs --pole")
        circle = core.SmallCircle(ctx.spoint(a.pole), ctx.angle(a.radius))
        T = [ctx.spoint(s) for s in a.targets]
    else:
        circle = pappus.PlaneCircle(ctx.ppoint(a.center), a.radius)
        T = [ctx.ppoint(s) for s in a.targets]
    if len(T) != 3:
        raise UsageError("--targets needs three points")
    sols = pappus.solve_pappus(pappus.PappusInstance(a.geometry, circle, *T))
    outs, res = {"count": len(sols)}, {}
    for i, s in enumerate(sols):
        verts = [ctx.geo(v) for v in s.vertices] if sph else s.vertices.tolist()
        outs[f"triangle_{i + 1}"] = {"vertices": _clean(verts), "order": list(s.order)}
        res[f"triangle_{i + 1}"] = max(s.residuals)
    path = _svg_path(ctx, "pappus")
    if path:
        fig = Figure(a.size)
        if sph:
            k = _view(circle.pole)
            img = lambda P: _img(k, P)
            fig.polyline(img(circle.sample(256)), "blue", closed=True)
        else:
            img = lambda P: np.atleast_2d(P)
            fig.polyline(circle.points(np.linspace(0, 2 * math.pi, 257)), "blue")
        for s in sols:
            fig.polyline(img(s.vertices), "black", closed=True)
        fig.dots(img(np.array(T)), "red", 4)
        fig.save(path)
        outs["svg"] = path
    emit(ctx, "pappus", {"geometry": a.geometry, "targets": a.targets}, outs, res)
    return 0


def cmd_fuss(ctx: Ctx) -> int:
    a = ctx.args
    inst = extremal.FussInstance(ctx.spoint(a.A), ctx.spoint(a.B),
                                 core.GreatCircle(ctx.spoint(a.pole)))
    r = extremal.fuss_solve(inst, a.objective)
    conv = (lambda v: v) if a.objective == "max_area" else ctx.out_angle
    outs = {"optimum": ctx.geo(r.optimum.V), "value": conv(r.optimum.value),
            "proper": inst.proper,
            "critical": [{"point": ctx.geo(c.V), "value": conv(c.value), "kind": c.kind,
                          "degenerate": c.degenerate} for c in r.critical]}
    res = {}
    lo, hi = extremal.one_sided_differences(inst, a.objective, r.optimum.t)
    res["one_sided_product"] = lo * hi
    emit(ctx, "fuss", {"A": a.A, "B": a.B, "pole": a.pole, "objective": a.objective}, outs, res)
    return 0


def cmd_ellipse(ctx: Ctx) -> int:
    a = ctx.args
    f1, f2 = ctx.spoint(a.f1), ctx.spoint(a.f2)
    e = extremal.SphericalEllipse(f1, f2, ctx.angle(a.sum))
    pts = extremal.ellipse_trace(e, a.n)
    cone, Q = extremal.ellipse_cone_check(e)
    outs = {"points": [ctx.geo(p) for p in pts], "cone": Q.tolist()}
    res = {"max_sum_residual": max(abs(extremal.ellipse_residual(e, p)) for p in pts),
           "cone": cone}
    if abs(e.total - math.pi) < 1e-12:
        g = extremal.ellipse_degenerate(f1, f2)
        outs["great_circle_pole"] = ctx.geo(g.pole)
        res["great_circle"] = float(np.max(np.abs(pts @ g.pole)))
    path = _svg_path(ctx, "ellipse")
    if path:
        k = _view(e.centre)
        fig = Figure(a.size)
        fig.polyline(_img(k, extremal.ellipse_trace(e, 256)), "blue", closed=True)
        fig.dots(_img(k, [f1, f2]), "red", 4)
        fig.save(path)
        outs["svg"] = path
    emit(ctx, "ellipse", {"f1": a.f1, "f2": a.f2, "sum": a.sum, "n": a.n}, outs, res)
    return 0


def cmd_geodesic(ctx: Ctx) -> int:
    a = ctx.args
    if a.mode == "connect":
        if a.p is None or a.q is None:
            raise UsageError("connect needs --p and --q")
        p, q = ctx.spoint(a.p), ctx.spoint(a.q)
        sol = geodesics.geodesic_connect(p, q)
        res = {"length_vs_closed_form": abs(sol.length - core.dist(p, q)),
               "endpoint": float(np.linalg.norm(sol.points[-1] - q))}
        inputs = {"mode": "connect", "p": a.p, "q": a.q}
    else:
        if a.start is None or a.bearing is None or a.length is None:
            raise UsageError("shoot needs --start, --bearing and --length")
        p = ctx.spoint(a.start)
        sol = geodesics.geodesic_shoot(p, ctx.angle(a.bearing), ctx.angle(a.length))
        v = geodesics._tangent(p, ctx.angle(a.bearing))
        exact = geodesics.great_circle_point(p, v, ctx.angle(a.length))
        res = {"endpoint_vs_closed_form": float(np.linalg.norm(sol.points[-1] - exact))}
        inputs = {"mode": "shoot", "start": a.start, "bearing": a.bearing, "length": a.length}
    res["first_integral_drift"] = sol.drift
    idx = np.linspace(0, len(sol.points) - 1, a.samples).round().astype(int)
    outs = {"length": ctx.out_angle(sol.length), "first_integral": sol.c,
            "samples": [ctx.geo(sol.points[i]) for i in idx]}
    emit(ctx, "geodesic", inputs, outs, res)
    return 0


def _projection(ctx: Ctx) -> projections.ProjectionKind:
    a = ctx.args
    point = ctx.spoint(a.anchor) if a.anchor else projections.NORTH
    return projections.ProjectionKind(a.kind, point)


def _rows(stream) -> list[tuple[float, float]]:
    rows = []
    for n, line in enumerate(stream, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            x, y = (float(v) for v in parts)
        except ValueError:
            raise UsageError(f"line {n}: expected two numbers, got {line!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise UsageError(f"line {n}: non-finite number")
        rows.append((x, y))
    return rows


def cmd_project(ctx: Ctx) -> int:
    """Forward rows ``lat lon`` to ``u v`` or, with ``--inverse``, back.

    A single point comes from ``--lat/--lon`` (``--u/--v``); otherwise rows
    are read from standard input, unless only a ``--path`` drawing is asked for.
    """
    a = ctx.args
    k = _projection(ctx)
    if a.inverse:
        given = [(a.u, a.v)] if a.u is not None and a.v is not None else None
    else:
        given = [(a.lat, a.lon)] if a.lat is not None and a.lon is not None else None
    if given is None:
        # a drawing request on its own needs no input rows
        given = [] if a.path and _svg_path(ctx, "project") else _rows(sys.stdin)
    out = []
    for x, y in given:
        if a.inverse:
            out.append(ctx.geo(projections.unproject(k, (x, y))))
        else:
            g = core.GeoCoord(ctx.angle(x), core.wrap_lon(ctx.angle(y)))
            out.append(list(projections.project(k, core.from_geo(g))))
    path = _svg_path(ctx, "project")
    if path:
        _graticule(ctx, k, path)
    inputs = {"kind": a.kind, "inverse": a.inverse}
    if ctx.args.output == "json":
        for (x, y), r in zip(given, out):
            emit(ctx, "project", {**inputs, "point": [x, y]}, {"point": r})
    else:
        for r in _clean(out):
            print(" ".join(_fmt(float(v)) for v in r))
    if path:
        sys.stderr.write(f"svg: {path}\n")
    return 0


def _graticule(ctx: Ctx, k, path: str) -> None:
    step = ctx.angle(ctx.args.graticule_step)
    fig = Figure(ctx.args.size)

    def draw(pts, colour):
        seg = []
        for p in pts:
            try:
                seg.append(projections.project(k, p))
            except GeometryError:
                if len(seg) > 1:
                    fig.polyline(seg, colour, 0.6)
                seg = []
        if len(seg) > 1:
            fig.polyline(seg, colour, 0.6)

    lim = math.pi / 2 - 1e-3
    for lon in np.arange(-math.pi + step, math.pi + 1e-12, step):
        draw([core.from_geo(core.GeoCoord(float(la), core.wrap_lon(float(lon))))
              for la in np.linspace(-lim, lim, 181)], "#888")
    for lat in np.arange(-math.pi / 2 + step, math.pi / 2, step):
        draw([core.from_geo(core.GeoCoord(float(lat), float(lo)))
              for lo in np.linspace(-math.pi + 1e-9, math.pi, 361)], "#888")
    for spec in ctx.args.path or ():
        pts = [ctx.spoint(s) for s in spec.split(";")]
        dense = [core.slerp(p, q, t) for p, q in zip(pts, pts[1:])
                 for t in np.linspace(0.0, 1.0, 64)]
        draw(dense, "red")
    fig.save(path)


def cmd_verify(ctx: Ctx) -> int:
    only = None
    if ctx.args.only:
        try:
            only = {int(x) for x in ctx.args.only.split(",")}
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
        if not only <= set(verify.CRITERIA):
            raise UsageError(f"criteria are numbered {min(verify.CRITERIA)}-{max(verify.CRITERIA)}")
    results = verify.run_all(ctx.args.seed, only)
    for r in results:
        if ctx.args.output == "json":
            print(json.dumps(_clean({"subcommand": "verify", "inputs": {"criterion": r.number,
                                                                         "seed": ctx.args.seed},
                                     "outputs": {"name": r.name, "passed": r.passed},
                                     # wall-clock timings would break determinism
                                     "residuals": {k: v for k, v in r.details.items()
                                                   if k != "seconds"}}), sort_keys=True))
        else:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.number}. {r.name}")
    return 0 if all(r.passed for r in results) else 1


# ----------------------------------------------------------------- parser

def _tolerance(s: str) -> float:
    v = float(s)
    if not 1e-14 < v < 1e-2:
        raise argparse.ArgumentTypeError("tolerance must lie in (1e-14, 1e-2)")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    env_tol = os.environ.get(TOL_ENV)
    common.add_argument("--tol", type=_tolerance, default=None,
                        help=f"tolerance (default 1e-9, or ${TOL_ENV})")
    common.add_argument("--units", choices=("rad", "deg"), default="rad")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("text", "json", "svg"), default="text",
                        help="svg is short for --emit svg with text results")
    common.add_argument("--emit", choices=("none", "svg"), default="none")
    common.add_argument("--svg-out", default=None, help="SVG file (default <subcommand>.svg)")
    common.add_argument("--size", type=int, default=600)
    common.set_defaults(env_tol=env_tol)

    p = _Parser(prog="sphgeom", description="Spherical geometry toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="solve a triangle")
    s.add_argument("--case", required=True, choices=[c.value for c in trig.SolveCase
                                                  if c is not trig.SolveCase.RIGHT])
    for k in ("a", "b", "c", "A", "B", "C"):
        s.add_argument(f"--{k}", type=float)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("area", parents=[common], help="triangle area by every formula")
    for k in ("a", "b", "c"):
        s.add_argument(f"--{k}", type=float)
    s.add_argument("--points", nargs="+")
    s.add_argument("--method", choices=("all",) + area_mod.METHODS, default="all")
    s.set_defaults(func=cmd_area)

    s = sub.add_parser("lexell", parents=[common], help="locus of fixed-area apexes")
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--area", required=True, type=float)
    s.add_argument("--samples", type=int, default=25)
    s.set_defaults(func=cmd_lexell)

    s = sub.add_parser("cevians", parents=[common], help="concurrency relations")
    s.add_argument("--geometry", choices=(cv.EUCLIDEAN, cv.SPHERICAL), default=cv.EUCLIDEAN)
    for k in ("A", "B", "C"):
        s.add_argument(f"--{k}", required=True)
    s.add_argument("--O")
    s.add_argument("--feet", nargs="+")
    s.set_defaults(func=cmd_cevians)

    s = sub.add_parser("pappus", parents=[common], help="inscribed triangles through three points")
    s.add_argument("--geometry", choices=(pappus.EUCLIDEAN, pappus.SPHERICAL),
                   default=pappus.EUCLIDEAN)
    s.add_argument("--center", default="0,0")
    s.add_argument("--pole")
    s.add_argument("--radius", type=float, default=1.0)
    s.add_argument("--targets", nargs="+", required=True)
    s.set_defaults(func=cmd_pappus)

    s = sub.add_parser("fuss", parents=[common], help="extremal vertex on a great circle")
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--pole", required=True, help="pole of the constraint great circle")
    s.add_argument("--objective", choices=[o.value for o in extremal.Objective], required=True)
    s.set_defaults(func=cmd_fuss)

    s = sub.add_parser("ellipse", parents=[common], help="spherical ellipse and its cone")
    s.add_argument("--f1", required=True)
    s.add_argument("--f2", required=True)
    s.add_argument("--sum", required=True, type=float, help="the constant sum 2s")
    s.add_argument("--n", type=int, default=12)
    s.set_defaults(func=cmd_ellipse)

    s = sub.add_parser("geodesic", parents=[common], help="geodesics by the Euler-Lagrange route")
    s.add_argument("--mode", choices=("connect", "shoot"), default="connect")
    s.add_argument("--p")
    s.add_argument("--q")
    s.add_argument("--start")
    s.add_argument("--bearing", type=float)
    s.add_argument("--length", type=float)
    s.add_argument("--samples", type=int, default=11)
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("project", parents=[common], help="map projections")
    s.add_argument("--kind", required=True, choices=[k.value for k in projections.Kind])
    s.add_argument("--anchor", help="projection pole or tangent point (default north pole)")
    s.add_argument("--lat", type=float)
    s.add_argument("--lon", type=float)
    s.add_argument("--inverse", action="store_true")
    s.add_argument("--u", type=float)
    s.add_argument("--v", type=float)
    s.add_argument("--graticule-step", type=float, default=None,
                   help="graticule spacing (default 15 degrees)")
    s.add_argument("--path", action="append",
                   help='spherical polyline "lat,lon;lat,lon;..." drawn over the graticule')
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("verify", parents=[common], help="run the property suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol is None:
        try:
            args.tol = _tolerance(args.env_tol) if args.env_tol else 1e-9
        except (ValueError, argparse.ArgumentTypeError) as exc:
            sys.stderr.write(f"sphgeom: error: {TOL_ENV}: {exc}\n")
            return EX_USAGE
    if args.output == "svg":
        args.output, args.emit = "text", "svg"
    if args.command == "project" and args.graticule_step is None:
        args.graticule_step = 15.0 if args.units == "deg" else math.pi / 12
    try:
        return args.func(Ctx(args))
    except GeometryError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EX_GEOMETRY
    except UsageError as exc:
        sys.stderr.write(f"sphgeom: error: {exc}\n")
        return EX_USAGE
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EX_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
