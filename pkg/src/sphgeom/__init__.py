"""Spherical trigonometry, loci, extremal problems, geodesics and projections."""

from . import area, cevians, core, errors, extremal, geodesics, lexell, pappus, projections, trig
from .errors import GeometryError

__all__ = ["area", "cevians", "core", "errors", "extremal", "geodesics", "lexell", "pappus",
           "projections", "trig", "GeometryError"]
__version__ = "0.1.0"
