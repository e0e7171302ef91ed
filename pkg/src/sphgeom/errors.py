"""Exception hierarchy shared by all modules.

Every error derives from :class:`GeometryError`; the CLI prints the class name
on standard error and exits with status 2.
"""


class GeometryError(ValueError):
    """Base class for domain errors."""


class DegenerateInput(GeometryError):
    pass


class CoincidentCircles(GeometryError):
    pass


class PointNotOnCircle(GeometryError):
    pass


class InvalidDistance(GeometryError):
    pass


class RangeError(GeometryError):
    pass


# trig
class Inconsistent(GeometryError):
    """No spherical triangle fits the given data."""


class Degenerate(GeometryError):
    """The data describe a one-parameter family rather than a triangle."""


# area
class InvalidElements(GeometryError):
    pass


class DegenerateHeight(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


# lexell
class InvalidArea(GeometryError):
    pass


class DegenerateBase(GeometryError):
    pass


class ArcMissesCircle(GeometryError):
    pass


class NotConcyclic(GeometryError):
    pass


# cevians
class NotConcurrent(GeometryError):
    def __init__(self, spread: float):
        super().__init__(f"cevians not concurrent (spread {spread:.3e})")
        self.spread = spread


class RelationViolated(GeometryError):
    pass


# pappus
class NoSolution(GeometryError):
    def __init__(self, min_residual: float):
        super().__init__(f"no fixed point found (min residual {min_residual:.3e})")
        self.min_residual = min_residual


class TangentTarget(GeometryError):
    pass


class TargetOnCircleAtV(GeometryError):
    pass


# extremal
class DegenerateInstance(GeometryError):
    pass


class EmptyLocus(GeometryError):
    pass


class DegenerateFoci(GeometryError):
    pass


# geodesics
class SingularCoordinate(GeometryError):
    pass


class AntipodalEndpoints(GeometryError):
    pass


class QuadratureNotConverged(GeometryError):
    pass


# projections
class OutOfDomain(GeometryError):
    pass


class PolarStart(GeometryError):
    pass
