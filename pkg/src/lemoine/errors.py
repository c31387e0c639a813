"""Exception hierarchy shared by all constructions."""


class GeometryError(Exception):
    """Base class for construction failures."""


class DegenerateInput(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class CollinearPoints(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class NotConcyclic(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class DegenerateBase(GeometryError):
    pass


class PointNotOnCircle(GeometryError):
    pass


class DegenerateTangency(GeometryError):
    pass


class AntipodalChord(GeometryError):
    pass


class PoleAtInfinity(AntipodalChord):
    pass


class PointOutsideCircle(GeometryError):
    pass


class PointAtVertex(GeometryError):
    pass


class EquilateralDegenerate(GeometryError):
    pass


class DegeneratePivot(GeometryError):
    pass


class TangentialDegeneracy(GeometryError):
    pass


class NoRealIntersection(GeometryError):
    pass


class DegenerateStep(GeometryError):
    pass


class TargetOutOfRange(GeometryError):
    pass


class NonFiniteResult(GeometryError):
    pass
