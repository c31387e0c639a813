"""Lemoine-type circles of a triangle: constructions, Tucker family tests and
numerical verification of their concyclicity and Brocard-axis positions."""

from .centers import (
    Triangle,
    brocard_axis,
    centroid,
    circumcevian_triangle,
    circumcircle,
    random_triangle,
    reference_triangle,
    symmedian_point,
    symmedian_point_synthetic,
)
from .circles import (
    SPECTRUM,
    SixPointConfig,
    bui_circle,
    brocard_spectrum,
    construct,
    first_lemoine,
    new_circle,
    second_lemoine,
    third_lemoine,
)
from .kernel import Circle, Line, Point, Tolerance, point
from .numeric import use_backend
from .tucker import is_tucker, tucker_circle, tucker_hexagon, tucker_radius_at

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "Line",
    "Point",
    "SPECTRUM",
    "SixPointConfig",
    "Tolerance",
    "Triangle",
    "brocard_axis",
    "brocard_spectrum",
    "bui_circle",
    "centroid",
    "circumcevian_triangle",
    "circumcircle",
    "construct",
    "first_lemoine",
    "is_tucker",
    "new_circle",
    "point",
    "random_triangle",
    "reference_triangle",
    "second_lemoine",
    "symmedian_point",
    "symmedian_point_synthetic",
    "third_lemoine",
    "tucker_circle",
    "tucker_hexagon",
    "tucker_radius_at",
    "use_backend",
]
