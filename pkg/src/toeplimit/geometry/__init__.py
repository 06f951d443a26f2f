"""Exact-predicate polygon arithmetic on a fixed-point grid."""
from ._backend import BACKEND
from .region import (FixedPointFrame, Region, area, covers, fatten_points, fatten_segments,
                     fattened_intersection, intersect, offset_outward, union, winding_number)

__all__ = ["BACKEND", "FixedPointFrame", "Region", "area", "covers", "fatten_points",
           "fatten_segments", "fattened_intersection", "intersect", "offset_outward", "union",
           "winding_number"]
