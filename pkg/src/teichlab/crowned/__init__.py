"""Upper half-plane hyperbolic geometry: Mobius maps, ideal polygons via
shear coordinates, crown ends, and curvature of sampled curves."""

from .mobius import INF, MobiusMap, cross_ratio, is_inf
from .geometry import (
    Horocycle,
    circle_points,
    geodesic_curvature,
    geodesic_points,
    horocycle_segment_length,
    hyp_distance,
)
from .polygons import IdealPolygon, polygon_from_shears, regular_polygon, shears_from_polygon
from .crowns import CrownEnd, crown_residue

__all__ = [
    "INF",
    "MobiusMap",
    "cross_ratio",
    "is_inf",
    "Horocycle",
    "circle_points",
    "geodesic_curvature",
    "geodesic_points",
    "horocycle_segment_length",
    "hyp_distance",
    "IdealPolygon",
    "polygon_from_shears",
    "regular_polygon",
    "shears_from_polygon",
    "CrownEnd",
    "crown_residue",
]
