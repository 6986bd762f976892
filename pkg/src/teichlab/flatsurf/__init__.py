"""Singular-flat surfaces from polygon gluings: build/validate, stretch,
separatrix tracing, critical graphs, cylinder decompositions and
R-neighborhoods of the zero set."""

from .surface import (
    EdgeGluing,
    FlatPolygon,
    HalfTranslationSurface,
    SaddleConnection,
    SurfaceError,
    UnresolvedRay,
    VertexClass,
    build_surface,
)
from .tracing import CriticalGraph, critical_graph, trace_separatrix
from .cylinders import CylinderDecomposition, FlatCylinder, cylinder_decomposition
from .neighborhood import NeighborhoodPiece, r_neighborhood
from .io import critical_graph_svg, surface_from_json, surface_to_json
from . import builders


def stretch(surface: HalfTranslationSurface, t) -> HalfTranslationSurface:
    """Teichmuller stretch (x, y) -> (x, ty) of the canonical coordinates."""
    return surface.stretch(t)


__all__ = [
    "EdgeGluing",
    "FlatPolygon",
    "HalfTranslationSurface",
    "SaddleConnection",
    "SurfaceError",
    "UnresolvedRay",
    "VertexClass",
    "build_surface",
    "stretch",
    "CriticalGraph",
    "critical_graph",
    "trace_separatrix",
    "CylinderDecomposition",
    "FlatCylinder",
    "cylinder_decomposition",
    "NeighborhoodPiece",
    "r_neighborhood",
    "critical_graph_svg",
    "surface_from_json",
    "surface_to_json",
    "builders",
]
