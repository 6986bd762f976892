"""Ideal polygons in shear coordinates.

The canonical triangulation is the fan from vertex 0 of the base triangle
(0, 1, INF).  Shear sign convention: placing vertex v_{i+1} across the fan
diagonal (v_0, v_i), a positive shear moves it in the direction that
increases the normalized coordinate N(v_{i+1}) = e^shear, where N sends
(v_0, v_i, v_{i-1}) to (INF, 0, -1).  The inverse map recovers shears by the
same normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .mobius import INF, MobiusMap, cross_ratio, is_inf


@dataclass(frozen=True)
class IdealPolygon:
    vertices: tuple[float, ...]  # cyclic, counterclockwise on the boundary
    shears: tuple[float, ...] = field(default=())

    def __post_init__(self):
        n = len(self.vertices)
        if n < 3:
            raise ValueError("an ideal polygon needs at least 3 vertices")
        if self.shears and len(self.shears) != n - 3:
            raise ValueError(f"expected {n-3} shears, got {len(self.shears)}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def cyclic_cross_ratios(self) -> list[float]:
        """Cross-ratios of the n consecutive 4-tuples of vertices."""
        v = self.vertices
        n = len(v)
        return [cross_ratio(v[k], v[(k + 1) % n], v[(k + 2) % n], v[(k + 3) % n]) for k in range(n)]

    def to_json_dict(self):
        return {
            "vertices": ["inf" if is_inf(x) else x for x in self.vertices],
            "shears": list(self.shears),
        }


def _normalizer(v0: float, vi: float, vprev: float) -> MobiusMap:
    return MobiusMap.from_triples((v0, vi, vprev), (INF, 0.0, -1.0))


def polygon_from_shears(n: int, shears=()) -> IdealPolygon:
    """Build an ideal n-gon from the n-3 shear parameters of the fan."""
    shears = tuple(float(s) for s in shears)
    if n < 3:
        raise ValueError("n must be >= 3")
    if len(shears) != n - 3:
        raise ValueError(f"need exactly {n-3} shears for an ideal {n}-gon")
    verts = [0.0, 1.0, INF]
    for i in range(2, n - 1):
        norm = _normalizer(verts[0], verts[i], verts[i - 1])
        verts.append(norm.inverse().apply(math.exp(shears[i - 2])))
    return IdealPolygon(tuple(verts), shears)


def shears_from_polygon(poly: IdealPolygon | tuple) -> tuple[float, ...]:
    """Recover fan shear coordinates; inverse of polygon_from_shears."""
    verts = poly.vertices if isinstance(poly, IdealPolygon) else tuple(poly)
    n = len(verts)
    out = []
    for i in range(2, n - 1):
        norm = _normalizer(verts[0], verts[i], verts[i - 1])
        u = norm.apply(verts[i + 1])
        if is_inf(u) or u <= 0:
            raise ValueError(f"vertex {i+1} not in shear position (normalized {u})")
        out.append(math.log(u))
    return tuple(out)


def regular_polygon(n: int) -> IdealPolygon:
    """Ideal n-gon with the rotational symmetry of the disk-model regular one.

    Vertices are -cot(pi (2k+1) / (2n)), the Cayley images of the n-th roots
    of unity rotated off the real axis.
    """
    verts = []
    for k in range(n):
        theta = math.pi * (2 * k + 1) / (2 * n)
        verts.append(-1.0 / math.tan(theta))
    return IdealPolygon(tuple(verts))
