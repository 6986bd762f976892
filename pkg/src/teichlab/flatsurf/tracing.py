"""Exact separatrix tracing and critical graphs.

Horizontal rays are traced chart-by-chart with rational arithmetic: the
direction in every chart is one of the four axis directions (gluings are
z -> z + c or z -> -z + c, so horizontality is preserved), and every crossing
point is a rational function of the input data.  Hit detection of cone
points is therefore exact on rational input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .._num import Vec, rat, vneg
from .surface import (
    HalfTranslationSurface,
    SaddleConnection,
    SurfaceError,
    UnresolvedRay,
    VertexClass,
)

MAX_LEGS = 200_000


@dataclass(frozen=True)
class TraceLeg:
    """One straight run of the trajectory inside a single chart."""

    pid: str
    start: Vec
    end: Vec
    flip: int  # +1 if this chart agrees with the initial frame, -1 after an
    # odd number of halfturn crossings


def _axis_of(d: Vec) -> str:
    return "h" if d[1] == 0 else "v"


def _events(poly, q: Vec, d: Vec):
    """Nearest stop of the axis-parallel ray from q in direction d.

    Returns ('vertex', index, dist) or ('edge', index, point, dist) or None.
    """
    horizontal = d[1] == 0
    s = d[0] if horizontal else d[1]
    along = 0 if horizontal else 1
    perp = 1 - along
    best = None  # (dist, priority, payload); priority 0 = vertex, 1 = edge
    for i, v in enumerate(poly.vertices):
        if v[perp] == q[perp]:
            dist = s * (v[along] - q[along])
            if dist > 0 and (best is None or (dist, 0) < best[:2]):
                best = (dist, 0, ("vertex", i))
    n = poly.n
    for i in range(n):
        a, b = poly.edge(i)
        pa, pb = a[perp], b[perp]
        if pa == pb:
            continue  # parallel edges are reached through their endpoints
        lo, hi = (pa, pb) if pa < pb else (pb, pa)
        if not (lo < q[perp] < hi):
            continue
        t = (q[perp] - pa) / (pb - pa)
        xc = a[along] + t * (b[along] - a[along])
        dist = s * (xc - q[along])
        if dist > 0 and (best is None or (dist, 1) < best[:2]):
            point = (xc, q[perp]) if horizontal else (q[perp], xc)
            best = (dist, 1, ("edge", i, point))
    if best is None:
        return None
    dist, _, payload = best
    if payload[0] == "vertex":
        return ("vertex", payload[1], dist)
    return ("edge", payload[1], payload[2], dist)


def _direction_entries(surface, cls: VertexClass, axis: Vec):
    if axis[0] == 1 and axis[1] == 0:
        return cls.separatrices
    return tuple(surface._enumerate_directions(cls.corners, axis))


def _find_entry(surface, cls: VertexClass, entries, pid, vi, d: Vec) -> int:
    """Index of the direction entry owning chart direction d at (pid, vi)."""
    c = (pid, vi)
    dd = d
    if not surface.corner_contains_direction(c, dd):
        n = surface.polygons[pid].n
        ref = (pid, (vi - 1) % n)
        _, _, orient = surface.apply_glue(ref, surface.polygons[pid].vertex(vi))
        c = surface._next_corner_ccw((pid, vi))
        dd = dd if orient == 1 else vneg(dd)
        if not surface.corner_contains_direction(c, dd):
            raise SurfaceError(f"direction attribution failed at {(pid, vi)}")
    sign = 1 if (dd[0] > 0 or (dd[0] == 0 and dd[1] > 0)) else -1
    for idx, (corner, sgn) in enumerate(entries):
        if corner == c and sgn == sign:
            return idx
    raise SurfaceError(f"direction entry not found at {(pid, vi)}")


def trace_separatrix(
    surface: HalfTranslationSurface,
    cone_class: int,
    direction_index: int,
    budget,
    axis: Vec = (Fraction(1), Fraction(0)),
):
    """Trace one separatrix until it hits the singular set, the boundary, or
    exhausts the length budget.

    Returns a SaddleConnection or an UnresolvedRay.
    """
    budget = rat(budget)
    if budget <= 0:
        raise SurfaceError("budget must be positive")
    axis = (rat(axis[0]), rat(axis[1]))
    cls = surface.classes[cone_class]
    if not cls.interior:
        raise SurfaceError(f"class {cone_class} is on the boundary")
    entries = _direction_entries(surface, cls, axis)
    if not (0 <= direction_index < len(entries)):
        raise SurfaceError(
            f"direction index {direction_index} out of range "
            f"(class has {len(entries)})"
        )
    (pid, vi), sign = entries[direction_index]
    d: Vec = (sign * axis[0], sign * axis[1])
    q = surface.polygons[pid].vertex(vi)
    return _trace(surface, (cone_class, direction_index), pid, q, d, budget, axis)


def _trace(surface, start_germ, pid, q, d, budget, axis):
    accumulated = Fraction(0)
    legs: list[TraceLeg] = []
    flip = 1
    hol_along = Fraction(0)
    for _ in range(MAX_LEGS):
        poly = surface.polygons[pid]
        ev = _events(poly, q, d)
        if ev is None:
            raise SurfaceError(f"ray escaped polygon {pid} (invalid geometry)")
        if ev[0] == "vertex":
            _, vi, dist = ev
            end = poly.vertex(vi)
            legs.append(TraceLeg(pid, q, end, flip))
            accumulated += dist
            hol_along += flip * (d[0] + d[1]) * dist  # d is +-axis: signed run
            if accumulated > budget:
                return UnresolvedRay(start_germ, "budget", accumulated, tuple(legs))
            cls = surface.classes[surface.class_of_corner((pid, vi))]
            if not cls.interior:
                return UnresolvedRay(start_germ, "boundary", accumulated, tuple(legs))
            entries = _direction_entries(surface, cls, axis)
            back = _find_entry(surface, cls, entries, pid, vi, vneg(d))
            if cls.is_cone:
                hol = (
                    (abs(hol_along), Fraction(0))
                    if axis[1] == 0
                    else (Fraction(0), abs(hol_along))
                )
                return SaddleConnection(
                    start_germ, (cls.index, back), hol, accumulated, tuple(legs)
                )
            # regular point: pass straight through along the other direction
            if len(entries) != 2:
                raise SurfaceError(
                    f"regular vertex with {len(entries)} axis directions"
                )
            (npid, nvi), nsign = entries[1 - back]
            # physical direction is unchanged: adjust the frame factor
            old_sign = 1 if (d[0] + d[1]) > 0 else -1
            flip = flip * old_sign * nsign
            pid, q = npid, surface.polygons[npid].vertex(nvi)
            d = (nsign * axis[0], nsign * axis[1])
            continue
        _, ei, point, dist = ev
        legs.append(TraceLeg(pid, q, point, flip))
        accumulated += dist
        hol_along += flip * (d[0] + d[1]) * dist
        if accumulated > budget:
            return UnresolvedRay(start_germ, "budget", accumulated, tuple(legs))
        ref = (pid, ei)
        if ref in surface.boundary_edges:
            return UnresolvedRay(start_germ, "boundary", accumulated, tuple(legs))
        (pid, _), q, orient = surface.apply_glue(ref, point)
        if orient == -1:
            d = vneg(d)
            flip = -flip
    raise SurfaceError("trace exceeded the leg safety limit")


@dataclass(frozen=True)
class CriticalGraph:
    """Metric ribbon graph of the horizontal foliation's critical trajectories.

    Vertices are the cone classes; half-edges are separatrix germs in their
    counterclockwise enumeration order, so the cyclic structure is inherited
    from the surface orientation.
    """

    surface: HalfTranslationSurface
    vertices: tuple[int, ...]  # cone class indices
    connections: tuple[SaddleConnection, ...]
    rays: tuple[UnresolvedRay, ...]
    germ_results: dict = field(repr=False, default_factory=dict)

    @property
    def fully_resolved(self) -> bool:
        return not self.rays

    def half_edges(self):
        for ci in self.vertices:
            cls = self.surface.classes[ci]
            for s in range(len(cls.separatrices)):
                yield (ci, s)

    def twin(self, germ):
        res = self.germ_results[germ]
        if isinstance(res, SaddleConnection):
            return res.end if res.start == germ else res.start
        return None

    def to_ribbon_data(self):
        """Export in the limits.MetricRibbonGraph wire format."""
        half_edges = []
        ids = {}
        for ci, s in self.half_edges():
            ids[(ci, s)] = f"g{ci}.{s}"
        lengths = {}
        for ci, s in self.half_edges():
            tw = self.twin((ci, s))
            res = self.germ_results[(ci, s)]
            if tw is not None:
                lengths[ids[(ci, s)]] = res.length
            half_edges.append(
                {
                    "id": ids[(ci, s)],
                    "vertex": f"v{ci}",
                    "cyclic_pos": s,
                    "twin": ids[tw] if tw is not None else None,
                }
            )
        return {
            "schema": "teichlab-ribbon",
            "vertices": [f"v{ci}" for ci in self.vertices],
            "half_edges": half_edges,
            "lengths": {k: float(v) for k, v in lengths.items()},
        }

    def to_json_dict(self):
        return {
            "schema": "teichlab-critical-graph",
            "vertices": list(self.vertices),
            "saddle_connections": [c.to_json_dict() for c in self.connections],
            "unresolved_rays": [r.to_json_dict() for r in self.rays],
            "fully_resolved": self.fully_resolved,
        }


def critical_graph(surface: HalfTranslationSurface, budget) -> CriticalGraph:
    """Trace every horizontal separatrix of every zero up to the budget."""
    budget = rat(budget)
    if budget <= 0:
        raise SurfaceError("budget must be positive")
    germ_results = {}
    connections = []
    rays = []
    seen_pairs = set()
    vertices = tuple(cl.index for cl in surface.cone_classes)
    for ci in vertices:
        cls = surface.classes[ci]
        for s in range(len(cls.separatrices)):
            res = trace_separatrix(surface, ci, s, budget)
            germ_results[(ci, s)] = res
            if isinstance(res, SaddleConnection):
                key = frozenset((res.start, res.end))
                if key not in seen_pairs:
                    seen_pairs.add(key)
                    connections.append(res)
            else:
                rays.append(res)
    # symmetry check: the reverse germ of every connection must resolve to the
    # same pair with the same length
    for c in connections:
        back = germ_results.get(c.end)
        if not isinstance(back, SaddleConnection) or back.length != c.length:
            raise SurfaceError(
                f"asymmetric saddle connection {c.start}<->{c.end}: tracing is "
                "inconsistent"
            )
    return CriticalGraph(
        surface, vertices, tuple(connections), tuple(rays), germ_results
    )
