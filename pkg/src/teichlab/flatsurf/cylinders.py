"""Cylinder decompositions of Jenkins-Strebel surfaces.

Once every horizontal separatrix resolves into a saddle connection, the
complement of the critical graph is a disjoint union of flat cylinders.
Each boundary circle of a cylinder is a face walk of the critical graph
(next half-edge = cyclic-next of the twin); the walk lies to the right of
each traversed half-edge.  Heights come from exact vertical probes launched
off the saddle connections.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .._num import Vec, vneg
from .surface import HalfTranslationSurface, SaddleConnection, SurfaceError
from .tracing import CriticalGraph, _direction_entries, _events, _find_entry, critical_graph

PROBE_MAX_LEGS = 100_000


@dataclass(frozen=True)
class FlatCylinder:
    circumference: Fraction
    height: Fraction
    boundary_faces: tuple[int, int]

    @property
    def modulus(self) -> Fraction:
        return self.height / self.circumference

    @property
    def core_extremal_length(self) -> Fraction:
        return self.circumference / self.height

    def to_json_dict(self):
        return {
            "circumference": float(self.circumference),
            "height": float(self.height),
            "modulus": float(self.modulus),
            "core_extremal_length": float(self.core_extremal_length),
        }


@dataclass(frozen=True)
class CylinderDecomposition:
    strebel: bool
    cylinders: tuple[FlatCylinder, ...] = ()
    reason: str = ""
    graph: Optional[CriticalGraph] = None

    def to_json_dict(self):
        return {
            "schema": "teichlab-cylinders",
            "strebel": self.strebel,
            "reason": self.reason,
            "cylinders": [c.to_json_dict() for c in self.cylinders],
        }


def cylinder_decomposition(surface: HalfTranslationSurface, budget=64) -> CylinderDecomposition:
    if not surface.is_closed:
        raise SurfaceError("cylinder decomposition needs a closed surface")
    if not surface.cone_classes:
        return _torus_cylinder(surface, budget)
    graph = critical_graph(surface, budget)
    if not graph.fully_resolved:
        return CylinderDecomposition(
            False, reason="unresolved separatrix rays (NotStrebel)", graph=graph
        )
    faces = _face_walks(surface, graph)
    face_of = {}
    for fi, walk in enumerate(faces):
        for germ in walk:
            face_of[germ] = fi
    face_len = [
        sum((graph.germ_results[g].length for g in walk), Fraction(0)) for walk in faces
    ]
    segments = _segment_index(surface, graph)
    side_to_germ = _side_map(graph)

    pairing: dict[int, tuple[int, Fraction]] = {}
    for fi, walk in enumerate(faces):
        for germ in walk:
            key, side = _germ_side(graph, germ)
            hit_key, hit_side, height = _probe(surface, graph, segments, key, side)
            other = face_of[side_to_germ[(hit_key, hit_side)]]
            if fi in pairing and pairing[fi] != (other, height):
                raise SurfaceError(
                    f"inconsistent cylinder pairing for face {fi}: "
                    f"{pairing[fi]} vs {(other, height)}"
                )
            pairing[fi] = (other, height)
    cylinders = []
    seen = set()
    total = Fraction(0)
    for fi, (fj, height) in sorted(pairing.items()):
        if fi in seen:
            continue
        if fi == fj:
            raise SurfaceError("self-glued cylinder (face pairs with itself)")
        if pairing[fj] != (fi, height):
            raise SurfaceError("asymmetric cylinder pairing")
        if face_len[fi] != face_len[fj]:
            raise SurfaceError(
                f"cylinder boundary lengths differ: {face_len[fi]} vs {face_len[fj]}"
            )
        seen.update((fi, fj))
        cylinders.append(FlatCylinder(face_len[fi], height, (fi, fj)))
        total += face_len[fi] * height
    if total != surface.area:
        raise SurfaceError(
            f"cylinder areas sum to {float(total)} != surface area {float(surface.area)}"
        )
    return CylinderDecomposition(True, tuple(cylinders), graph=graph)


def _torus_cylinder(surface, budget):
    """Closed surface with no zeros: a flat torus.  The horizontal foliation
    is one cylinder when the leaf through a marked vertex closes up."""
    cls = surface.classes[0]
    entries = cls.separatrices
    (pid, vi), sign = entries[0]
    d: Vec = (Fraction(sign), Fraction(0))
    q = surface.polygons[pid].vertex(vi)
    length = _leaf_length_until_class(surface, cls.index, pid, q, d, budget)
    if length is None:
        return CylinderDecomposition(
            False, reason="horizontal leaf did not close within budget (NotStrebel)"
        )
    height = surface.area / length
    return CylinderDecomposition(
        True, (FlatCylinder(length, height, (0, 0)),)
    )


def _leaf_length_until_class(surface, stop_class, pid, q, d, budget):
    from .tracing import MAX_LEGS

    accumulated = Fraction(0)
    axis = (Fraction(1), Fraction(0))
    for _ in range(MAX_LEGS):
        ev = _events(surface.polygons[pid], q, d)
        if ev is None:
            raise SurfaceError("leaf escaped polygon")
        if ev[0] == "vertex":
            _, vi, dist = ev
            accumulated += dist
            if accumulated > budget:
                return None
            cls = surface.classes[surface.class_of_corner((pid, vi))]
            if not cls.interior:
                return None
            if cls.index == stop_class:
                return accumulated
            entries = _direction_entries(surface, cls, axis)
            back = _find_entry(surface, cls, entries, pid, vi, vneg(d))
            if len(entries) != 2:
                return None
            (pid, nvi), nsign = entries[1 - back]
            q = surface.polygons[pid].vertex(nvi)
            d = (Fraction(nsign), Fraction(0))
            continue
        _, ei, point, dist = ev
        accumulated += dist
        if accumulated > budget:
            return None
        ref = (pid, ei)
        if ref in surface.boundary_edges:
            return None
        (pid, _), q, orient = surface.apply_glue(ref, point)
        if orient == -1:
            d = vneg(d)
    raise SurfaceError("leaf trace exceeded safety limit")


def _face_walks(surface, graph):
    """Orbits of next(h) = cyclic-next(twin(h)); the face lies to the right
    of each traversed half-edge."""
    germs = list(graph.half_edges())
    nxt = {}
    for germ in germs:
        tw = graph.twin(germ)
        if tw is None:
            raise SurfaceError("face walks need a fully resolved graph")
        ci, s = tw
        n = len(surface.classes[ci].separatrices)
        nxt[germ] = (ci, (s + 1) % n)
    faces = []
    unvisited = set(germs)
    while unvisited:
        start = min(unvisited)
        walk = [start]
        unvisited.discard(start)
        cur = nxt[start]
        while cur != start:
            walk.append(cur)
            unvisited.discard(cur)
            cur = nxt[cur]
        faces.append(tuple(walk))
    return faces


def _canon_key(conn: SaddleConnection):
    return min(conn.start, conn.end)


def _germ_side(graph, germ):
    """Side object (canonical germ, 'up'|'down') of the face right of germ.

    Sides are named in the chart of the canonical germ's first trace leg;
    the reverse germ's face is forced to be the opposite side.
    """
    res = graph.germ_results[germ]
    key = _canon_key(res)
    leg0 = graph.germ_results[key].legs[0]
    s0 = 1 if leg0.end[0] > leg0.start[0] else -1
    canon_side = "down" if s0 > 0 else "up"
    if germ == key:
        return key, canon_side
    return key, ("up" if canon_side == "down" else "down")


def _side_map(graph):
    out = {}
    for conn in graph.connections:
        if conn.start == conn.end:
            raise SurfaceError("saddle connection closes onto its own germ")
        for germ in (conn.start, conn.end):
            key, side = _germ_side(graph, germ)
            out[(key, side)] = germ
    return out


def _segment_index(surface, graph):
    """Horizontal critical segments per chart: (y, xlo, xhi, key, flip).

    Legs running along glued edges are mirrored into the partner chart.
    """
    from .surface import _on_segment

    index: dict[str, list] = {pid: [] for pid in surface.polygons}

    def add(pid, a, b, key, flip):
        y = a[1]
        xlo, xhi = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
        index[pid].append((y, xlo, xhi, key, flip))

    for conn in graph.connections:
        key = _canon_key(conn)
        for leg in graph.germ_results[key].legs:
            add(leg.pid, leg.start, leg.end, key, leg.flip)
            poly = surface.polygons[leg.pid]
            for i in range(poly.n):
                a, b = poly.edge(i)
                if a[1] == b[1] == leg.start[1] and _on_segment(a, b, leg.start) and _on_segment(a, b, leg.end):
                    ref = (leg.pid, i)
                    if ref in surface.boundary_edges:
                        continue
                    (qid, _), pa, orient = surface.apply_glue(ref, leg.start)
                    _, pb, _ = surface.apply_glue(ref, leg.end)
                    add(qid, pa, pb, key, leg.flip * orient)
    return index


def _probe(surface, graph, segments, key, side):
    """Vertical trace from the named side of a saddle connection to the first
    critical segment it meets.  Exact; retries with a shifted launch point
    when it grazes a vertex or segment endpoint."""
    leg0 = graph.germ_results[key].legs[0]
    for num, den in ((1, 2), (1, 3), (2, 5), (3, 7), (4, 9)):
        t = Fraction(num, den)
        start = (
            leg0.start[0] + t * (leg0.end[0] - leg0.start[0]),
            leg0.start[1],
        )
        dy = Fraction(1) if side == "up" else Fraction(-1)
        try:
            return _probe_from(surface, segments, leg0.pid, start, dy)
        except _Graze:
            continue
    raise SurfaceError("vertical probe kept grazing singular points")


class _Graze(Exception):
    pass


def _probe_from(surface, segments, pid, q, dy):
    height = Fraction(0)
    d: Vec = (Fraction(0), dy)
    axis = (Fraction(0), Fraction(1))
    # the launch point sits on a saddle connection, possibly on a polygon
    # edge with the probe pointing outward: transfer through the gluing
    from .surface import _on_segment

    poly = surface.polygons[pid]
    for i in range(poly.n):
        a, b = poly.edge(i)
        if _on_segment(a, b, q):
            if q == a or q == b:
                raise _Graze()
            ev_ = (b[0] - a[0], b[1] - a[1])
            inward = (-ev_[1], ev_[0])
            sgn = inward[0] * d[0] + inward[1] * d[1]
            if sgn == 0:
                raise _Graze()
            if sgn < 0:
                ref = (pid, i)
                if ref in surface.boundary_edges:
                    raise SurfaceError("probe launched into the boundary")
                (pid, _), q, orient = surface.apply_glue(ref, q)
                if orient == -1:
                    d = vneg(d)
            break
    for _ in range(PROBE_MAX_LEGS):
        hit = None  # (dist, key, flip)
        for y, xlo, xhi, key, flip in segments[pid]:
            if xlo <= q[0] <= xhi:
                dist = (y - q[1]) * d[1]
                if dist > 0 and (hit is None or dist < hit[0]):
                    if q[0] == xlo or q[0] == xhi:
                        raise _Graze()
                    hit = (dist, key, flip)
        ev = _events(surface.polygons[pid], q, d)
        if ev is None:
            raise SurfaceError("probe escaped polygon")
        ev_dist = ev[2] if ev[0] == "vertex" else ev[3]
        if hit is not None and hit[0] <= ev_dist:
            dist, key, flip = hit
            height += dist
            moving_up = d[1] > 0
            side_local = "down" if moving_up else "up"
            side = side_local if flip == 1 else ("up" if side_local == "down" else "down")
            return key, side, height
        if ev[0] == "vertex":
            _, vi, dist = ev
            height += dist
            cls = surface.classes[surface.class_of_corner((pid, vi))]
            if not cls.interior or cls.is_cone:
                raise _Graze()
            entries = _direction_entries(surface, cls, axis)
            if len(entries) != 2:
                raise _Graze()
            back = _find_entry(surface, cls, entries, pid, vi, vneg(d))
            (pid, nvi), nsign = entries[1 - back]
            q = surface.polygons[pid].vertex(nvi)
            d = (Fraction(0), Fraction(nsign))
            continue
        _, ei, point, dist = ev
        height += dist
        ref = (pid, ei)
        if ref in surface.boundary_edges:
            raise SurfaceError("probe hit the surface boundary")
        (pid, _), q, orient = surface.apply_glue(ref, point)
        if orient == -1:
            d = vneg(d)
    raise SurfaceError("probe exceeded safety limit")
