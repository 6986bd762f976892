"""Half-translation surfaces as Euclidean polygon gluings.

Coordinates live in the canonical chart of the underlying quadratic
differential, so the horizontal/vertical foliations are coordinate-parallel
and the Teichmuller stretch is the vertex map (x, y) -> (x, ty).  All
coordinates are exact Fractions; float input is converted to its exact
dyadic value and compared at 1e-12 relative tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .._num import Vec, close, cross, dot, norm2, rat, vadd, vneg, vsub

ANGLE_SNAP = 1e-6  # tolerance when snapping a float angle sum to a multiple of pi


class SurfaceError(ValueError):
    """Raised when a polygon-gluing description fails validation."""


@dataclass(frozen=True)
class FlatPolygon:
    id: str
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n < 3:
            raise SurfaceError(f"polygon {self.id}: needs at least 3 vertices")
        for i in range(n):
            if self.edge_vector(i) == (0, 0):
                raise SurfaceError(f"polygon {self.id}: edge {i} has zero length")
        if self.signed_area2() <= 0:
            raise SurfaceError(f"polygon {self.id}: negative orientation")
        self._check_simple()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Vec:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> tuple[Vec, Vec]:
        return self.vertex(i), self.vertex(i + 1)

    def edge_vector(self, i: int) -> Vec:
        a, b = self.edge(i)
        return vsub(b, a)

    def signed_area2(self) -> Fraction:
        s = Fraction(0)
        for i in range(self.n):
            a, b = self.edge(i)
            s += a[0] * b[1] - b[0] * a[1]
        return s

    def _check_simple(self):
        n = self.n
        for i in range(n):
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # adjacent edges share a vertex by construction
                if _segments_cross(*self.edge(i), *self.edge(j)):
                    raise SurfaceError(
                        f"polygon {self.id}: edges {i} and {j} intersect (not simple)"
                    )

    def contains(self, p: Vec) -> bool:
        """Point strictly inside or on the boundary (exact crossing test)."""
        return _point_in_polygon(self.vertices, p)


def _segments_cross(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    d1 = cross(vsub(b, a), vsub(c, a))
    d2 = cross(vsub(b, a), vsub(d, a))
    d3 = cross(vsub(d, c), vsub(a, c))
    d4 = cross(vsub(d, c), vsub(b, c))
    if ((d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True
    # collinear overlap / endpoint touching counts as a crossing for
    # non-adjacent edges
    for p, (u, v) in (((c, (a, b))), ((d, (a, b))), ((a, (c, d))), ((b, (c, d)))):
        if _on_segment(u, v, p):
            return True
    return False


def _on_segment(a: Vec, b: Vec, p: Vec) -> bool:
    if cross(vsub(b, a), vsub(p, a)) != 0:
        return False
    t = dot(vsub(p, a), vsub(b, a))
    return 0 <= t <= norm2(vsub(b, a))


def _point_in_polygon(verts: tuple[Vec, ...], p: Vec) -> bool:
    n = len(verts)
    for i in range(n):
        if _on_segment(verts[i], verts[(i + 1) % n], p):
            return True
    inside = False
    x, y = p
    for i in range(n):
        (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


EdgeRef = tuple[str, int]


@dataclass(frozen=True)
class EdgeGluing:
    a: EdgeRef
    b: EdgeRef
    kind: str  # "translation" (z -> z + c) or "halfturn" (z -> -z + c)

    def __post_init__(self):
        if self.kind not in ("translation", "halfturn"):
            raise SurfaceError(f"unknown gluing kind {self.kind!r}")


@dataclass(frozen=True)
class SaddleConnection:
    start: tuple[int, int]  # (cone class index, separatrix index)
    end: tuple[int, int]
    holonomy: tuple[Fraction, Fraction]
    length: Fraction
    legs: tuple  # chart segments, see tracing module

    def to_json_dict(self):
        return {
            "start": list(self.start),
            "end": list(self.end),
            "holonomy": [self.holonomy[0], self.holonomy[1]],
            "length": float(self.length),
        }


@dataclass(frozen=True)
class UnresolvedRay:
    start: tuple[int, int]
    reason: str  # "budget" or "boundary"
    length_traced: Fraction
    legs: tuple = ()

    def to_json_dict(self):
        return {
            "start": list(self.start),
            "reason": self.reason,
            "length_traced": float(self.length_traced),
        }


Corner = tuple[str, int]  # (polygon id, vertex index)


@dataclass(frozen=True)
class VertexClass:
    index: int
    corners: tuple[Corner, ...]  # in counterclockwise walk order
    interior: bool
    angle: float  # total angle in radians (partial for boundary classes)
    cone_order: Optional[int]  # k with angle (k+2)pi; None for boundary classes
    separatrices: tuple[tuple[Corner, int], ...]  # (corner, sign) ccw enumerated

    @property
    def is_cone(self) -> bool:
        return self.cone_order is not None and self.cone_order != 0

    def to_json_dict(self):
        return {
            "corners": [list(c) for c in self.corners],
            "interior": self.interior,
            "angle_over_pi": self.angle / math.pi,
            "cone_order": self.cone_order,
            "num_separatrices": len(self.separatrices),
        }


class HalfTranslationSurface:
    """Validated polygon gluing with derived singularity data.

    Immutable after construction; all operations return new surfaces.
    """

    def __init__(self, polygons, gluings, allow_boundary=False, _skip_validation=False):
        self.polygons: dict[str, FlatPolygon] = {p.id: p for p in polygons}
        if len(self.polygons) != len(polygons):
            raise SurfaceError("duplicate polygon ids")
        self.gluings: tuple[EdgeGluing, ...] = tuple(gluings)
        self.allow_boundary = allow_boundary
        self._validate_gluings()
        self._analyze()

    # -- validation ---------------------------------------------------------

    def _validate_gluings(self):
        self.edge_map: dict[EdgeRef, tuple[EdgeRef, str]] = {}
        for g in self.gluings:
            for ref in (g.a, g.b):
                pid, ei = ref
                if pid not in self.polygons:
                    raise SurfaceError(f"gluing references unknown polygon {pid!r}")
                if not (0 <= ei < self.polygons[pid].n):
                    raise SurfaceError(f"gluing references bad edge index {ref}")
                if ref in self.edge_map or (ref == g.a and ref == g.b):
                    raise SurfaceError(f"edge {ref} glued more than once")
            va = self.polygons[g.a[0]].edge_vector(g.a[1])
            vb = self.polygons[g.b[0]].edge_vector(g.b[1])
            la2, lb2 = norm2(va), norm2(vb)
            if not close(la2, lb2):
                raise SurfaceError(
                    f"edge length mismatch: {g.a} length^2 {float(la2):.12g} vs "
                    f"{g.b} length^2 {float(lb2):.12g}"
                )
            want = vneg(va) if g.kind == "translation" else va
            if not (close(want[0], vb[0]) and close(want[1], vb[1])):
                raise SurfaceError(
                    f"edge direction incompatible with {g.kind} gluing: {g.a} -> {g.b}"
                )
            self.edge_map[g.a] = (g.b, g.kind)
            self.edge_map[g.b] = (g.a, g.kind)
        self.boundary_edges: set[EdgeRef] = set()
        for pid, poly in self.polygons.items():
            for i in range(poly.n):
                if (pid, i) not in self.edge_map:
                    self.boundary_edges.add((pid, i))
        if self.boundary_edges and not self.allow_boundary:
            ref = sorted(self.boundary_edges)[0]
            raise SurfaceError(f"unmatched edge {ref} (pass allow_boundary for pieces)")

    # -- gluing maps --------------------------------------------------------

    def glue_partner(self, ref: EdgeRef) -> Optional[tuple[EdgeRef, str]]:
        return self.edge_map.get(ref)

    def glue_map(self, ref: EdgeRef):
        """Return (kind, c) with the chart map z -> z + c or z -> -z + c
        carrying edge `ref` onto its partner."""
        partner = self.edge_map.get(ref)
        if partner is None:
            raise SurfaceError(f"edge {ref} is a boundary edge")
        (qid, j), kind = partner
        a0, _ = self.polygons[ref[0]].edge(ref[1])
        b0, b1 = self.polygons[qid].edge(j)
        if kind == "translation":
            c = vsub(b1, a0)
        else:
            c = vadd(a0, b1)
        return kind, c

    def apply_glue(self, ref: EdgeRef, p: Vec) -> tuple[EdgeRef, Vec, int]:
        """Map point p on edge `ref` to the partner chart.

        Returns (partner edge, image point, orientation factor: -1 for
        halfturn, +1 for translation).
        """
        kind, c = self.glue_map(ref)
        partner, _ = self.edge_map[ref]
        if kind == "translation":
            return partner, vadd(p, c), 1
        return partner, vsub(c, p), -1

    # -- derived topology ---------------------------------------------------

    def _analyze(self):
        corners = [(pid, i) for pid, poly in self.polygons.items() for i in range(poly.n)]
        self._corner_set = set(corners)

        # union-find over corners via gluing endpoint identifications
        parent = {c: c for c in corners}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for g in self.gluings:
            (pa, i), (pb, j) = g.a, g.b
            na, nb = self.polygons[pa].n, self.polygons[pb].n
            # start of A ~ end of B, end of A ~ start of B (both kinds)
            union((pa, i), (pb, (j + 1) % nb))
            union((pa, (i + 1) % na), (pb, j))

        groups: dict[Corner, list[Corner]] = {}
        for c in corners:
            groups.setdefault(find(c), []).append(c)

        classes = []
        for members in groups.values():
            classes.append(self._build_class(len(classes), sorted(members)))
        # canonical order: by smallest corner
        classes.sort(key=lambda cl: cl.corners[0])
        self.classes: tuple[VertexClass, ...] = tuple(
            VertexClass(
                idx,
                cl.corners,
                cl.interior,
                cl.angle,
                cl.cone_order,
                cl.separatrices,
            )
            for idx, cl in enumerate(classes)
        )
        self._corner_to_class = {}
        for cl in self.classes:
            for c in cl.corners:
                self._corner_to_class[c] = cl.index

        self.cone_classes = tuple(cl for cl in self.classes if cl.is_cone)
        self.area: Fraction = sum(
            (poly.signed_area2() / 2 for poly in self.polygons.values()), Fraction(0)
        )
        if self.area <= 0:
            raise SurfaceError("surface has non-positive area")

        self.is_closed = not self.boundary_edges
        if self.is_closed:
            V = len(self.classes)
            E = len(self.gluings)
            F = len(self.polygons)
            chi = V - E + F
            if chi % 2 != 0:
                raise SurfaceError(f"Euler characteristic {chi} is odd")
            self.genus = (2 - chi) // 2
            if self.genus < 0:
                raise SurfaceError(f"negative genus from chi = {chi}")
            total_k = sum(cl.cone_order for cl in self.classes)
            if total_k != 4 * self.genus - 4:
                raise SurfaceError(
                    f"zero orders sum to {total_k}, expected 4g-4 = {4*self.genus-4}"
                )
        else:
            self.genus = None

    def _build_class(self, index: int, members: list[Corner]):
        interior = all(
            self._corner_edges_glued(c) for c in members
        )
        start = members[0]
        if interior:
            walk = [start]
            cur = self._next_corner_ccw(start)
            guard = 0
            while cur != start:
                walk.append(cur)
                cur = self._next_corner_ccw(cur)
                guard += 1
                if guard > len(self._corner_set) + 1:
                    raise SurfaceError("vertex walk does not close (bad gluing data)")
            if sorted(walk) != members:
                raise SurfaceError(
                    f"vertex identifications inconsistent around {start}"
                )
            ordered = tuple(walk)
        else:
            ordered = tuple(members)

        angle = sum(self._corner_angle(c) for c in ordered)
        cone_order = None
        seps: tuple = ()
        if interior:
            m = round(angle / math.pi)
            if abs(angle - m * math.pi) > ANGLE_SNAP * max(1, m):
                raise SurfaceError(
                    f"cone angle {angle/math.pi:.9f}*pi at {start} is not a "
                    "multiple of pi"
                )
            k = m - 2
            if k < 0:
                raise SurfaceError(
                    f"cone angle {m}*pi at {start}: poles (k < 0) not supported"
                )
            cone_order = k
            seps = tuple(self._enumerate_directions(ordered, (Fraction(1), Fraction(0))))
            if len(seps) != k + 2:
                raise SurfaceError(
                    f"found {len(seps)} horizontal directions at {start}, "
                    f"expected k+2 = {k+2}"
                )
        return _ClassDraft(index, ordered, interior, angle, cone_order, seps)

    def _corner_edges_glued(self, c: Corner) -> bool:
        pid, i = c
        n = self.polygons[pid].n
        return (pid, i) in self.edge_map and (pid, (i - 1) % n) in self.edge_map

    def _corner_frame(self, c: Corner) -> tuple[Vec, Vec]:
        """(u, w): outgoing edge direction and reversed incoming direction."""
        pid, i = c
        poly = self.polygons[pid]
        u = poly.edge_vector(i)
        w = vneg(poly.edge_vector((i - 1) % poly.n))
        return u, w

    def _corner_angle(self, c: Corner) -> float:
        u, w = self._corner_frame(c)
        th = math.atan2(float(cross(u, w)), float(dot(u, w)))
        if th <= 0:
            th += 2 * math.pi
        if cross(u, w) == 0 and dot(u, w) > 0:
            raise SurfaceError(f"degenerate zero-angle corner at {c}")
        return th

    def _next_corner_ccw(self, c: Corner) -> Corner:
        """Next corner counterclockwise around the vertex: cross the incoming
        edge (pid, i-1) to its glued partner."""
        pid, i = c
        n = self.polygons[pid].n
        partner = self.edge_map.get((pid, (i - 1) % n))
        if partner is None:
            raise SurfaceError(f"corner {c} touches a boundary edge")
        (qid, j), _kind = partner
        return (qid, j)

    # direction membership: half-open sector [u, w) counterclockwise
    def corner_contains_direction(self, c: Corner, d: Vec) -> bool:
        u, w = self._corner_frame(c)
        cu, cw = cross(u, d), cross(d, w)
        if cross(u, d) == 0 and dot(u, d) > 0:
            return True  # along the outgoing edge: included
        if cross(d, w) == 0 and dot(d, w) > 0:
            return False  # along the reversed incoming edge: excluded
        s = cross(u, w)
        if s > 0:
            return cu > 0 and cw > 0
        if s == 0:  # straight corner (angle pi)
            return cu > 0
        return cu > 0 or cw > 0

    def _enumerate_directions(self, ordered_corners, axis: Vec):
        """All occurrences of +-axis among the corners, in ccw walk order.

        Within one corner, occurrences are sorted by ccw angle from the
        corner's outgoing edge.
        """
        out = []
        for c in ordered_corners:
            hits = []
            for d in (axis, vneg(axis)):
                if self.corner_contains_direction(c, d):
                    hits.append(d)
            if len(hits) == 2:
                u, _ = self._corner_frame(c)
                hits.sort(key=lambda d: _ccw_rank(u, d))
            for d in hits:
                sign = 1 if dot(d, axis) > 0 else -1
                out.append((c, sign))
        return out

    def class_of_corner(self, c: Corner) -> int:
        return self._corner_to_class[c]

    def find_direction_entry(self, cls: VertexClass, pid: str, vi: int, d: Vec):
        """Locate the (corner, sign) entry holding chart direction d at the
        corner (pid, vi), following the half-open attribution rule.

        Returns the separatrix index within cls.
        """
        c = (pid, vi)
        axis_sign = 1 if d[0] > 0 or (d[0] == 0 and d[1] > 0) else -1
        if not self.corner_contains_direction(c, d):
            # d is along the reversed incoming edge: attributed to the next
            # corner ccw, with the chart direction transported by the gluing
            n = self.polygons[pid].n
            ref = (pid, (vi - 1) % n)
            _, _, orient = self.apply_glue(ref, self.polygons[pid].vertex(vi))
            c = self._next_corner_ccw((pid, vi))
            d = d if orient == 1 else vneg(d)
            axis_sign = 1 if d[0] > 0 or (d[0] == 0 and d[1] > 0) else -1
            if not self.corner_contains_direction(c, d):
                raise SurfaceError(f"direction attribution failed at {(pid, vi)}")
        for idx, (corner, sign) in enumerate(cls.separatrices):
            if corner == c and sign == axis_sign:
                return idx
        raise SurfaceError(f"direction entry not found at {(pid, vi)}")

    # -- operations ---------------------------------------------------------

    def stretch(self, t) -> "HalfTranslationSurface":
        """Vertical stretch (x, y) -> (x, ty); gluing combinatorics unchanged."""
        t = rat(t)
        if t <= 0:
            raise SurfaceError(f"stretch factor must be positive, got {float(t)}")
        polys = [
            FlatPolygon(p.id, tuple((x, t * y) for x, y in p.vertices))
            for p in self.polygons.values()
        ]
        return HalfTranslationSurface(
            polys, self.gluings, allow_boundary=self.allow_boundary
        )

    def summary(self) -> dict:
        d = {
            "schema": "teichlab-surface-report",
            "polygons": len(self.polygons),
            "edges": len(self.gluings),
            "boundary_edges": len(self.boundary_edges),
            "area": float(self.area),
            "closed": self.is_closed,
            "cone_points": [cl.to_json_dict() for cl in self.cone_classes],
            "zero_orders": [cl.cone_order for cl in self.cone_classes],
        }
        if self.is_closed:
            d["genus"] = self.genus
            d["sum_k"] = sum(cl.cone_order for cl in self.classes)
        return d


@dataclass
class _ClassDraft:
    index: int
    corners: tuple
    interior: bool
    angle: float
    cone_order: Optional[int]
    separatrices: tuple


def _ccw_rank(u: Vec, d: Vec):
    """Sort key for ccw angle of d measured from u, exact."""
    c, dt = cross(u, d), dot(u, d)
    if c == 0 and dt > 0:
        return (0, 0)
    if c > 0:
        return (1, _tan_key(u, d))
    if c == 0:
        return (2, 0)
    return (3, _tan_key(u, d))


def _tan_key(u: Vec, d: Vec) -> float:
    # within an open half-plane, ccw order is monotone in -cos = -dot/|d|
    return -float(dot(u, d)) / math.sqrt(float(norm2(d)))


def build_surface(polygons, gluings, allow_boundary=False) -> HalfTranslationSurface:
    """Validate a polygon-gluing description and derive cone data.

    polygons: iterable of FlatPolygon or (id, vertices) pairs; vertices may be
    ints, Fractions, floats, or decimal strings.
    """
    polys = []
    for p in polygons:
        if isinstance(p, FlatPolygon):
            polys.append(p)
        else:
            pid, verts = p
            polys.append(FlatPolygon(str(pid), tuple((rat(x), rat(y)) for x, y in verts)))
    glus = []
    for g in gluings:
        if isinstance(g, EdgeGluing):
            glus.append(g)
        else:
            a, b, kind = g
            glus.append(EdgeGluing((str(a[0]), int(a[1])), (str(b[0]), int(b[1])), kind))
    return HalfTranslationSurface(polys, glus, allow_boundary=allow_boundary)
