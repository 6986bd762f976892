"""Half-plane structures: ribbon graphs with half-planes and half-infinite
cylinders attached to their boundary faces, and the end/residue bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ribbon import MetricRibbonGraph, RibbonError


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class End:
    kind: str  # "planar" or "cylindrical"
    face: tuple[str, ...]
    m: int = 0  # number of half-planes (planar only)
    circumference: Fraction = Fraction(0)
    arc_lengths: tuple[Fraction, ...] = ()  # per half-plane attaching arc
    rays: tuple[str, ...] = ()  # ray half-edge ids, cyclic

    def __post_init__(self):
        if self.kind == "planar" and self.m < 3:
            raise StructureError(
                f"planar end needs m >= 3 half-planes, got {self.m}"
            )

    @property
    def pole_order(self) -> int:
        return self.m if self.kind == "planar" else 2

    @property
    def residue(self) -> Fraction:
        if self.kind == "cylindrical":
            return self.circumference
        if self.m % 2 == 1:
            return Fraction(0)
        return alternating_residue(self.arc_lengths)

    def to_json_dict(self):
        d = {
            "kind": self.kind,
            "pole_order": self.pole_order,
            "residue": float(self.residue),
        }
        if self.kind == "planar":
            d["m"] = self.m
            d["arc_lengths"] = [float(x) for x in self.arc_lengths]
        else:
            d["circumference"] = float(self.circumference)
        return d


def alternating_residue(totals) -> Fraction:
    """|t_0 - t_1 + t_2 - ...| for an even-length cyclic tuple of lengths."""
    vals = [v if isinstance(v, Fraction) else Fraction(v) for v in totals]
    if len(vals) % 2 == 1:
        raise StructureError("alternating residue needs an even count")
    alt = Fraction(0)
    for i, v in enumerate(vals):
        alt += v if i % 2 == 0 else -v
    return abs(alt)


def metric_residue(end: End) -> Fraction:
    """Truncation-independent residue: |alternating arc sum| for even planar
    ends, 0 for odd, boundary-circle length for cylinders."""
    return end.residue


@dataclass(frozen=True)
class HalfPlaneStructure:
    graph: MetricRibbonGraph
    attachments: dict  # face tuple -> "half_plane" | "cylinder"
    ends: tuple[End, ...]

    def end_of_face(self, face) -> End:
        for e in self.ends:
            if e.face == tuple(face):
                return e
        raise StructureError("face not found")

    def component_census(self):
        """Per connected component: (genus, ends, edge lengths), sorted
        canonically by (genus, #ends, lengths)."""
        comps = self.graph.components()
        out = []
        for comp in comps:
            vset = set(comp)
            hes = [h for h in self.graph.half_edges.values() if h.vertex in vset]
            edges = sum(1 for h in hes if h.twin is not None) // 2
            faces = [f for f in self.graph.faces() if self.graph.half_edges[f[0]].vertex in vset]
            chi_closed = len(comp) - edges + len(faces)
            if chi_closed % 2 != 0:
                raise StructureError("component closes up to odd Euler characteristic")
            genus = (2 - chi_closed) // 2
            if genus < 0:
                raise StructureError("component has negative genus")
            ends = [self.end_of_face(f) for f in faces]
            lengths = sorted(
                float(self.graph.lengths[h.id]) for h in hes if h.twin is not None
            )
            out.append(
                {
                    "vertices": list(comp),
                    "genus": genus,
                    "num_ends": len(ends),
                    "ends": [e.to_json_dict() for e in ends],
                    "edge_lengths": lengths[::2],  # one per edge (twins repeat)
                    "euler_characteristic": len(comp) - edges,
                }
            )
        out.sort(key=lambda c: (c["genus"], c["num_ends"], c["edge_lengths"]))
        return out

    def to_json_dict(self):
        return {
            "schema": "teichlab-halfplane-structure",
            "graph": self.graph.to_json_dict(),
            "attachments": [
                {"face": list(f), "kind": k} for f, k in sorted(self.attachments.items())
            ],
            "ends": [e.to_json_dict() for e in self.ends],
            "components": self.component_census(),
        }


def _face_end(graph: MetricRibbonGraph, walk, kind: str) -> End:
    rays = [h for h in walk if graph.is_ray(h)]
    if kind == "cylinder":
        return End("cylindrical", tuple(walk), circumference=graph.face_length(walk))
    # split the walk at ray bounces; arcs between consecutive rays attach the
    # half-planes
    if not rays:
        raise StructureError("half-plane attachment on a compact face")
    idx = [i for i, h in enumerate(walk) if graph.is_ray(h)]
    arcs = []
    n = len(walk)
    for a, b in zip(idx, idx[1:] + [idx[0] + n]):
        arc = [walk[i % n] for i in range(a + 1, b)]
        arcs.append(sum((graph.lengths[h] for h in arc), Fraction(0)))
    return End(
        "planar",
        tuple(walk),
        m=len(rays),
        arc_lengths=tuple(arcs),
        rays=tuple(walk[i] for i in idx),
    )


def assemble_limit(graph: MetricRibbonGraph, face_policy="auto") -> HalfPlaneStructure:
    """Attach a half-plane fan or a half-infinite cylinder to every boundary
    face of the ribbon graph.

    face_policy: "auto" (faces with rays get half-planes, compact faces get
    cylinders) or a mapping from face tuples to "half_plane"/"cylinder";
    explicit policies are validated against the face types.
    """
    faces = graph.faces()
    attachments = {}
    for walk in faces:
        has_ray = any(graph.is_ray(h) for h in walk)
        want = "half_plane" if has_ray else "cylinder"
        if face_policy != "auto":
            stated = face_policy.get(tuple(walk))
            if stated is None:
                raise StructureError(f"no policy for face {walk}")
            if stated == "half_plane" and not has_ray:
                raise StructureError(f"compact face {walk} designated half-plane")
            if stated == "cylinder" and has_ray:
                raise StructureError(f"infinite face {walk} designated cylinder")
            want = stated
        attachments[tuple(walk)] = want
    ends = tuple(
        _face_end(graph, walk, attachments[tuple(walk)]) for walk in faces
    )
    return HalfPlaneStructure(graph, attachments, ends)


def ends(hps: HalfPlaneStructure) -> tuple[End, ...]:
    """One end per puncture, with pole orders (m for planar, 2 cylindrical)."""
    return hps.ends
