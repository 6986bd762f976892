"""Truncations of half-plane structures into finite flat pieces.

A planar end is cut by one staircase (alternating horizontal and vertical
segments) per half-plane, meeting the bounding rays at prescribed distances
from their vertices; a cylindrical end is cut at a height (optionally a
staircase profile, which the ray assembly needs when adjacent branch widths
differ).  The kept piece is exported as a flat surface with boundary in the
polygon-gluing format, so it can be re-validated and round-tripped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .._num import rat
from ..flatsurf.surface import HalfTranslationSurface, build_surface
from .structure import End, HalfPlaneStructure, StructureError, alternating_residue


@dataclass(frozen=True)
class PlanarCut:
    """ray_cuts: distance along each bounding ray where the cut crosses it
    (cyclic, one per ray); profiles: per half-plane, a list of
    (width, height) steps spanning the kept base."""

    ray_cuts: tuple
    profiles: tuple

    @classmethod
    def rectangles(cls, end: End, ray_cuts, height):
        """One-step profile per half-plane (the original rectangle cut)."""
        u = [rat(x) for x in ray_cuts]
        h = rat(height)
        profiles = []
        for j in range(end.m):
            width = u[j] + end.arc_lengths[j] + u[(j + 1) % end.m]
            profiles.append(((width, h),))
        return cls(tuple(u), tuple(profiles))


@dataclass(frozen=True)
class CylinderCut:
    profile: tuple  # ((width, height), ...) spanning the circumference

    @classmethod
    def at_height(cls, end: End, height):
        return cls(((end.circumference, rat(height)),))


@dataclass(frozen=True)
class TruncationResult:
    piece: HalfTranslationSurface
    residues: dict
    cut_edges: dict  # end index -> list of cut-segment records
    polygons_by_end: dict

    def to_json_dict(self):
        return {
            "schema": "teichlab-truncation",
            "residues": self.residues,
            "polygons_by_end": {str(k): v for k, v in self.polygons_by_end.items()},
        }


def _norm_profile(profile):
    steps = [(rat(w), rat(h)) for w, h in profile]
    for w, h in steps:
        if w <= 0:
            raise StructureError("cut step widths must be positive")
        if h <= 0:
            raise StructureError("cut step heights must be positive")
    merged = [steps[0]]
    for w, h in steps[1:]:
        if h == merged[-1][1]:
            merged[-1] = (merged[-1][0] + w, h)
        else:
            merged.append((w, h))
    return merged


def truncate(hps: HalfPlaneStructure, spec: dict) -> TruncationResult:
    """Cut every end of the structure and assemble the kept flat piece.

    spec maps end index -> PlanarCut / CylinderCut (every end must be cut:
    every infinite ray needs a crossing).
    """
    graph = hps.graph
    polys = []
    glus = []
    edge_cover = {}  # finite half-edge id -> (pid, base edge index)
    ray_cover = {}  # ray id -> list of (pid, base edge index)
    residues = {}
    cut_edges = {}
    polygons_by_end = {}

    for ei, end in enumerate(hps.ends):
        cut = spec.get(ei)
        if cut is None:
            raise StructureError(f"end {ei} has no cut (rays must be truncated)")
        if end.kind == "cylindrical":
            if not isinstance(cut, CylinderCut):
                raise StructureError(f"end {ei} is cylindrical; need CylinderCut")
            pid = f"E{ei}C"
            rec = _cylinder_polygon(graph, end, cut, pid, polys, glus, edge_cover)
            cut_edges[ei] = rec
            polygons_by_end[ei] = [pid]
            residues[ei] = {
                "kind": "cylindrical",
                "stated": float(end.residue),
                "recomputed": float(end.circumference),
            }
            continue
        if not isinstance(cut, PlanarCut):
            raise StructureError(f"end {ei} is planar; need PlanarCut")
        if len(cut.ray_cuts) != end.m or len(cut.profiles) != end.m:
            raise StructureError(
                f"end {ei}: need {end.m} ray cuts and {end.m} profiles"
            )
        u = [rat(x) for x in cut.ray_cuts]
        if any(x < 0 for x in u):
            raise StructureError("ray cut distances must be nonnegative")
        arcs = _face_arcs(graph, end)
        displacements = []
        recs = []
        pids = []
        for j in range(end.m):
            u0, u1 = u[j], u[(j + 1) % end.m]
            width = u0 + end.arc_lengths[j] + u1
            displacements.append(width)
            if width == 0:
                if cut.profiles[j]:
                    raise StructureError(
                        f"end {ei} half-plane {j}: cut on an empty base"
                    )
                continue
            profile = _norm_profile(cut.profiles[j])
            if sum(w for w, _ in profile) != width:
                raise StructureError(
                    f"end {ei} half-plane {j}: cut exits its half-plane "
                    f"(profile width != {float(width)})"
                )
            pid = f"E{ei}H{j}"
            pids.append(pid)
            rec = _halfplane_polygon(
                graph, end, j, arcs[j], u0, u1, profile, pid, polys,
                edge_cover, ray_cover,
            )
            recs.append(rec)
        cut_edges[ei] = recs
        polygons_by_end[ei] = pids
        if end.m % 2 == 0:
            recomputed = alternating_residue(displacements)
            if recomputed != end.residue:
                raise StructureError(
                    f"end {ei}: truncation residue {float(recomputed)} != "
                    f"metric residue {float(end.residue)}"
                )
        else:
            recomputed = Fraction(0)
        residues[ei] = {
            "kind": "planar",
            "m": end.m,
            "stated": float(end.residue),
            "recomputed": float(recomputed),
        }

    # glue finite edges across their two covers; glue matching ray tails
    for hid, cov in edge_cover.items():
        twin = graph.half_edges[hid].twin
        if twin < hid:
            continue
        glus.append((cov, edge_cover[twin], "halfturn"))
    for rid, covs in ray_cover.items():
        if len(covs) == 2:
            glus.append((covs[0], covs[1], "halfturn"))
        elif len(covs) == 1:
            pass  # zero cut on one side: tail stays boundary
    piece = build_surface(polys, glus, allow_boundary=True)
    return TruncationResult(piece, residues, cut_edges, polygons_by_end)


def _face_arcs(graph, end: End):
    """Half-edge runs between consecutive ray bounces of a planar face."""
    walk = list(end.face)
    n = len(walk)
    idx = [i for i, h in enumerate(walk) if graph.is_ray(h)]
    arcs = []
    for a, b in zip(idx, idx[1:] + [idx[0] + n]):
        arcs.append([walk[i % n] for i in range(a + 1, b)])
    return arcs


def _halfplane_polygon(
    graph, end, j, arc, u0, u1, profile, pid, polys, edge_cover, ray_cover
):
    base = []  # (kind, id, length)
    if u0 > 0:
        base.append(("ray", end.rays[j], u0))
    for h in arc:
        base.append(("edge", h, graph.lengths[h]))
    if u1 > 0:
        base.append(("ray", end.rays[(j + 1) % end.m], u1))
    x = -u0
    xs = [x]
    for _, _, ln in base:
        x += ln
        xs.append(x)
    verts = [(xx, Fraction(0)) for xx in xs]
    n_base = len(base)
    # staircase, right to left
    cum = [-u0]
    for w, _ in profile:
        cum.append(cum[-1] + w)
    heights = [h for _, h in profile]
    s = len(profile)
    verts.append((cum[s], heights[s - 1]))
    cut_records = []
    for t in range(s, 0, -1):
        verts.append((cum[t - 1], heights[t - 1]))
        if t >= 2:
            verts.append((cum[t - 1], heights[t - 2]))
    polys.append((pid, verts))
    for i, (kind, hid, _ln) in enumerate(base):
        if kind == "edge":
            edge_cover[hid] = (pid, i)
        else:
            ray_cover.setdefault(hid, []).append((pid, i))
    # cut horizontals: polygon edges after the right vertical, one per step,
    # walked right to left; step t (1-based) is edge n_base + 1 + 2*(s - t)
    for t in range(s, 0, -1):
        e_idx = n_base + 1 + 2 * (s - t)
        span = (cum[t - 1], cum[t])
        covered = [
            hid
            for (kind, hid, _l), lo, hi in zip(base, xs, xs[1:])
            if kind == "edge" and lo >= span[0] and hi <= span[1]
        ]
        cut_records.append(
            {
                "half_plane": j,
                "step": t - 1,
                "polygon": pid,
                "edge": e_idx,
                "height": heights[t - 1],
                "covers": covered,
                "span": span,
            }
        )
    return cut_records


def _cylinder_polygon(graph, end, cut, pid, polys, glus, edge_cover):
    profile = _norm_profile(cut.profile)
    C = end.circumference
    if sum(w for w, _ in profile) != C:
        raise StructureError("cylinder cut profile must span the circumference")
    walk = list(end.face)
    xs = [Fraction(0)]
    for h in walk:
        xs.append(xs[-1] + graph.lengths[h])
    verts = [(x, Fraction(0)) for x in xs]
    n_base = len(walk)
    cum = [Fraction(0)]
    for w, _ in profile:
        cum.append(cum[-1] + w)
    heights = [h for _, h in profile]
    s = len(profile)
    h_first, h_last = heights[0], heights[-1]
    right_extra = h_first < h_last
    left_extra = h_first > h_last
    if right_extra:
        verts.append((C, h_first))
    verts.append((C, h_last))
    cut_start = len(verts) - 1
    for t in range(s, 0, -1):
        verts.append((cum[t - 1], heights[t - 1]))
        if t >= 2:
            verts.append((cum[t - 1], heights[t - 2]))
    if left_extra:
        verts.append((Fraction(0), h_last))
    # drop the repeated final corner (0, h_first) if it equals the next-to-
    # close vertex; the polygon closes back to (0, 0) via the left vertical
    polys.append((pid, verts))
    for i, h in enumerate(walk):
        edge_cover[h] = (pid, i)
    # wrap seam: glue the matching lower parts of the two verticals
    hmin_idx_right = n_base  # edge from (C,0) upward
    left_edge_idx = len(verts) - 1  # edge from last vertex back to (0,0)
    glus.append(((pid, hmin_idx_right), (pid, left_edge_idx), "translation"))
    cut_records = []
    for t in range(s, 0, -1):
        e_idx = cut_start + 2 * (s - t)
        span = (cum[t - 1], cum[t])
        covered = [
            hid
            for hid, lo, hi in zip(walk, xs, xs[1:])
            if lo >= span[0] and hi <= span[1]
        ]
        cut_records.append(
            {
                "step": t - 1,
                "polygon": pid,
                "edge": e_idx,
                "height": heights[t - 1],
                "covers": covered,
                "span": span,
            }
        )
    return cut_records
