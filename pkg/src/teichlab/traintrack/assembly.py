"""Rectangle assembly of the Teichmuller-ray surfaces.

Each branch b of the track contributes one rectangle of horizontal length
l_b and width t * w_b; its two halves (width t*w_b/2) face the two
complementary regions adjacent to the branch.  Each region supplies a
half-plane structure whose ends match the region's boundary walks; the ends
are truncated at height (t/2) * w_b over every branch-side (rays cut at the
vertex), and the truncation staircases glue onto the rectangle tops and
bottoms.  Switch conditions make the rectangle stacks fit exactly along the
vertical seams, so the result closes up into a flat surface, which is
validated by the polygon-gluing builder (cone angles, zero count, area).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .._num import rat
from ..flatsurf.surface import HalfTranslationSurface, build_surface
from ..limits.ribbon import MetricRibbonGraph
from ..limits.structure import HalfPlaneStructure, assemble_limit
from ..limits.truncation import CylinderCut, PlanarCut, truncate
from .track import TrackError, TrainTrack


@dataclass(frozen=True)
class RayAssemblySpec:
    track: TrainTrack
    weights: dict  # branch -> transverse measure (> 0)
    lengths: dict  # branch -> horizontal length (> 0)
    t: Fraction
    region_graphs: tuple  # one MetricRibbonGraph (or ribbon dict) per region
    crown_residues: dict | None = None  # planar walk index -> expected residue


@dataclass(frozen=True)
class RayAssemblyResult:
    surface: HalfTranslationSurface
    report: dict

    def to_json_dict(self):
        return {"schema": "teichlab-ray-assembly", **self.report}


def _runs(walk):
    """Split a boundary walk into runs of branch-sides between cusps.

    Returns (runs, smooth): runs is a list of lists of (branch, side); for a
    smooth walk (no cusps) the single run is the whole cycle.
    """
    sides = walk["sides"]
    if walk["cusps"] == 0:
        return [[bs for bs, _ in sides]], True
    # rotate so the walk starts right after a cusp
    k = len(sides)
    start = next(i for i in range(k) if sides[i][1]) + 1
    rot = [sides[(start + i) % k] for i in range(k)]
    runs = [[]]
    for bs, cusp in rot:
        runs[-1].append(bs)
        if cusp:
            runs.append([])
    runs.pop()  # the trailing split
    return runs, False


def _match_rotation(target, candidates):
    """Index rotation r such that candidates rotated by r equals target."""
    n = len(target)
    if len(candidates) != n:
        return None
    for r in range(n):
        if all(candidates[(r + i) % n] == target[i] for i in range(n)):
            return r
    return None


def assemble_ray_surface(spec: RayAssemblySpec) -> RayAssemblyResult:
    track = spec.track
    t = rat(spec.t)
    if t <= 0:
        raise TrackError("assembly parameter t must be positive")
    w = {b: rat(spec.weights[b]) for b in track.branches}
    l = {b: rat(spec.lengths[b]) for b in track.branches}
    for b in track.branches:
        if w[b] <= 0:
            raise TrackError(f"branch {b}: weight must be positive")
        if l[b] <= 0:
            raise TrackError(f"branch {b}: length must be positive")
    if not track.check_switch_conditions(w)["pass"]:
        raise TrackError("weights do not satisfy the switch conditions")

    walks = track.boundary_walks()
    structures = [
        g if isinstance(g, MetricRibbonGraph) else MetricRibbonGraph.from_dict(g)
        for g in spec.region_graphs
    ]
    # assign each walk to the unique region end matching its signature
    hps_list = [assemble_limit(g) for g in structures]
    walk_assignment = _assign_walks(track, walks, hps_list, w, l, t, spec)

    polys = []
    glus = []
    report_regions = []

    # region pieces: truncate each structure with the matched profiles
    cut_edge_of_side = {}  # (branch, side) -> (pid, edge index)
    for ri, hps in enumerate(hps_list):
        cuts = {}
        face_infos = []
        for eidx, end in enumerate(hps.ends):
            wi, correspondence = walk_assignment[(ri, eidx)]
            walk = walks[wi]
            if end.kind == "cylindrical":
                profile = tuple(
                    (hps.graph.lengths[h], t * w[b] / 2) for h, (b, _s) in correspondence
                )
                cuts[eidx] = CylinderCut(profile)
            else:
                m = end.m
                arcs = _face_arcs_of(hps.graph, end)
                profiles = []
                pos = 0
                for arc in arcs:
                    prof = []
                    for h in arc:
                        b, _s = dict(correspondence)[h]
                        prof.append((hps.graph.lengths[h], t * w[b] / 2))
                    profiles.append(tuple(prof))
                cuts[eidx] = PlanarCut(tuple([Fraction(0)] * m), tuple(profiles))
            face_infos.append((eidx, end, wi, correspondence))
        result = truncate(hps, cuts)
        # namespace the piece polygons per region
        rename = {pid: f"R{ri}{pid}" for pid in result.piece.polygons}
        for pid, poly in result.piece.polygons.items():
            polys.append((rename[pid], list(poly.vertices)))
        for g in result.piece.gluings:
            glus.append(
                ((rename[g.a[0]], g.a[1]), (rename[g.b[0]], g.b[1]), g.kind)
            )
        # map cut edges to branch sides
        ends_report = []
        for eidx, end, wi, correspondence in face_infos:
            recs = result.cut_edges[eidx]
            flat = recs if end.kind == "cylindrical" else [r for hp in recs for r in hp]
            corr = dict(correspondence)
            heights = {}
            for rec in flat:
                if len(rec["covers"]) != 1:
                    raise TrackError("cut step does not align with a single edge")
                h = rec["covers"][0]
                bside = corr[h]
                cut_edge_of_side[bside] = (rename[rec["polygon"]], rec["edge"])
                heights[bside[0]] = float(rec["height"])
            ends_report.append(
                {
                    "kind": end.kind,
                    "walk": wi,
                    "cut_heights": heights,
                    "circumference": float(end.circumference)
                    if end.kind == "cylindrical"
                    else None,
                    "m": end.m if end.kind == "planar" else None,
                    "residue": float(end.residue),
                }
            )
        report_regions.append(
            {"region": ri, "graph": structures[ri].to_json_dict(), "ends": ends_report}
        )

    # branch rectangles with subdivided vertical edges
    for b in track.branches:
        pid = f"B_{b}"
        hb = t * w[b] / 2
        subs = {0: [], 1: []}  # end -> stack cut levels within the branch span
        seams = {0: [], 1: []}
        for e in (0, 1):
            seams[e] = _switch_seams(track, w, t, b, e)
            subs[e] = sorted({y for (_, _, y0, y1) in seams[e] for y in (y0, y1)})
        left_levels = [y for y in subs[0] if -hb < y < hb]
        right_levels = [y for y in subs[1] if -hb < y < hb]
        verts = [(Fraction(0), -hb), (l[b], -hb)]
        for y in sorted(right_levels):
            verts.append((l[b], y))
        verts.append((l[b], hb))
        verts.append((Fraction(0), hb))
        for y in sorted(left_levels, reverse=True):
            verts.append((Fraction(0), y))
        polys.append((pid, verts))

    # vertical seam gluings at the switches
    emitted = set()
    for si, sw in enumerate(track.switches):
        pairs = _stack_pairs(track, w, t, si)
        for (bi, ei, a0, a1), (bo, eo, c0, c1) in pairs:
            key = (si, bi, ei, a0, a1, bo, eo)
            if key in emitted:
                continue
            emitted.add(key)
            ra = _edge_index_of_span(track, w, t, l, bi, ei, a0, a1)
            rb = _edge_index_of_span(track, w, t, l, bo, eo, c0, c1)
            glus.append(((f"B_{bi}", ra), (f"B_{bo}", rb), _seam_kind(track, bi, ei, bo, eo)))

    # outer edges: rectangle top/bottom onto the region cut edges
    for b in track.branches:
        for side in ("L", "R"):
            cut = cut_edge_of_side.get((b, side))
            if cut is None:
                raise TrackError(f"no region cut matched branch side {(b, side)}")
            rect_edge = _rect_horizontal_edge(track, w, t, l, b, side)
            glus.append((cut, (f"B_{b}", rect_edge), "halfturn"))

    surface = build_surface(polys, glus)
    self_adjacent = sorted(
        {b for b in track.branches}
        & {
            b
            for wk in walks
            for (b, s), _ in wk["sides"]
            if sum(1 for (bb, _ss), _ in wk["sides"] if bb == b) == 2
        }
    )
    report = {
        "t": float(t),
        "branches": {
            b: {
                "length": float(l[b]),
                "weight": float(w[b]),
                "rect_width": float(t * w[b]),
                "transverse_measure": float(t * w[b]),
            }
            for b in track.branches
        },
        "regions": report_regions,
        "self_adjacent_branches": self_adjacent,
        "area": float(surface.area),
    }
    return RayAssemblyResult(surface, report)


def _face_arcs_of(graph, end):
    walk = list(end.face)
    n = len(walk)
    idx = [i for i, h in enumerate(walk) if graph.is_ray(h)]
    arcs = []
    for a, b in zip(idx, idx[1:] + [idx[0] + n]):
        arcs.append([walk[i % n] for i in range(a + 1, b)])
    return arcs


def _assign_walks(track, walks, hps_list, w, l, t, spec):
    """Match every track boundary walk to a unique region end.

    Cylinder ends match smooth walks with the same edge-length sequence (up
    to rotation); planar ends match cusped walks whose run-length sequence
    equals the arc-length sequence (up to rotation).  Returns a map
    (region, end index) -> (walk index, [(face half-edge, branch-side), ...]).
    """
    unmatched = set(range(len(walks)))
    out = {}
    for ri, hps in enumerate(hps_list):
        for eidx, end in enumerate(hps.ends):
            found = None
            for wi in sorted(unmatched):
                walk = walks[wi]
                runs, smooth = _runs(walk)
                if end.kind == "cylindrical":
                    if not smooth:
                        continue
                    face_edges = [h for h in end.face]
                    side_seq = runs[0]
                    edge_lens = [hps.graph.lengths[h] for h in face_edges]
                    side_lens = [l[b] for b, _ in side_seq]
                    rot = _match_rotation(edge_lens, side_lens)
                    if rot is None:
                        continue
                    corr = [
                        (face_edges[i], side_seq[(rot + i) % len(side_seq)])
                        for i in range(len(face_edges))
                    ]
                    found = (wi, corr)
                    break
                else:
                    if smooth or walk["cusps"] != end.m:
                        continue
                    arcs = _face_arcs_of(hps.graph, end)
                    arc_lens = [
                        [hps.graph.lengths[h] for h in arc] for arc in arcs
                    ]
                    run_lens = [[l[b] for b, _ in run] for run in runs]
                    rot = _match_rotation(arc_lens, run_lens)
                    if rot is None:
                        continue
                    corr = []
                    for k, arc in enumerate(arcs):
                        run = runs[(rot + k) % len(runs)]
                        corr.extend(zip(arc, run))
                    if spec.crown_residues is not None:
                        want = spec.crown_residues.get(wi)
                        if want is not None and rat(want) != end.residue:
                            raise TrackError(
                                f"residue mismatch between crown data ({want}) "
                                f"and planar end ({float(end.residue)})"
                            )
                    found = (wi, corr)
                    break
            if found is None:
                raise TrackError(
                    f"region {ri} end {eidx} ({end.kind}) matches no remaining "
                    "boundary walk of the track"
                )
            unmatched.discard(found[0])
            out[(ri, eidx)] = found
    if unmatched:
        raise TrackError(f"track walks {sorted(unmatched)} have no region end")
    return out


def _stack_levels(track, w, t, si):
    """Stack spans per half-branch at switch si, top-down from +H/2 to -H/2."""
    sw = track.switches[si]
    out = {}
    for side_name in ("incoming", "outgoing"):
        side = sw[side_name]
        total = sum((t * w[b] for b, _ in side), Fraction(0))
        top = total / 2
        spans = []
        pos = top
        for b, e in side:
            spans.append((b, e, pos - t * w[b], pos))
            pos -= t * w[b]
        out[side_name] = spans
    return out


def _switch_seams(track, w, t, b, e):
    """Seam intervals on branch b's end-e edge, in the branch chart's y."""
    si = track._switch_of[(b, e)]
    levels = _stack_levels(track, w, t, si)
    side_name = "incoming" if (b, e) in track.switches[si]["incoming"] else "outgoing"
    mine = next(sp for sp in levels[side_name] if sp[0] == b and sp[1] == e)
    _, _, lo, hi = mine
    other_name = "outgoing" if side_name == "incoming" else "incoming"
    seams = []
    for ob, oe, olo, ohi in levels[other_name]:
        a0, a1 = max(lo, olo), min(hi, ohi)
        if a0 < a1:
            y0 = _stack_to_chart(track, w, t, b, e, a1, lo, hi)
            y1 = _stack_to_chart(track, w, t, b, e, a0, lo, hi)
            seams.append((ob, oe, min(y0, y1), max(y0, y1)))
    return seams


def _aligned(track, b, e):
    inc = track._is_incoming((b, e))
    return (e == 0 and not inc) or (e == 1 and inc)


def _stack_to_chart(track, w, t, b, e, sigma, lo, hi):
    """Map a stack position within branch b's span to its chart y; the chart
    +y side is the stack top exactly when the end is aligned."""
    hb = t * w[b] / 2
    if _aligned(track, b, e):
        return hb - (hi - sigma)
    return -hb + (hi - sigma)


def _stack_pairs(track, w, t, si):
    levels = _stack_levels(track, w, t, si)
    pairs = []
    for bi, ei, ilo, ihi in levels["incoming"]:
        for bo, eo, olo, ohi in levels["outgoing"]:
            a0, a1 = max(ilo, olo), min(ihi, ohi)
            if a0 < a1:
                pairs.append(((bi, ei, a0, a1), (bo, eo, a0, a1)))
    return pairs


def _edge_index_of_span(track, w, t, l, b, e, s0, s1):
    """Polygon edge index on branch b's rectangle covering stack span
    [s0, s1] at end e."""
    si = track._switch_of[(b, e)]
    levels = _stack_levels(track, w, t, si)
    side_name = "incoming" if (b, e) in track.switches[si]["incoming"] else "outgoing"
    _, _, lo, hi = next(sp for sp in levels[side_name] if sp[:2] == (b, e))
    ya = _stack_to_chart(track, w, t, b, e, s0, lo, hi)
    yb = _stack_to_chart(track, w, t, b, e, s1, lo, hi)
    y0, y1 = min(ya, yb), max(ya, yb)
    hb = t * w[b] / 2
    right_levels = sorted(
        {y for (_, _, u, v) in _switch_seams(track, w, t, b, 1) for y in (u, v)
         if -hb < y < hb}
    )
    left_levels = sorted(
        {y for (_, _, u, v) in _switch_seams(track, w, t, b, 0) for y in (u, v)
         if -hb < y < hb}
    )
    # rectangle vertex layout: (0,-h), (l,-h), [right levels asc], (l,h),
    # (0,h), [left levels desc], back to (0,-h)
    if e == 1:
        cuts = [-hb] + right_levels + [hb]
        base = 1
        idx = cuts.index(y0)
        return base + idx
    cuts = [hb] + sorted(left_levels, reverse=True) + [-hb]
    base = 1 + len(right_levels) + 2
    idx = cuts.index(y1)
    return base + idx


def _rect_horizontal_edge(track, w, t, l, b, side):
    """Edge index of the rectangle's top (intrinsic left side) or bottom."""
    hb = t * w[b] / 2
    right_levels = sorted(
        {y for (_, _, u, v) in _switch_seams(track, w, t, b, 1) for y in (u, v)
         if -hb < y < hb}
    )
    if side == "L":
        return 1 + len(right_levels) + 1  # the top edge, right to left
    return 0  # bottom edge, left to right


def _seam_kind(track, bi, ei, bo, eo):
    """Gluing kind for a vertical seam: the charts anti-align exactly when
    the two ends' alignment flags agree (both map stack-top to +y or both to
    -y on opposite sides of the seam)."""
    same = _aligned(track, bi, ei) == _aligned(track, bo, eo)
    return "translation" if same else "halfturn"
