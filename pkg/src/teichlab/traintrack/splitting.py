"""Splitting a large branch.

A branch is large when it is alone on its side at both endpoint switches,
with exactly two branches merging on the opposite side at each end.  The
competing weights are those of the two corner branches flanking one side of
the band (the left side, transported from tail to head).  The foliated band
is non-crossing, so nonnegativity forces the direction: right split when the
tail corner is heavier (new diagonal weight = difference), left split when
lighter, central collision on ties.  Ties within 1e-12 on float weights are
treated as exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .._num import rat
from .track import TrackError, TrainTrack

FLOAT_TIE = 1e-12


@dataclass(frozen=True)
class SplitRecord:
    branch: str
    direction: str  # "left" | "right" | "central"
    new_branch: str | None
    competing: tuple  # (tail corner branch, head corner branch)
    weight_updates: dict

    def to_json_dict(self):
        return {
            "branch": self.branch,
            "direction": self.direction,
            "new_branch": self.new_branch,
            "competing": list(self.competing),
            "weight_updates": {k: float(v) for k, v in self.weight_updates.items()},
        }


def large_branches(track: TrainTrack):
    out = []
    for b in track.branches:
        sides = []
        for e in (0, 1):
            sw = track.switches[track._switch_of[(b, e)]]
            mine = sw["incoming"] if (b, e) in sw["incoming"] else sw["outgoing"]
            sides.append(len(mine))
        if sides == [1, 1]:
            out.append(b)
    return out


def _end_data(track, branch, e):
    si = track._switch_of[(branch, e)]
    sw = track.switches[si]
    if (branch, e) in sw["incoming"]:
        mine, other = sw["incoming"], sw["outgoing"]
        incoming_here = True
    else:
        mine, other = sw["outgoing"], sw["incoming"]
        incoming_here = False
    return si, mine, other, incoming_here


def _make_switch(side_a, side_b, a_first_incoming):
    """Planar switch with side_a approaching from the left (top to bottom)
    and side_b leaving right; flipped wholesale when the first branch of
    side_a points out rather than in."""
    if a_first_incoming:
        return {"incoming": list(side_a), "outgoing": list(side_b)}
    return {"incoming": list(reversed(side_b)), "outgoing": list(reversed(side_a))}


def split(track: TrainTrack, weights: dict, branch: str):
    """Split the large branch; returns (new_track, new_weights, SplitRecord).

    The carried measure is preserved: all other branch weights are unchanged
    and the diagonal (if any) gets the weight difference of the competing
    corners.
    """
    if branch not in track.branches:
        raise TrackError(f"unknown branch {branch}")
    w = {b: rat(weights[b]) for b in track.branches}
    if not track.check_switch_conditions(w)["pass"]:
        raise TrackError("weights do not satisfy the switch conditions")

    si0, mine0, other0, inc0 = _end_data(track, branch, 0)
    si1, mine1, other1, inc1 = _end_data(track, branch, 1)
    if len(mine0) != 1 or len(mine1) != 1:
        raise TrackError(f"branch {branch} is not large")
    if len(other0) != 2 or len(other1) != 2:
        raise TrackError(
            f"branch {branch} not splittable: need exactly two branches on "
            "the far side of each end"
        )
    if si0 == si1:
        raise TrackError(f"branch {branch} not splittable: both ends at one switch")

    # corners flanking the band's left side: upper at an aligned end,
    # lower at an anti-aligned one
    aligned0 = not inc0  # intrinsic 0->1 leaves the tail switch
    aligned1 = inc1  # and arrives at the head switch
    corner0 = other0[0] if aligned0 else other0[-1]
    other_c0 = other0[-1] if aligned0 else other0[0]
    corner1 = other1[0] if aligned1 else other1[-1]
    other_c1 = other1[-1] if aligned1 else other1[0]

    p, q = w[corner0[0]], w[corner1[0]]
    if _tie(p, q):
        direction = "central"
    elif p > q:
        direction = "right"
    else:
        direction = "left"

    keep_switches = [
        {"incoming": list(sw["incoming"]), "outgoing": list(sw["outgoing"])}
        for si, sw in enumerate(track.switches)
        if si not in (si0, si1)
    ]
    branches = [b for b in track.branches if b != branch]
    new_w = {k: v for k, v in w.items() if k != branch}

    if direction == "central":
        s1 = _make_switch([corner0], [corner1], track._is_incoming(corner0))
        s2 = _make_switch([other_c0], [other_c1], track._is_incoming(other_c0))
        new_track = TrainTrack(branches, keep_switches + [s1, s2], track.regions)
        rec = SplitRecord(branch, "central", None, (corner0[0], corner1[0]), {})
        return new_track, new_w, rec

    f = _fresh_id(track, branch)
    branches.append(f)
    if direction == "right":
        # corner0 covers corner1 and overflows into the diagonal
        wf = p - q
        s1 = _make_switch([corner0], [corner1, (f, 0)], track._is_incoming(corner0))
        s2 = _make_switch([(f, 1), other_c0], [other_c1], True)
    else:
        wf = q - p
        s1 = _make_switch([corner0, (f, 0)], [corner1], track._is_incoming(corner0))
        s2 = _make_switch([other_c0], [(f, 1), other_c1], track._is_incoming(other_c0))
    new_w[f] = wf
    new_track = TrainTrack(branches, keep_switches + [s1, s2], track.regions)
    post = new_track.check_switch_conditions(new_w)
    if not post["pass"]:
        raise TrackError("internal error: split broke the switch conditions")
    rec = SplitRecord(branch, direction, f, (corner0[0], corner1[0]), {f: wf})
    return new_track, new_w, rec


def _tie(x: Fraction, y: Fraction) -> bool:
    if x == y:
        return True
    scale = max(abs(float(x)), abs(float(y)), 1.0)
    return abs(float(x - y)) <= FLOAT_TIE * scale


def _fresh_id(track: TrainTrack, base: str) -> str:
    k = 0
    while f"{base}'{k}" in track.branches:
        k += 1
    return f"{base}'{k}"
