"""Bundled parametric track families used by demos and tests.

fig2_track: the smallest track carrying the relation a = b + c (a splits
into two strands that rejoin), embedded with a once-punctured-bigon region
so no forbidden region occurs.

fig7_track(m): a fan of m+1 branches a_1..a_{m+1} merging into a single
branch b (so b = sum a_i at the merge switch), closed up by a ring of return
branches.  For even m the ring attachments are chosen so one complementary
region is a once-punctured m-gon; the census is derived honestly from the
boundary walks (the combinatorics close up on a punctured torus).  For odd m
no ring attachment realizes an m-cusped region in this family and the
parallel-strand closure is used instead (the weight relation still holds).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .recurrence import Certificate
from .track import Region, TrackError, TrainTrack


def fig2_track() -> TrainTrack:
    """Branch a splitting into b and c which rejoin; a = b + c at both
    switches."""
    return TrainTrack(
        ["a", "b", "c"],
        [
            {"incoming": [("a", 1)], "outgoing": [("b", 0), ("c", 0)]},
            {"incoming": [("b", 1), ("c", 1)], "outgoing": [("a", 0)]},
        ],
        regions=[
            {"genus": 1, "punctures": 0, "corners": [0]},
            {"genus": 1, "punctures": 0, "corners": [0]},
            {"genus": 0, "punctures": 1, "corners": [2]},
        ],
    )


def _fan_ring(m: int, sigma_cfgs, s1_cfg) -> TrainTrack:
    n = m + 1
    names = [f"a{i}" for i in range(1, n + 1)]
    branches = names + ["b"] + [f"r{i}" for i in range(1, n + 1)]
    switches = [{"incoming": [(a, 1) for a in names], "outgoing": [("b", 0)]}]
    bb, rn, a1, r1 = ("b", 1), (f"r{n}", 1), ("a1", 0), ("r1", 0)
    s1_opts = [
        {"incoming": [bb, rn], "outgoing": [a1, r1]},
        {"incoming": [bb, rn], "outgoing": [r1, a1]},
        {"incoming": [rn, bb], "outgoing": [a1, r1]},
        {"incoming": [rn, bb], "outgoing": [r1, a1]},
    ]
    switches.append(s1_opts[s1_cfg])
    for i in range(2, n + 1):
        rprev, ai, ri = (f"r{i-1}", 1), (f"a{i}", 0), (f"r{i}", 0)
        opts = [
            {"incoming": [rprev], "outgoing": [ai, ri]},
            {"incoming": [rprev], "outgoing": [ri, ai]},
        ]
        switches.append(opts[sigma_cfgs[i - 2]])
    return TrainTrack(branches, switches)


def _strands(m: int) -> TrainTrack:
    n = m + 1
    names = [f"a{i}" for i in range(1, n + 1)]
    return TrainTrack(
        names + ["b"],
        [
            {"incoming": [(a, 1) for a in names], "outgoing": [("b", 0)]},
            {"incoming": [("b", 1)], "outgoing": [(a, 0) for a in names]},
        ],
    )


def _census_from_walks(track: TrainTrack) -> list[Region]:
    """Honest census: one genus-0 region per boundary walk, with puncture
    counts keeping every region off the forbidden list."""
    regions = []
    for w in track.boundary_walks():
        c = w["cusps"]
        punctures = 2 if c <= 1 else 1
        regions.append(Region(0, punctures, (c,)))
    return regions


def fig7_track(m: int) -> TrainTrack:
    """Fan-and-ring track with the weight relation b = sum a_i."""
    if m < 2:
        raise TrackError("fig7 family needs m >= 2")
    if m % 2 == 0:
        hit = None
        for s1 in range(4):
            for cfgs in product(range(2), repeat=m):
                tk = _fan_ring(m, cfgs, s1)
                if any(w["cusps"] == m for w in tk.boundary_walks()):
                    hit = tk
                    break
            if hit is not None:
                break
        if hit is None:
            raise TrackError(f"no fan-ring embedding found for m = {m}")
        track = hit
    else:
        track = _strands(m)
    return TrainTrack(
        track.branches, track.switches, regions=_census_from_walks(track)
    )


def fig7_weights(m: int) -> dict:
    """The caption weights a_i = 1, b = m + 1, with the induced ring weights."""
    w = {f"a{i}": Fraction(1) for i in range(1, m + 2)}
    w["b"] = Fraction(m + 1)
    for i in range(1, m + 2):
        w[f"r{i}"] = Fraction(m - i + 2)
    return w


def fig7_certificate(m: int) -> Certificate:
    """Dual multicurve data for the fan-and-ring track: one curve crossing
    every branch once; its complement census carries no bigon."""
    track = fig7_track(m)
    inter = {b: 1 for b in track.branches}
    regions = tuple(
        Region(0, 1, (4,)) for _ in range(2)
    )
    return Certificate(inter, regions)


def infeasible_track() -> TrainTrack:
    """Weight cone = {0}: a = b + c and b = a + c force c = 0."""
    return TrainTrack(
        ["a", "b", "c"],
        [
            {"incoming": [("a", 1)], "outgoing": [("b", 0), ("c", 0)]},
            {"incoming": [("b", 1)], "outgoing": [("a", 0), ("c", 1)]},
        ],
    )
