"""Recurrence checks for train tracks.

Recurrence is decided by linear feasibility: maximize the minimum branch
weight over the switch-condition cone (normalized); strict positivity of the
optimum certifies a positive weight system.  Transverse recurrence is only
verified against a supplied certificate multicurve (the constructions we
model always exhibit one explicitly); without a certificate it is reported
as unknown.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .track import Region, TrackError, TrainTrack

POSITIVITY_FLOOR = 1e-9


@dataclass(frozen=True)
class Certificate:
    """Efficiently intersecting multicurve, supplied as embedding data:
    intersection counts per branch and the census of the complement of
    track + curve."""

    intersections: dict
    regions: tuple

    @classmethod
    def from_dict(cls, doc):
        regions = tuple(
            Region(
                int(r["genus"]),
                int(r["punctures"]),
                tuple(r["corners"]) if isinstance(r.get("corners"), (list, tuple))
                else (int(r["corners"]),),
            )
            for r in doc.get("regions", ())
        )
        return cls(dict(doc["intersections"]), regions)


def positive_weight_system(track: TrainTrack):
    """A strictly positive point of the switch cone, or None.

    Solves: maximize t subject to switch conditions, t <= w_b <= 1.
    """
    branches = track.branches
    n = len(branches)
    index = {b: i for i, b in enumerate(branches)}
    rows = []
    for sw in track.switches:
        row = np.zeros(n + 1)
        for b, _ in sw["incoming"]:
            row[index[b]] += 1
        for b, _ in sw["outgoing"]:
            row[index[b]] -= 1
        rows.append(row)
    a_eq = np.array(rows) if rows else None
    b_eq = np.zeros(len(rows)) if rows else None
    # variables: w_0..w_{n-1}, t;  maximize t
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_ub = []
    b_ub = []
    for i in range(n):
        row = np.zeros(n + 1)
        row[i] = -1.0
        row[-1] = 1.0
        a_ub.append(row)  # t - w_i <= 0
        b_ub.append(0.0)
    res = linprog(
        c,
        A_ub=np.array(a_ub),
        b_ub=np.array(b_ub),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0, 1)] * n + [(0, 1)],
        method="highs",
    )
    if not res.success or res.x[-1] <= POSITIVITY_FLOOR:
        return None
    return {b: float(res.x[index[b]]) for b in branches}


def is_birecurrent(track: TrainTrack, certificate: Certificate | None = None) -> dict:
    """Decide recurrence by weight-cone feasibility; verify transverse
    recurrence against the certificate when one is supplied."""
    weights = positive_weight_system(track)
    recurrent = weights is not None
    if certificate is None:
        transverse = "unknown"
        witness = None
    else:
        transverse = True
        witness = None
        for b in track.branches:
            if int(certificate.intersections.get(b, 0)) < 1:
                transverse = False
                witness = f"branch {b} not intersected by the certificate curve"
                break
        if transverse:
            for i, r in enumerate(certificate.regions):
                if r.genus == 0 and r.punctures == 0 and len(r.corners) == 1 and r.total_corners == 2:
                    transverse = False
                    witness = f"certificate complement region {i} is a bigon"
                    break
    return {
        "schema": "teichlab-birecurrence",
        "recurrent": recurrent,
        "transversely_recurrent": transverse,
        "positive_weights": weights,
        "witness": witness,
    }
