"""Crown ends: cyclic chains of bi-infinite geodesics bounding boundary cusps.

A crown with m cusps is stored through one period of its universal-cover
picture: ideal points p_0, ..., p_m where p_m = hol(p_0) for the holonomy
Mobius map of the end, sides g_i = (p_{i-1}, p_i), and one truncating
horocycle per cusp p_0..p_{m-1} (the horocycle at p_m is the holonomy image
of the one at p_0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Horocycle, horocycle_segment_length
from .mobius import MobiusMap, is_inf


@dataclass(frozen=True)
class CrownEnd:
    ideal_points: tuple[float, ...]  # p_0 .. p_m, one period plus closing point
    holonomy: MobiusMap

    def __post_init__(self):
        if len(self.ideal_points) < 3:
            raise ValueError("a crown needs at least 2 cusps (3 chain points)")
        p0, pm = self.ideal_points[0], self.ideal_points[-1]
        im = self.holonomy.apply(p0)
        if not _same_point(im, pm):
            raise ValueError(f"holonomy({p0}) = {im} does not close the chain at {pm}")
        for a, b in zip(self.ideal_points, self.ideal_points[1:]):
            if _same_point(a, b):
                raise ValueError("adjacent ideal points must be distinct")

    @property
    def num_cusps(self) -> int:
        return len(self.ideal_points) - 1

    def side_lengths(self, horocycles: list[Horocycle]) -> list[float]:
        """Truncated lengths of the m geodesic sides, one horocycle per cusp."""
        m = self.num_cusps
        if len(horocycles) != m:
            raise ValueError(f"need {m} horocycles, got {len(horocycles)}")
        for h, p in zip(horocycles, self.ideal_points):
            if not _same_point(h.base, p):
                raise ValueError("horocycle bases must follow the cusp chain")
        cycle = list(horocycles) + [horocycles[0].transformed(self.holonomy)]
        out = []
        for i in range(m):
            p, q = self.ideal_points[i], self.ideal_points[i + 1]
            length = horocycle_segment_length(p, cycle[i], q, cycle[i + 1])
            if length <= 0:
                raise ValueError(
                    f"horocycles at cusps {i} and {i+1} overlap (segment {length:.3g})"
                )
            out.append(length)
        return out


def crown_residue(crown: CrownEnd, horocycles: list[Horocycle]) -> float:
    """|alternating sum| of truncated side lengths for even cusp count, else 0.

    The value is independent of the horocycle choice because shrinking the
    horocycle at one cusp lengthens the two adjacent sides equally, which
    cancels in the alternating sum.
    """
    lengths = crown.side_lengths(horocycles)
    if crown.num_cusps % 2 == 1:
        return 0.0
    alt = 0.0
    for i, length in enumerate(lengths):
        alt += length if i % 2 == 0 else -length
    return abs(alt)


def _same_point(a: float, b: float) -> bool:
    if is_inf(a) or is_inf(b):
        return is_inf(a) and is_inf(b)
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
