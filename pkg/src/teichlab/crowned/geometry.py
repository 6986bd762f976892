"""Upper half-plane primitives: distances, horocycles, curve curvature."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .mobius import INF, MobiusMap, is_inf


def hyp_distance(z1: complex, z2: complex) -> float:
    """Hyperbolic distance between interior points of the upper half-plane."""
    if z1.imag <= 0 or z2.imag <= 0:
        raise ValueError("points must lie in the open upper half-plane")
    d = abs(z1 - z2) ** 2 / (2.0 * z1.imag * z2.imag)
    return math.acosh(1.0 + d)


def geodesic_points(p: float, q: float, n: int = 64) -> list[complex]:
    """Sample the geodesic with ideal endpoints p, q (half-circle or vertical)."""
    if is_inf(p) or is_inf(q):
        x = q if is_inf(p) else p
        ys = np.geomspace(0.05, 20.0, n)
        return [complex(x, y) for y in ys]
    c, r = (p + q) / 2.0, abs(q - p) / 2.0
    ts = np.linspace(0.03, math.pi - 0.03, n)
    return [complex(c + r * math.cos(t), r * math.sin(t)) for t in ts]


@dataclass(frozen=True)
class Horocycle:
    """Horocycle at an ideal point.

    For a finite base point the size is the Euclidean diameter of the circle;
    for the base point INF it is the height of the horizontal line.
    """

    base: float
    size: float

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError("horocycle size must be positive")

    def transformed(self, m: MobiusMap) -> "Horocycle":
        newbase = m.apply(self.base)
        if is_inf(self.base):
            if is_inf(newbase):  # m fixes infinity: z -> (az+b)/d
                return Horocycle(INF, self.size * (m.a / m.d))
            # line y = h maps to a circle tangent at newbase
            # diameter = 1/(c^2 h) for det-1 maps
            return Horocycle(newbase, 1.0 / (m.c * m.c * self.size))
        if is_inf(newbase):
            # circle of diameter d tangent at base maps to the line y = 1/(c^2 d)
            return Horocycle(INF, 1.0 / (m.c * m.c * self.size))
        return Horocycle(newbase, self.size * m.derivative_at(self.base))


def horocycle_segment_length(p: float, hp: Horocycle, q: float, hq: Horocycle) -> float:
    """Signed length of the geodesic (p, q) between the two horocycles.

    Positive when the horocycles are disjoint; negative means they overlap.
    """
    if hp.base != p or hq.base != q:
        raise ValueError("horocycles must be based at the segment endpoints")
    if is_inf(p) and is_inf(q):
        raise ValueError("endpoints must be distinct ideal points")
    # conventions pinned by the vertical-line case: segment from a horocycle of
    # diameter d at a finite point up to the line y = H has length log(H/d);
    # invariance under z -> -1/z then forces the finite-finite formula.
    if is_inf(p):
        return math.log(hp.size / hq.size)
    if is_inf(q):
        return math.log(hq.size / hp.size)
    return math.log((q - p) ** 2 / (hp.size * hq.size))


def geodesic_curvature(samples: list[complex]) -> np.ndarray:
    """Pointwise |geodesic curvature| of a sampled curve in the half-plane.

    Uses local quadratic fits for the Euclidean derivatives and the identity
    k_hyp = y * k_eucl + cos(theta) with theta the Euclidean tangent angle.
    Needs at least 5 samples; returns one value per interior sample.
    """
    if len(samples) < 5:
        raise ValueError("need at least 5 samples")
    z = np.asarray(samples, dtype=complex)
    x, y = z.real, z.imag
    if np.any(y <= 0):
        raise ValueError("samples must lie in the open upper half-plane")
    # chord-length parameter
    t = np.zeros(len(z))
    seg = np.abs(np.diff(z))
    if np.any(seg == 0):
        raise ValueError("degenerate samples (repeated points)")
    t[1:] = np.cumsum(seg)
    out = []
    for k in range(1, len(z) - 1):
        ts = t[k - 1 : k + 2] - t[k]
        # quadratic fit through three points: f(s) = f0 + f1 s + f2 s^2
        def fit(vals):
            a, b, c = vals
            s0, s2 = ts[0], ts[2]
            det = s0 * s2 * (s2 - s0)
            f1 = ((a - b) * s2 * s2 - (c - b) * s0 * s0) / det
            f2 = ((c - b) * s0 - (a - b) * s2) / det
            return f1, 2.0 * f2
        x1, x2 = fit(x[k - 1 : k + 2])
        y1, y2 = fit(y[k - 1 : k + 2])
        speed = math.hypot(x1, y1)
        k_e = (x1 * y2 - y1 * x2) / speed**3
        cos_th = x1 / speed
        out.append(abs(y[k] * k_e + cos_th))
    return np.asarray(out)


def circle_points(center: complex, radius: float, n: int = 128) -> list[complex]:
    """Sample the hyperbolic circle of given hyperbolic radius about center."""
    # Euclidean image of a hyperbolic circle about x + iy: center x + iy cosh r,
    # Euclidean radius y sinh r.
    ce = complex(center.real, center.imag * math.cosh(radius))
    re = center.imag * math.sinh(radius)
    return [ce + re * cmath.exp(2j * math.pi * k / n) for k in range(n)]
