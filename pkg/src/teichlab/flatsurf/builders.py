"""Bundled surface constructions used by demos and tests."""
from __future__ import annotations

import math
from fractions import Fraction

from .._num import rat
from .surface import HalfTranslationSurface, build_surface


def torus(width=1, height=1, shear=0) -> HalfTranslationSurface:
    """Parallelogram torus spanned by (width, 0) and (shear, height)."""
    w, h, s = rat(width), rat(height), rat(shear)
    verts = [(0, 0), (w, 0), (w + s, h), (s, h)]
    return build_surface(
        [("T", verts)],
        [
            (("T", 0), ("T", 2), "translation"),
            (("T", 1), ("T", 3), "translation"),
        ],
    )


def square_torus() -> HalfTranslationSurface:
    return torus(1, 1, 0)


def zn_chart(n: int, size=2) -> HalfTranslationSurface:
    """Planar chart of the differential z^n dz^2, truncated to finite squares.

    The cone of angle (n+2)pi is modeled as n+2 half-squares [-M, M] x [0, M]
    glued cyclically around the origin by half-turns; the outer edges are the
    boundary of the chart.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    M = rat(size)
    m = n + 2
    polys = []
    glus = []
    for j in range(m):
        pid = f"S{j}"
        polys.append(
            (pid, [(-M, 0), (0, 0), (M, 0), (M, M), (-M, M)])
        )
        # edge 1 of S_j ([0,M] on the axis) glues to edge 0 of S_{j+1}
        glus.append(((pid, 1), (f"S{(j + 1) % m}", 0), "halfturn"))
    return build_surface(polys, glus, allow_boundary=True)


def two_slit_strebel(
    width=3, height=2, xa=1, xb=2, y1=Fraction(1, 2), y2=Fraction(3, 2)
) -> HalfTranslationSurface:
    """Genus-2 Jenkins-Strebel surface: two vertical slits on a flat torus,
    cross-identified.  The horizontal foliation decomposes into three
    cylinders of circumferences xb-xa, width-(xb-xa), and width."""
    W, H = rat(width), rat(height)
    xA, xB, ya, yb = rat(xa), rat(xb), rat(y1), rat(y2)
    if not (0 < xA < xB < W and 0 < ya < yb < H):
        raise ValueError("slits must be interior and ordered")
    xs = [Fraction(0), xA, xB, W]
    ys = [Fraction(0), ya, yb, H]
    polys = []
    for i in range(3):
        for j in range(3):
            x1, x2, y1_, y2_ = xs[i], xs[i + 1], ys[j], ys[j + 1]
            polys.append(
                (f"P{i}{j}", [(x1, y1_), (x2, y1_), (x2, y2_), (x1, y2_)])
            )
    # rectangle edges: 0 bottom, 1 right, 2 top, 3 left
    glus = []
    for j in range(3):  # vertical interior lines x = xA, xB
        if j == 1:
            continue  # slit row handled below
        glus.append(((f"P0{j}", 1), (f"P1{j}", 3), "translation"))
        glus.append(((f"P1{j}", 1), (f"P2{j}", 3), "translation"))
    # the slits, cross-identified
    glus.append(((f"P01", 1), (f"P21", 3), "translation"))  # A_left ~ B_right
    glus.append(((f"P11", 3), (f"P11", 1), "translation"))  # A_right ~ B_left
    for i in range(3):  # horizontal interior lines y = y1, y2
        glus.append(((f"P{i}0", 2), (f"P{i}1", 0), "translation"))
        glus.append(((f"P{i}1", 2), (f"P{i}2", 0), "translation"))
    for j in range(3):  # torus wrap left-right
        glus.append(((f"P2{j}", 1), (f"P0{j}", 3), "translation"))
    for i in range(3):  # torus wrap bottom-top
        glus.append(((f"P{i}0", 0), (f"P{i}2", 2), "translation"))
    return build_surface(polys, glus)


def fig5_slit_torus(size=1, slope=None):
    """Slit torus with sides at an irrational slope: the square lattice is
    rotated so the horizontal direction has no closed leaves, then a
    horizontal slit is cut along the chord at height y0 and its four
    intervals are re-identified.  Genus 2 with a single zero of cone angle
    6pi; horizontal trajectories are (effectively) dense.

    The slope defaults to the exact dyadic value of float(1/sqrt(2)); the
    horizontal return map is then a rational rotation with an astronomically
    large denominator, so no trajectory closes within any practical budget.
    """
    L = rat(size)
    b = rat(slope) if slope is not None else rat(float(1.0 / math.sqrt(2.0)))
    if not (0 < b < 1):
        raise ValueError("slope must be in (0, 1)")
    v1 = (L, b * L)
    v2 = (-b * L, L)
    y0 = b * L / 2  # chord height, below both v1.y and v2.y
    a1 = (y0 / b, y0)  # chord right end, on the edge [O, v1]
    a2 = (-b * y0, y0)  # chord left end, on the edge [v2, O]
    a = (a1[0] - a2[0]) / 4  # slit half-length: slit spans half the chord
    x0 = a2[0] + (a1[0] - a2[0] - 2 * a) / 2
    s0, s1, s2 = (x0, y0), (x0 + a, y0), (x0 + 2 * a, y0)
    O = (Fraction(0), Fraction(0))
    lower = [O, a1, s2, s1, s0, a2]
    v12 = (v1[0] + v2[0], v1[1] + v2[1])
    a2v1 = (a2[0] + v1[0], a2[1] + v1[1])
    a1v2 = (a1[0] + v2[0], a1[1] + v2[1])
    upper = [a2, s0, s1, s2, a1, v1, a2v1, v12, a1v2, v2]
    glus = [
        (("L", 0), ("U", 8), "translation"),  # E1 lower ~ E3 upper (+v2)
        (("U", 4), ("U", 7), "translation"),  # E1 upper ~ E3 lower (+v2)
        (("L", 5), ("U", 5), "translation"),  # E4 lower ~ E2 lower (+v1)
        (("U", 9), ("U", 6), "translation"),  # E4 upper ~ E2 upper (+v1)
        (("L", 1), ("U", 3), "translation"),  # chord right tail (identity)
        (("L", 4), ("U", 0), "translation"),  # chord left tail (identity)
        (("U", 1), ("L", 2), "translation"),  # slit: T1 ~ B2
        (("U", 2), ("L", 3), "translation"),  # slit: T2 ~ B1
    ]
    return build_surface([("L", lower), ("U", upper)], glus)
