"""SVG figures for half-plane and disk-model hyperbolic objects."""
from __future__ import annotations

import math

from .mobius import is_inf


def _svg_header(w: float, h: float) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {w:.0f} {h:.0f}">\n'
    )


def halfplane_figure(geodesics, width=640, height=360, span=None) -> str:
    """Draw geodesics (pairs of ideal points) as half-circles/verticals."""
    finite = [abs(x) for g in geodesics for x in g if not is_inf(x)]
    span = span or max(finite + [1.0]) * 1.15
    scale = width / (2 * span)

    def X(x):
        return (x + span) * scale

    def Y(y):
        return height - 12 - y * scale

    parts = [_svg_header(width, height)]
    parts.append(
        f'<line x1="0" y1="{Y(0):.2f}" x2="{width}" y2="{Y(0):.2f}" '
        'stroke="#888" stroke-width="1"/>\n'
    )
    for p, q in geodesics:
        if is_inf(p) or is_inf(q):
            x = q if is_inf(p) else p
            parts.append(
                f'<line x1="{X(x):.2f}" y1="{Y(0):.2f}" x2="{X(x):.2f}" y2="0" '
                'stroke="#1a4f8b" stroke-width="1.5" fill="none"/>\n'
            )
        else:
            c, r = (p + q) / 2.0, abs(q - p) / 2.0
            parts.append(
                f'<path d="M {X(p):.2f} {Y(0):.2f} A {r*scale:.2f} {r*scale:.2f} '
                f'0 0 1 {X(q):.2f} {Y(0):.2f}" stroke="#1a4f8b" '
                'stroke-width="1.5" fill="none"/>\n'
            )
    parts.append("</svg>\n")
    return "".join(parts)


def _to_disk(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def disk_figure(ideal_points=(), paths=(), size=480) -> str:
    """Disk-model figure: boundary circle, marked ideal points, sampled paths.

    ideal_points are boundary reals/INF of the half-plane model; paths are
    lists of interior complex samples (drawn as polylines after Cayley map).
    """
    c, r = size / 2.0, size / 2.0 - 8

    def XY(w: complex):
        return (c + w.real * r, c - w.imag * r)

    parts = [_svg_header(size, size)]
    parts.append(
        f'<circle cx="{c}" cy="{c}" r="{r}" stroke="#333" fill="none" stroke-width="1.5"/>\n'
    )
    for p in ideal_points:
        w = complex(1, 0) if is_inf(p) else _to_disk(complex(p, 0))
        x, y = XY(w)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#b33"/>\n')
    for path in paths:
        pts = " ".join(
            f"{XY(_to_disk(z))[0]:.2f},{XY(_to_disk(z))[1]:.2f}" for z in path
        )
        parts.append(
            f'<polyline points="{pts}" stroke="#1a4f8b" stroke-width="1.2" fill="none"/>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)
