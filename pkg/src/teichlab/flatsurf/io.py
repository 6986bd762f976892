"""Surface spec files (JSON, numbers as decimal strings) and SVG figures."""
from __future__ import annotations

from fractions import Fraction

from .._json import dumps, loads
from .._num import rat, rat_str
from .surface import EdgeGluing, FlatPolygon, HalfTranslationSurface, build_surface

SCHEMA = "teichlab-surface"


def surface_to_json(surface: HalfTranslationSurface) -> str:
    doc = {
        "schema": SCHEMA,
        "allow_boundary": bool(surface.boundary_edges),
        "polygons": [
            {
                "id": pid,
                "vertices": [[rat_str(x), rat_str(y)] for x, y in poly.vertices],
            }
            for pid, poly in surface.polygons.items()
        ],
        "gluings": [
            {"a": [g.a[0], g.a[1]], "b": [g.b[0], g.b[1]], "kind": g.kind}
            for g in surface.gluings
        ],
    }
    return dumps(doc)


def surface_from_json(text: str) -> HalfTranslationSurface:
    doc = loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"expected schema {SCHEMA!r}, got {doc.get('schema')!r}")
    polys = [
        (p["id"], [(rat(x), rat(y)) for x, y in p["vertices"]])
        for p in doc["polygons"]
    ]
    glus = [
        ((g["a"][0], int(g["a"][1])), (g["b"][0], int(g["b"][1])), g["kind"])
        for g in doc["gluings"]
    ]
    return build_surface(polys, glus, allow_boundary=bool(doc.get("allow_boundary")))


def critical_graph_svg(graph, width=720) -> str:
    """Charts drawn side by side; saddle-connection legs in red, unresolved
    ray legs dashed."""
    surface = graph.surface
    boxes = []
    for pid, poly in surface.polygons.items():
        xs = [float(x) for x, _ in poly.vertices]
        ys = [float(y) for _, y in poly.vertices]
        boxes.append((pid, min(xs), min(ys), max(xs), max(ys)))
    pad = 0.08 * max(b[3] - b[1] for b in boxes)
    total_w = sum(b[3] - b[1] + pad for b in boxes) + pad
    max_h = max(b[4] - b[2] for b in boxes) + 2 * pad
    scale = width / total_w
    height = max_h * scale

    offset = {}
    x_cursor = pad
    for pid, x0, y0, x1, y1 in boxes:
        offset[pid] = (x_cursor - x0, pad - y0)
        x_cursor += (x1 - x0) + pad

    def XY(pid, x, y):
        dx, dy = offset[pid]
        return (float(x) + dx) * scale, height - (float(y) + dy) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">\n'
    ]
    for pid, poly in surface.polygons.items():
        pts = " ".join("%.2f,%.2f" % XY(pid, x, y) for x, y in poly.vertices)
        parts.append(
            f'<polygon points="{pts}" fill="#f4f4f4" stroke="#666" stroke-width="1"/>\n'
        )
    def draw_legs(legs, style):
        for leg in legs:
            x1, y1 = XY(leg.pid, *leg.start)
            x2, y2 = XY(leg.pid, *leg.end)
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {style}/>\n'
            )
    for conn in graph.connections:
        draw_legs(conn.legs, 'stroke="#b33" stroke-width="2"')
    for ray in graph.rays:
        draw_legs(ray.legs, 'stroke="#37b" stroke-width="1.2" stroke-dasharray="4 3"')
    for ci in graph.vertices:
        for pid, vi in surface.classes[ci].corners:
            x, y = XY(pid, *surface.polygons[pid].vertex(vi))
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#000"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)
