"""Metric ribbon graphs with finite edges and infinite rays.

Half-edges carry a cyclic position at their vertex; finite edges are twin
pairs with a positive length, rays have twin None.  The boundary walk uses
next(h) = cyclic-next(twin(h)) for finite edges and next(h) = cyclic-next(h)
for rays (the walk goes out to infinity and bounces back on the other side
of the ray), so every half-edge lies on exactly one face.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .._json import dumps, loads
from .._num import rat


class RibbonError(ValueError):
    pass


@dataclass(frozen=True)
class HalfEdge:
    id: str
    vertex: str
    cyclic_pos: int
    twin: str | None


class MetricRibbonGraph:
    def __init__(self, vertices, half_edges, lengths):
        self.vertices = tuple(str(v) for v in vertices)
        self.half_edges: dict[str, HalfEdge] = {}
        for he in half_edges:
            if isinstance(he, HalfEdge):
                h = he
            else:
                h = HalfEdge(
                    str(he["id"]),
                    str(he["vertex"]),
                    int(he["cyclic_pos"]),
                    he.get("twin"),
                )
            if h.id in self.half_edges:
                raise RibbonError(f"duplicate half-edge id {h.id}")
            self.half_edges[h.id] = h
        self.lengths: dict[str, Fraction] = {}
        for k, v in lengths.items():
            self.lengths[str(k)] = rat(v)
        self._validate()
        self._order()

    def _validate(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise RibbonError("duplicate vertex ids")
        for h in self.half_edges.values():
            if h.vertex not in vset:
                raise RibbonError(f"half-edge {h.id} at unknown vertex {h.vertex}")
            if h.twin is not None:
                t = self.half_edges.get(h.twin)
                if t is None or t.twin != h.id:
                    raise RibbonError(f"half-edge {h.id}: twin is not an involution")
                if t.id == h.id:
                    raise RibbonError(f"half-edge {h.id} twinned with itself")
        for h in self.half_edges.values():
            if h.twin is not None:
                la = self.lengths.get(h.id)
                lb = self.lengths.get(h.twin)
                length = la if la is not None else lb
                if length is None:
                    raise RibbonError(f"edge {h.id}/{h.twin} has no length")
                if la is not None and lb is not None and la != lb:
                    raise RibbonError(f"edge {h.id}/{h.twin}: twins disagree on length")
                self.lengths[h.id] = length
                self.lengths[h.twin] = length
                if length <= 0:
                    raise RibbonError(f"edge {h.id}: length must be positive")
            elif h.id in self.lengths:
                raise RibbonError(f"ray {h.id} must not carry a length")

    def _order(self):
        at_vertex: dict[str, list[HalfEdge]] = {v: [] for v in self.vertices}
        for h in self.half_edges.values():
            at_vertex[h.vertex].append(h)
        self._cyclic: dict[str, str] = {}
        for v, hs in at_vertex.items():
            hs.sort(key=lambda h: h.cyclic_pos)
            if len({h.cyclic_pos for h in hs}) != len(hs):
                raise RibbonError(f"vertex {v}: repeated cyclic positions")
            for i, h in enumerate(hs):
                self._cyclic[h.id] = hs[(i + 1) % len(hs)].id

    # -- structure ------------------------------------------------------

    def is_ray(self, hid: str) -> bool:
        return self.half_edges[hid].twin is None

    def sigma(self, hid: str) -> str:
        return self._cyclic[hid]

    def next_in_face(self, hid: str) -> str:
        h = self.half_edges[hid]
        return self.sigma(h.twin) if h.twin is not None else self.sigma(hid)

    def faces(self) -> list[tuple[str, ...]]:
        unvisited = set(self.half_edges)
        out = []
        while unvisited:
            start = min(unvisited)
            walk = [start]
            unvisited.discard(start)
            cur = self.next_in_face(start)
            while cur != start:
                walk.append(cur)
                unvisited.discard(cur)
                cur = self.next_in_face(cur)
            out.append(tuple(walk))
        return sorted(out)

    def face_length(self, walk) -> Fraction:
        return sum(
            (self.lengths[h] for h in walk if not self.is_ray(h)), Fraction(0)
        )

    def components(self) -> list[tuple[str, ...]]:
        """Connected components as sorted vertex tuples."""
        adj = {v: set() for v in self.vertices}
        for h in self.half_edges.values():
            if h.twin is not None:
                adj[h.vertex].add(self.half_edges[h.twin].vertex)
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adj[u] - comp)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    def num_edges(self) -> int:
        return sum(1 for h in self.half_edges.values() if h.twin is not None) // 2

    def to_json_dict(self):
        return {
            "schema": "teichlab-ribbon",
            "vertices": list(self.vertices),
            "half_edges": [
                {
                    "id": h.id,
                    "vertex": h.vertex,
                    "cyclic_pos": h.cyclic_pos,
                    "twin": h.twin,
                }
                for h in sorted(self.half_edges.values(), key=lambda h: h.id)
            ],
            "lengths": {k: float(v) for k, v in sorted(self.lengths.items())},
        }

    @classmethod
    def from_json(cls, text: str) -> "MetricRibbonGraph":
        doc = loads(text)
        if doc.get("schema") != "teichlab-ribbon":
            raise RibbonError(f"unexpected schema {doc.get('schema')!r}")
        return cls(doc["vertices"], doc["half_edges"], doc.get("lengths", {}))

    @classmethod
    def from_dict(cls, doc: dict) -> "MetricRibbonGraph":
        return cls(doc["vertices"], doc["half_edges"], doc.get("lengths", {}))


def loop_graph(circumference) -> MetricRibbonGraph:
    """Single loop with one 2-valent vertex; two compact faces."""
    return MetricRibbonGraph(
        ["v0"],
        [
            {"id": "a+", "vertex": "v0", "cyclic_pos": 0, "twin": "a-"},
            {"id": "a-", "vertex": "v0", "cyclic_pos": 1, "twin": "a+"},
        ],
        {"a+": circumference},
    )


def figure_eight_graph(l1, l2) -> MetricRibbonGraph:
    """Wedge of two loops whose faces have lengths l1, l2 and l1+l2."""
    return MetricRibbonGraph(
        ["v0"],
        [
            {"id": "e1+", "vertex": "v0", "cyclic_pos": 0, "twin": "e1-"},
            {"id": "e2-", "vertex": "v0", "cyclic_pos": 1, "twin": "e2+"},
            {"id": "e2+", "vertex": "v0", "cyclic_pos": 2, "twin": "e2-"},
            {"id": "e1-", "vertex": "v0", "cyclic_pos": 3, "twin": "e1+"},
        ],
        {"e1+": l1, "e2+": l2},
    )


def tripod_graph() -> MetricRibbonGraph:
    """One vertex, three infinite rays; a single face with three bounces."""
    return MetricRibbonGraph(
        ["v0"],
        [
            {"id": f"r{i}", "vertex": "v0", "cyclic_pos": i, "twin": None}
            for i in range(3)
        ],
        {},
    )


def h_tree_graph(center, p1, p2, p3, p4) -> MetricRibbonGraph:
    """Two junctions joined by a center edge, four rayed tips.

    The single face has four bounces with arc lengths
    (p1+center+p2, p2+p3, p3+center+p4, p4+p1), so the planar-end residue is
    2*center.
    """
    c, q1, q2, q3, q4 = (rat(x) for x in (center, p1, p2, p3, p4))
    vertices = ["u", "v", "t1", "t2", "t3", "t4"]
    half_edges = [
        {"id": "l1+", "vertex": "u", "cyclic_pos": 0, "twin": "l1-"},
        {"id": "c+", "vertex": "u", "cyclic_pos": 1, "twin": "c-"},
        {"id": "l4+", "vertex": "u", "cyclic_pos": 2, "twin": "l4-"},
        {"id": "c-", "vertex": "v", "cyclic_pos": 0, "twin": "c+"},
        {"id": "l2+", "vertex": "v", "cyclic_pos": 1, "twin": "l2-"},
        {"id": "l3+", "vertex": "v", "cyclic_pos": 2, "twin": "l3-"},
    ]
    for i in range(1, 5):
        tip = f"t{i}"
        half_edges.append({"id": f"l{i}-", "vertex": tip, "cyclic_pos": 0, "twin": f"l{i}+"})
        half_edges.append({"id": f"r{i}", "vertex": tip, "cyclic_pos": 1, "twin": None})
    lengths = {"c+": c, "l1+": q1, "l2+": q2, "l3+": q3, "l4+": q4}
    return MetricRibbonGraph(vertices, half_edges, lengths)


def star_tree_graph(leg_lengths) -> MetricRibbonGraph:
    """Central vertex with legs to tips, one ray at each tip.

    The single face bounces once per ray; the arc between consecutive rays
    k and k+1 has length leg_k + leg_{k+1}.
    """
    legs = [rat(x) for x in leg_lengths]
    m = len(legs)
    if m < 3:
        raise RibbonError("star tree needs at least 3 legs")
    vertices = ["c"] + [f"t{i}" for i in range(m)]
    half_edges = []
    lengths = {}
    for i in range(m):
        half_edges.append({"id": f"l{i}+", "vertex": "c", "cyclic_pos": i, "twin": f"l{i}-"})
        half_edges.append({"id": f"l{i}-", "vertex": f"t{i}", "cyclic_pos": 0, "twin": f"l{i}+"})
        half_edges.append({"id": f"r{i}", "vertex": f"t{i}", "cyclic_pos": 1, "twin": None})
        lengths[f"l{i}+"] = legs[i]
    return MetricRibbonGraph(vertices, half_edges, lengths)
