"""Weighted train tracks: switch combinatorics, boundary walks, region census.

A switch carries ordered stacks of incoming and outgoing half-branches (top
to bottom in the local picture: incoming approach from the left, outgoing
leave to the right).  The boundary walks of a fibered neighborhood are
computed from this data; cusps sit between stack-neighbors on the same side
of a switch.  The complementary-region census (genus, punctures, cusps per
boundary walk) is embedding data supplied with the track, not inferred.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .._num import rat


class TrackError(ValueError):
    pass


EndRef = tuple[str, int]  # (branch id, end 0/1)


@dataclass(frozen=True)
class Region:
    genus: int
    punctures: int
    corners: tuple[int, ...]  # cusp count per boundary walk

    @property
    def total_corners(self) -> int:
        return sum(self.corners)

    def forbidden_reason(self) -> str | None:
        g, p, c, w = self.genus, self.punctures, self.total_corners, len(self.corners)
        if g == 0 and p == 0 and w == 1:
            if c == 0:
                return "disk"
            if c == 1:
                return "monogon"
            if c == 2:
                return "bigon"
        if g == 0 and p == 1 and w == 1:
            if c == 0:
                return "once-punctured disk (annulus)"
            if c == 1:
                return "once-punctured monogon"
        if g == 0 and p == 0 and w == 2 and c == 0:
            return "annulus"
        return None

    def to_json_dict(self):
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "corners": list(self.corners),
        }


class TrainTrack:
    def __init__(self, branches, switches, regions=()):
        self.branches = tuple(str(b) for b in branches)
        if len(set(self.branches)) != len(self.branches):
            raise TrackError("duplicate branch ids")
        self.switches = []
        for sw in switches:
            inc = tuple((str(b), int(e)) for b, e in sw["incoming"])
            out = tuple((str(b), int(e)) for b, e in sw["outgoing"])
            if not inc or not out:
                raise TrackError("every switch needs both sides nonempty")
            self.switches.append({"incoming": inc, "outgoing": out})
        self.regions = tuple(
            r if isinstance(r, Region) else Region(
                int(r["genus"]),
                int(r["punctures"]),
                tuple(r["corners"]) if isinstance(r.get("corners"), (list, tuple))
                else (int(r["corners"]),),
            )
            for r in regions
        )
        self._validate()

    def _validate(self):
        seen: dict[EndRef, int] = {}
        for si, sw in enumerate(self.switches):
            for ref in sw["incoming"] + sw["outgoing"]:
                b, e = ref
                if b not in self.branches:
                    raise TrackError(f"switch {si} references unknown branch {b}")
                if e not in (0, 1):
                    raise TrackError(f"bad end {e} for branch {b}")
                if ref in seen:
                    raise TrackError(f"branch end {ref} attached twice")
                seen[ref] = si
        for b in self.branches:
            for e in (0, 1):
                if (b, e) not in seen:
                    raise TrackError(f"branch end {(b, e)} is unattached")
        self._switch_of = seen

    # -- ports and boundary walks ----------------------------------------

    def _is_incoming(self, ref: EndRef) -> bool:
        sw = self.switches[self._switch_of[ref]]
        return ref in sw["incoming"]

    def _band_pair(self, branch: str, side: str):
        """Ports (end, 'u'/'l') joined by the given intrinsic side of the
        branch.  The left side runs along the upper port at an end where the
        intrinsic 0->1 direction agrees with the switch-local direction."""
        ports = []
        for end in (0, 1):
            ref = (branch, end)
            incoming = self._is_incoming(ref)
            aligned = (end == 0 and not incoming) or (end == 1 and incoming)
            upper = (side == "L") == aligned
            ports.append((branch, end, "u" if upper else "l"))
        return ports

    def _switch_arcs(self):
        """Port pairings across each switch, with cusp flags."""
        arcs = {}

        def join(p1, p2, cusp):
            arcs[p1] = (p2, cusp)
            arcs[p2] = (p1, cusp)

        for sw in self.switches:
            inc, out = sw["incoming"], sw["outgoing"]
            join(inc[0] + ("u",), out[0] + ("u",), False)
            join(inc[-1] + ("l",), out[-1] + ("l",), False)
            for a, b in zip(inc, inc[1:]):
                join(a + ("l",), b + ("u",), True)
            for a, b in zip(out, out[1:]):
                join(a + ("l",), b + ("u",), True)
        return arcs

    def boundary_walks(self):
        """Walks of the fibered-neighborhood boundary.

        Each walk is a dict with 'sides': tuple of ((branch, side), cusp_after)
        and 'cusps': total cusp count.  cusp_after marks whether the switch
        transition following that side is a cusp.
        """
        arcs = self._switch_arcs()
        side_ports = {}
        for b in self.branches:
            for side in ("L", "R"):
                p0, p1 = self._band_pair(b, side)
                side_ports[(b, side, 0)] = p0
                side_ports[(b, side, 1)] = p1
        port_to_side = {}
        for (b, side, e), port in side_ports.items():
            port_to_side.setdefault(port, []).append((b, side, e))
        unused = {(b, s) for b in self.branches for s in ("L", "R")}
        walks = []
        while unused:
            b, s = min(unused)
            walk = []
            cusps = 0
            cur = (b, s)
            enter_end = 0  # traverse from end 0 to end 1 first
            while True:
                unused.discard(cur)
                exit_port = side_ports[(cur[0], cur[1], 1 - enter_end)]
                nxt_port, cusp = arcs[exit_port]
                walk.append((cur, bool(cusp)))
                cusps += bool(cusp)
                cands = port_to_side[nxt_port]
                if len(cands) != 1:
                    raise TrackError("ambiguous port pairing (bad switch data)")
                nb, ns, ne = cands[0]
                cur, enter_end = (nb, ns), ne
                if cur == (b, s) and enter_end == 0:
                    break
                if (cur not in unused) and not (cur == (b, s)):
                    raise TrackError("boundary walk revisits a side")
            walks.append({"sides": tuple(walk), "cusps": cusps})
        return walks

    def total_cusps(self) -> int:
        n = 0
        for sw in self.switches:
            n += (len(sw["incoming"]) - 1) + (len(sw["outgoing"]) - 1)
        return n

    # -- operations -------------------------------------------------------

    def validate(self) -> dict:
        """Region census report; raises TrackError on a forbidden region."""
        walks = self.boundary_walks()
        census = [r.to_json_dict() for r in self.regions]
        for i, r in enumerate(self.regions):
            reason = r.forbidden_reason()
            if reason is not None:
                raise TrackError(f"forbidden complementary region {i}: {reason}")
        declared = sum(r.total_corners for r in self.regions)
        actual = self.total_cusps()
        if self.regions and declared != actual:
            raise TrackError(
                f"census declares {declared} corners but the switches have "
                f"{actual} cusps"
            )
        return {
            "schema": "teichlab-track-census",
            "valid": True,
            "regions": census,
            "boundary_walks": [
                {"cusps": w["cusps"], "sides": [list(s) for s, _ in w["sides"]]}
                for w in walks
            ],
            "total_cusps": actual,
        }

    def check_switch_conditions(self, weights: dict) -> dict:
        """Per-switch residual sum(incoming) - sum(outgoing)."""
        w = {b: rat(weights[b]) for b in self.branches}
        residuals = []
        for sw in self.switches:
            r = sum((w[b] for b, _ in sw["incoming"]), Fraction(0)) - sum(
                (w[b] for b, _ in sw["outgoing"]), Fraction(0)
            )
            residuals.append(r)
        ok = all(r == 0 for r in residuals)
        return {
            "schema": "teichlab-switch-check",
            "pass": ok,
            "residuals": [float(r) for r in residuals],
        }

    def to_json_dict(self):
        return {
            "schema": "teichlab-track",
            "branches": list(self.branches),
            "switches": [
                {
                    "incoming": [list(r) for r in sw["incoming"]],
                    "outgoing": [list(r) for r in sw["outgoing"]],
                }
                for sw in self.switches
            ],
            "regions": [r.to_json_dict() for r in self.regions],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TrainTrack":
        return cls(doc["branches"], doc["switches"], doc.get("regions", ()))
