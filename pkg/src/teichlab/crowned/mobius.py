"""Real Mobius maps acting on the upper half-plane model.

Ideal boundary points are floats on the real line, with math.inf standing
for the point at infinity.  Matrices are normalized to det = 1; composition
is matrix product (up to overall sign, which acts trivially).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


def is_inf(x: float) -> bool:
    return math.isinf(x)


@dataclass(frozen=True)
class MobiusMap:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det <= 0:
            raise ValueError(f"Mobius map needs positive determinant, got {det}")
        s = math.sqrt(det)
        object.__setattr__(self, "a", self.a / s)
        object.__setattr__(self, "b", self.b / s)
        object.__setattr__(self, "c", self.c / s)
        object.__setattr__(self, "d", self.d / s)

    def apply(self, z):
        """Act on a boundary point (real or INF) or an interior complex point."""
        a, b, c, d = self.a, self.b, self.c, self.d
        if isinstance(z, complex):
            den = c * z + d
            return (a * z + b) / den
        if is_inf(z):
            return INF if c == 0 else a / c
        den = c * z + d
        if den == 0:
            return INF
        return (a * z + b) / den

    def __call__(self, z):
        return self.apply(z)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def derivative_at(self, x: float) -> float:
        """|M'(x)| at a finite boundary point not sent to infinity."""
        den = self.c * x + self.d
        if den == 0:
            raise ZeroDivisionError("point maps to infinity")
        return 1.0 / (den * den)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def to_zero_one_inf(cls, p: float, q: float, r: float) -> "MobiusMap":
        """Unique map sending (p, q, r) to (0, 1, INF)."""
        if len({_key(p), _key(q), _key(r)}) != 3:
            raise ValueError("points must be distinct")
        # rows of the classical construction, handling INF by limits
        if is_inf(p):
            a, b, c, d = 0.0, q - r, -1.0, r
        elif is_inf(q):
            a, b, c, d = 1.0, -p, 1.0, -r
        elif is_inf(r):
            a, b, c, d = -1.0, p, 0.0, p - q
        else:
            a, b = q - r, -p * (q - r)
            c, d = q - p, -r * (q - p)
        det = a * d - b * c
        if det < 0:
            a, b = -a, -b
            det = -det
        if det == 0:
            raise ValueError("degenerate triple")
        return cls(a, b, c, d)

    @classmethod
    def from_triples(cls, src, dst) -> "MobiusMap":
        """Map sending the src triple to the dst triple (both on the boundary)."""
        return cls.to_zero_one_inf(*dst).inverse().compose(cls.to_zero_one_inf(*src))

    @classmethod
    def rotation_about_i(cls, theta: float) -> "MobiusMap":
        """Elliptic rotation by angle theta about the point i."""
        ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
        return cls(ch, sh, -sh, ch)


def _key(x: float):
    return "inf" if is_inf(x) else x


def cross_ratio(p: float, q: float, r: float, s: float) -> float:
    """Cross-ratio normalized so that (0, 1, INF, x) -> x.

    Mobius invariant of an ordered 4-tuple of distinct boundary points.
    """
    pts = [p, q, r, s]
    if len({_key(x) for x in pts}) != 4:
        raise ValueError("cross_ratio needs four distinct points")
    # value = ((s-p)(q-r)) / ((s-r)(q-p)), with infinities cancelled pairwise
    def diff(x, y):
        return None if (is_inf(x) or is_inf(y)) else x - y

    num1, num2 = diff(s, p), diff(q, r)
    den1, den2 = diff(s, r), diff(q, p)
    # each infinite point appears once in the numerator and once in the
    # denominator; cancel those factors
    if is_inf(s):
        num1, den1 = 1.0, 1.0
    if is_inf(q):
        num2, den2 = 1.0, 1.0
    if is_inf(p):
        num1, den2 = 1.0, 1.0
    if is_inf(r):
        num2, den1 = 1.0, 1.0
    return (num1 * num2) / (den1 * den2)
