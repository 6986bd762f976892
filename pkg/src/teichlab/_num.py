"""Exact rational scalars and tiny planar vector helpers.

Flat-side modules keep coordinates as Fractions so that gluing checks,
holonomies and areas are exact whenever the input data is rational (floats
are converted to their exact dyadic value).  Hyperbolic/PDE modules work in
floats and only meet this layer at import/export time.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Union[int, float, str, Fraction]

# Snap radius used when matching float points to cone points (documented,
# configurable through the functions that do hit detection).
DEFAULT_SNAP = Fraction(1, 10**9)
REL_TOL = 1e-12


def rat(x: Scalar) -> Fraction:
    """Convert a number (or decimal / 'p/q' string) to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coordinate {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def rat_str(x: Fraction) -> str:
    """Serialize a Fraction as a decimal string when exact, else 'p/q'."""
    den = x.denominator
    # exact decimal iff denominator is 2^a * 5^b
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        value = x.numerator / x.denominator if den != 1 else x.numerator
        # produce an exact decimal expansion rather than repr(float)
        num, sign = abs(x.numerator), "-" if x.numerator < 0 else ""
        a = 0
        dd = den
        while dd % 2 == 0:
            dd //= 2
            a += 1
        b = 0
        while dd % 5 == 0:
            dd //= 5
            b += 1
        shift = max(a, b)
        scaled = num * (10**shift) // den
        s = str(scaled).rjust(shift + 1, "0")
        if shift:
            s = s[:-shift] + "." + s[-shift:]
        return sign + s
    return f"{x.numerator}/{x.denominator}"


Vec = tuple[Fraction, Fraction]


def vec(x: Scalar, y: Scalar) -> Vec:
    return (rat(x), rat(y))


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def norm2(a: Vec) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def vlen(a: Vec) -> float:
    return math.hypot(float(a[0]), float(a[1]))


def close(a: Fraction, b: Fraction, rel: float = REL_TOL) -> bool:
    """Relative comparison for data that passed through floats."""
    if a == b:
        return True
    scale = max(abs(float(a)), abs(float(b)), 1.0)
    return abs(float(a - b)) <= rel * scale
