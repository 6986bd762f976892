"""Canonical JSON emission: sorted keys, 17-significant-digit floats.

Two runs on identical inputs must produce byte-identical report files, so
all float formatting funnels through here.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from ._num import rat_str

SCHEMA_VERSION = "teichlab-1"


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _canon(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, float):
        return _Raw(fmt_float(obj))
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if hasattr(obj, "to_json_dict"):
        return _canon(obj.to_json_dict())
    return obj


class _Raw:
    def __init__(self, text: str):
        self.text = text


class _Encoder(json.JSONEncoder):
    def default(self, o):
        raise TypeError(f"not JSON-serializable: {type(o).__name__}")

    def iterencode(self, o, _one_shot=False):
        for chunk in super().iterencode(o, _one_shot=_one_shot):
            yield chunk


def dumps(obj: Any) -> str:
    canon = _canon(obj)
    # render _Raw markers without quotes by a two-pass substitution
    markers: dict[str, str] = {}

    def strip(o: Any) -> Any:
        if isinstance(o, _Raw):
            key = f"\x00raw{len(markers)}\x00"
            markers[key] = o.text
            return key
        if isinstance(o, dict):
            return {k: strip(v) for k, v in o.items()}
        if isinstance(o, list):
            return [strip(v) for v in o]
        return o

    text = json.dumps(strip(canon), sort_keys=True, indent=2, cls=_Encoder)
    for key, val in markers.items():
        text = text.replace(f'"{key}"', val)
    return text + "\n"


def loads(text: str) -> Any:
    return json.loads(text)
