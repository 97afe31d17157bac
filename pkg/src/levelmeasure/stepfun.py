"""Exact piecewise-constant functions on [0, inf)."""

from __future__ import annotations

import bisect
import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .numeric import INF, Radical, ext_mul, fmt, to_number


def _dump(x):
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        if x.denominator & (x.denominator - 1) == 0:
            return float(x)  # dyadic, exact in binary
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Radical):
        return float(x)
    return x


def _load(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, float):
        q = Fraction(x)
        return q if q.denominator & (q.denominator - 1) == 0 else x
    return to_number(x)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant map a -> value.

    ``breakpoints`` b_1 < ... < b_k split [0, inf) into k + 1 pieces carrying
    ``values`` v_0, ..., v_k.  With ``attach="left"`` the pieces are
    [0, b_1], (b_1, b_2], ..., (b_k, inf); with ``attach="right"`` they are
    [0, b_1), [b_1, b_2), ..., [b_k, inf).
    """

    breakpoints: tuple
    values: tuple
    attach: str = "left"

    def __post_init__(self):
        if self.attach not in ("left", "right"):
            raise ValueError("attach must be 'left' or 'right'")
        bp, vals = tuple(self.breakpoints), tuple(self.values)
        if len(vals) != len(bp) + 1:
            raise ValueError("need exactly one more value than breakpoints")
        if any(b < 0 for b in bp) or any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be nonnegative and strictly increasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def build(cls, breakpoints, values, attach="left") -> "StepFunction":
        """Canonical form: merge pieces with equal values, drop empty pieces."""
        bp, vals = list(breakpoints), list(values)
        if attach == "right" and bp and bp[0] == 0:
            bp, vals = bp[1:], vals[1:]
        out_b, out_v = [], [vals[0]]
        for b, v in zip(bp, vals[1:]):
            if v == out_v[-1]:
                continue
            out_b.append(b)
            out_v.append(v)
        return cls(tuple(out_b), tuple(out_v), attach)

    def __call__(self, a):
        if a < 0:
            raise ValueError("step functions are defined on [0, inf)")
        if self.attach == "left":
            i = bisect.bisect_left(self.breakpoints, a)
        else:
            i = bisect.bisect_right(self.breakpoints, a)
        return self.values[i]

    def pieces(self):
        """(start, end, value) triples; ends use ``inf`` for the last piece."""
        edges = (0, *self.breakpoints, INF)
        return [(edges[i], edges[i + 1], v) for i, v in enumerate(self.values)]

    def integral(self):
        """Exact integral over [0, inf) with the convention inf * 0 = 0."""
        total = 0
        for lo, hi, v in self.pieces():
            if hi == INF:
                if v != 0:
                    return INF
                continue
            total = total + ext_mul(v, hi - lo)
            if total == INF:
                return INF
        return total

    def to_json(self) -> str:
        return json.dumps({
            "breakpoints": [_dump(b) for b in self.breakpoints],
            "values": [_dump(v) for v in self.values],
            "attach": self.attach,
        })

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        d = json.loads(text) if isinstance(text, str) else text
        return cls(tuple(_load(b) for b in d["breakpoints"]),
                   tuple(_load(v) for v in d["values"]), d.get("attach", "left"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["start", "value"])
        for lo, _, v in self.pieces():
            w.writerow([fmt(lo), fmt(v)])
        return buf.getvalue()

    def describe(self) -> str:
        lines = []
        for i, (lo, hi, v) in enumerate(self.pieces()):
            if self.attach == "left":
                left = "[" if i == 0 else "("
                right = ")" if hi == INF else "]"
            else:
                left, right = "[", ")"
            lines.append(f"{left}{fmt(lo)}, {fmt(hi)}{right} -> {fmt(v)}")
        return "\n".join(lines)
