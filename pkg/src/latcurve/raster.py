"""Exact row-by-row rasterization of convex polygons given by half-planes."""
from __future__ import annotations

from fractions import Fraction
from math import floor, ceil

import numpy as np


class HalfPlane:
    """``a*x + b*y + c >= 0`` (``> 0`` when strict), exact rationals."""

    __slots__ = ("a", "b", "c", "strict")

    def __init__(self, a, b, c, strict=False):
        self.a, self.b, self.c = Fraction(a), Fraction(b), Fraction(c)
        self.strict = strict

    def __call__(self, x, y) -> bool:
        v = self.a * x + self.b * y + self.c
        return v > 0 if self.strict else v >= 0


def _lower(num: Fraction, strict: bool) -> int:
    """Least integer x with x >= num (x > num when strict)."""
    return floor(num) + 1 if strict else ceil(num)


def _upper(num: Fraction, strict: bool) -> int:
    return ceil(num) - 1 if strict else floor(num)


def rows(halfplanes, ylo, yhi):
    """Yield ``(y, xmin, xmax)`` for integer rows ``ylo <= y <= yhi`` where
    the polygon is nonempty.  The polygon must be bounded in x on every row
    that is visited."""
    for y in range(ylo, yhi + 1):
        lo = hi = None
        empty = False
        for h in halfplanes:
            rest = h.b * y + h.c
            if h.a == 0:
                if not (rest > 0 if h.strict else rest >= 0):
                    empty = True
                    break
                continue
            bound = -rest / h.a
            if h.a > 0:
                v = _lower(bound, h.strict)
                lo = v if lo is None else max(lo, v)
            else:
                v = _upper(bound, h.strict)
                hi = v if hi is None else min(hi, v)
        if empty:
            continue
        if lo is None or hi is None:
            raise ValueError(f"row {y} is unbounded")
        if lo <= hi:
            yield y, lo, hi


def y_extent(vertices):
    ys = [Fraction(v[1]) for v in vertices]
    return floor(min(ys)), ceil(max(ys))


def points(halfplanes, ylo, yhi):
    """All integer points as two int64 arrays (xs, ys), row-major order."""
    xs, ys = [], []
    for y, lo, hi in rows(halfplanes, ylo, yhi):
        xs.append(np.arange(lo, hi + 1, dtype=np.int64))
        ys.append(np.full(hi - lo + 1, y, dtype=np.int64))
    if not xs:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(xs), np.concatenate(ys)
