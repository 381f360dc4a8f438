"""Integer vectors of the frame angle, ordered by girth."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, sqrt
from typing import List, Tuple

from .exact import Frame, as_rational, cross
from .raster import HalfPlane, rows, y_extent

SUM_CONSTANT = 2 * sqrt(2) / 3


def _cone_rows(f: Frame, r: Fraction, strict: bool):
    """Rows of the triangle {v in An : [v] <= r} (``< r`` when strict)."""
    ac, cb, L = f.integer_form()
    w = (cb[0] - ac[0], cb[1] - ac[1])
    D = cross(ac, cb)
    R = Fraction(r) * D / L
    planes = [
        HalfPlane(cb[1], -cb[0], 0),
        HalfPlane(-ac[1], ac[0], 0),
        HalfPlane(-w[1], w[0], R, strict=strict),
    ]
    verts = [(0, 0), (r * f.AC[0], r * f.AC[1]), (r * f.CB[0], r * f.CB[1])]
    ylo, yhi = y_extent(verts)
    return rows(planes, ylo, yhi), ac, w


def _collect(f: Frame, r: Fraction, strict=False, primitive=False, open_cone=False):
    """(G, t2num, vector) triples for the nonzero lattice vectors with girth
    at most r.  G and t2num are integers proportional to the girth and to
    the CB-coordinate, with the same positive factor for every vector."""
    row_iter, ac, w = _cone_rows(f, r, strict)
    out = []
    for y, lo, hi in row_iter:
        for x in range(lo, hi + 1):
            if x == 0 and y == 0:
                continue
            if primitive and gcd(x, y) != 1:
                continue
            t2 = ac[0] * y - ac[1] * x
            G = x * w[1] - y * w[0]
            if open_cone and (t2 == 0 or t2 == G):
                continue
            out.append((G, t2, (x, y)))
    return out


def enumerate_by_girth(f: Frame, k: int, *, primitive=False,
                       open_cone=False) -> List[Tuple[int, int]]:
    """The k vectors of Z^2 in An with least girth.

    Ties are broken by the angle measured from the ray AC, so the result is
    a deterministic function of k and each list is a prefix of the next.
    ``primitive`` keeps only vectors with coprime coordinates and
    ``open_cone`` drops the two boundary rays.
    """
    if k < 1:
        raise ValueError("k must be positive")
    r = Fraction(isqrt(int(2 * k / f.S) + 1) + 1)
    while True:
        found = _collect(f, r, primitive=primitive, open_cone=open_cone)
        if len(found) >= k:
            found.sort(key=lambda t: (t[0], t[1]))
            return [v for _, _, v in found[:k]]
        r *= 2


def count_girth_below(f: Frame, r) -> int:
    """Exact number of nonzero integer vectors z in An with [z] < r."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    row_iter, _, _ = _cone_rows(f, r, strict=True)
    total = sum(hi - lo + 1 for _, lo, hi in row_iter)
    return total - 1  # the origin


def girth_sum(f: Frame, k: int) -> Fraction:
    return sum((f.girth(v) for v in enumerate_by_girth(f, k)), Fraction(0))


def girth_prefix_sums(f: Frame, k: int) -> List[Fraction]:
    """Partial sums of girths along enumerate_by_girth(f, k)."""
    out, s = [], Fraction(0)
    for v in enumerate_by_girth(f, k):
        s += f.girth(v)
        out.append(s)
    return out


def girth_sum_bound(S, k) -> float:
    """Leading term (2*sqrt(2)/3) * S^(-1/2) * k^(3/2) of the least girth sum."""
    return SUM_CONSTANT * float(S) ** -0.5 * k ** 1.5
