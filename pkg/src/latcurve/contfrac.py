"""Continued fractions, basic lattice triangles and the noses stretch."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import atan2, floor, hypot, ulp
from typing import Iterator, List, Optional, Tuple

from .errors import NoCrossingError, PrecisionExhausted

Vec = Tuple[int, int]


def _interval(alpha) -> Tuple[Fraction, Fraction]:
    """Exact rational enclosure of alpha.  Floats and Decimals are treated
    as approximations accurate to one unit in the last place."""
    if isinstance(alpha, float):
        x, e = Fraction(alpha), Fraction(ulp(alpha))
        return x - e, x + e
    if isinstance(alpha, Decimal):
        x = Fraction(alpha)
        e = Fraction(10) ** alpha.as_tuple().exponent
        return x - e, x + e
    x = Fraction(alpha)
    return x, x


def partial_quotients(alpha) -> Iterator[int]:
    """Yield a_1, a_2, ... of alpha = 1/(a_1 + 1/(a_2 + ...)), 0 < alpha < 1.

    Stops after the last quotient of a rational; raises PrecisionExhausted
    when an inexact input no longer determines the next quotient.
    """
    lo, hi = _interval(alpha)
    if not (0 < lo and hi < 1):
        raise ValueError("alpha must lie strictly between 0 and 1")
    while True:
        if lo == hi:
            y = 1 / lo
            a = floor(y)
            yield a
            if y == a:
                return
            lo = hi = y - a
            continue
        # 1/x is decreasing, so the image of [lo, hi] is [1/hi, 1/lo]
        ylo, yhi = 1 / hi, 1 / lo
        a = floor(ylo)
        if floor(yhi) != a or ylo == a:
            raise PrecisionExhausted("input precision does not determine the next quotient")
        yield a
        lo, hi = ylo - a, yhi - a


@dataclass(frozen=True)
class ContinuedFraction:
    partial_quotients: List[int]
    convergents: List[Tuple[int, int]]

    def value(self) -> Fraction:
        p, q = self.convergents[-1]
        return Fraction(p, q)


def convergents_of(quotients) -> List[Tuple[int, int]]:
    """(p_k, q_k) for k >= 1 from the seeds (1, 0) and (0, 1)."""
    (p2, q2), (p1, q1) = (1, 0), (0, 1)
    out = []
    for a in quotients:
        p, q = a * p1 + p2, a * q1 + q2
        out.append((p, q))
        (p2, q2), (p1, q1) = (p1, q1), (p, q)
    return out


def cf_expand(alpha, depth: int) -> ContinuedFraction:
    """Partial quotients and convergents of alpha up to ``depth`` terms.

    Rationals terminate early and exactly.  For floats and Decimals a
    PrecisionExhausted error is raised if fewer than ``depth`` quotients
    are determined by the input.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    qs = []
    for a in partial_quotients(alpha):
        qs.append(a)
        if len(qs) == depth:
            break
    return ContinuedFraction(qs, convergents_of(qs))


@dataclass(frozen=True)
class BasicTriangle:
    """Lattice triangle O A B with |A x B| = 1."""
    A: Vec
    B: Vec

    def __post_init__(self):
        if abs(self.A[0] * self.B[1] - self.A[1] * self.B[0]) != 1:
            raise ValueError(f"O, {self.A}, {self.B} is not a basic triangle")

    def crosses_ray(self, alpha) -> bool:
        """Exact test that the ray y = alpha x, x > 0, meets the open
        segment AB."""
        a = Fraction(alpha)
        sa, sb = _side(self.A, a), _side(self.B, a)
        return sa * sb < 0 and self.A[0] + self.B[0] > 0

    def side_ratio(self) -> float:
        la, lb = hypot(*self.A), hypot(*self.B)
        return min(la, lb) / max(la, lb)

    def apex_angle(self) -> float:
        A, B = self.A, self.B
        return atan2(abs(A[0] * B[1] - A[1] * B[0]), A[0] * B[0] + A[1] * B[1])

    def is_suitable(self, eps: float) -> bool:
        return self.side_ratio() > 1 - eps and self.apex_angle() < eps


def _side(v: Vec, a: Fraction) -> Fraction:
    return v[1] - a * v[0]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def noses_stretch(A: Vec, B: Vec, alpha) -> BasicTriangle:
    """Walk B_i = B + i A until the open segment B_{i-1} B_i crosses the ray
    y = alpha x, x > 0, and return O B_{i-1} B_i."""
    if abs(A[0] * B[1] - A[1] * B[0]) != 1:
        raise ValueError("O, A, B must be a basic triangle")
    a = Fraction(alpha)
    sA, sB = _sign(_side(A, a)), _sign(_side(B, a))
    # the ray direction (1, alpha) must lie strictly inside angle AOB
    d = (1, a)
    cAd = A[0] * d[1] - A[1] * d[0]
    cdB = d[0] * B[1] - d[1] * B[0]
    cAB = A[0] * B[1] - A[1] * B[0]
    if sA == 0 or sB == 0 or sA == sB or _sign(cAd) != _sign(cAB) or _sign(cdB) != _sign(cAB):
        raise NoCrossingError("the ray does not pass through the interior of angle AOB")
    prev = B
    i = 0
    while True:
        i += 1
        cur = (prev[0] + A[0], prev[1] + A[1])
        s = _sign(_side(cur, a))
        if s == 0:
            raise NoCrossingError(f"the ray passes through the fan vertex {cur}")
        if s == sA:
            return BasicTriangle(prev, cur)
        prev = cur


def find_suitable(alpha, eps: float, search_bound: int) -> Optional[BasicTriangle]:
    """First eps-suitable basic triangle met by the ray y = alpha x, taken
    from the noses stretch of consecutive convergent vectors, with all
    vertex coordinates at most ``search_bound``.  None if there is none
    within the bound or within the precision of alpha."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    prev = (1, 0)  # (q_0, p_0)
    try:
        for p, q in _convergent_stream(alpha):
            cur = (q, p)
            if q > search_bound:
                return None
            try:
                tri = noses_stretch(cur, prev, _probe(alpha, cur, prev))
            except NoCrossingError:
                prev = cur
                continue
            if max(max(abs(c) for c in tri.A), max(abs(c) for c in tri.B)) > search_bound:
                return None
            if tri.is_suitable(eps):
                return tri
            prev = cur
    except PrecisionExhausted:
        return None
    return None


def _convergent_stream(alpha):
    (p2, q2), (p1, q1) = (1, 0), (0, 1)
    for a in partial_quotients(alpha):
        p, q = a * p1 + p2, a * q1 + q2
        yield p, q
        (p2, q2), (p1, q1) = (p1, q1), (p, q)


def _probe(alpha, A: Vec, B: Vec) -> Fraction:
    """Exact slope to run the stretch with.  Exact inputs are used as is;
    for an inexact alpha the enclosing interval must not straddle any fan
    vertex, otherwise precision is reported as exhausted."""
    lo, hi = _interval(alpha)
    if lo == hi:
        return lo
    tri_lo = _try(A, B, lo)
    tri_hi = _try(A, B, hi)
    if tri_lo != tri_hi:
        raise PrecisionExhausted("alpha is too imprecise to locate the crossing")
    return Fraction(alpha)


def _try(A, B, a):
    try:
        return noses_stretch(A, B, a)
    except NoCrossingError:
        return None
