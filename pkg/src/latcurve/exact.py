"""Exact planar primitives over the rationals.

Points and vectors are plain 2-tuples.  Lattice vectors hold ``int``
coordinates, rational points hold :class:`fractions.Fraction` coordinates.
Nothing in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, ceil, gcd, lcm
from typing import Sequence, Tuple, Union

from .errors import DegenerateError

Rational = Union[int, Fraction]
Vec = Tuple[Rational, Rational]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings and floats to a Fraction.

    Floats are read through their shortest decimal repr, so ``0.01``
    becomes ``1/100`` rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def point(x, y) -> Tuple[Fraction, Fraction]:
    return (as_rational(x), as_rational(y))


def as_point(p: Sequence) -> Tuple[Fraction, Fraction]:
    return (as_rational(p[0]), as_rational(p[1]))


def sub(p: Vec, q: Vec) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Vec, q: Vec) -> Vec:
    return (p[0] + q[0], p[1] + q[1])


def scale(p: Vec, k) -> Vec:
    return (p[0] * k, p[1] * k)


def cross(u: Vec, v: Vec):
    """Pseudoscalar product ``u.x*v.y - u.y*v.x``."""
    return u[0] * v[1] - u[1] * v[0]


def doubled_area(P: Vec, Q: Vec, R: Vec):
    """Signed doubled area of PQR; positive for counterclockwise order."""
    return cross(sub(Q, P), sub(R, P))


@dataclass(frozen=True)
class Frame:
    """Positively oriented reference triangle ABC.

    Use :meth:`from_points`; it swaps A and B when the given order is
    clockwise and records that in ``swapped``.
    """

    A: Tuple[Fraction, Fraction]
    B: Tuple[Fraction, Fraction]
    C: Tuple[Fraction, Fraction]
    S: Fraction
    swapped: bool = False
    AC: Vec = field(init=False, repr=False, compare=False)
    CB: Vec = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        AC = sub(self.C, self.A)
        CB = sub(self.B, self.C)
        S = cross(AC, CB)
        if S == 0:
            raise DegenerateError("frame vertices are collinear")
        if S != self.S or S < 0:
            raise DegenerateError("frame must be built with from_points")
        object.__setattr__(self, "AC", AC)
        object.__setattr__(self, "CB", CB)

    @classmethod
    def from_points(cls, A, B, C) -> "Frame":
        A, B, C = as_point(A), as_point(B), as_point(C)
        S = cross(sub(C, A), sub(B, C))
        if S == 0:
            raise DegenerateError("frame vertices are collinear")
        if S < 0:
            return cls(B, A, C, -S, swapped=True)
        return cls(A, B, C, S)

    @classmethod
    def unit(cls) -> "Frame":
        """A=(0,0), C=(1,0), B=(0,1); S = 1."""
        return cls.from_points((0, 0), (0, 1), (1, 0))

    def coords(self, v: Vec) -> Tuple[Fraction, Fraction]:
        """(t1, t2) with v = t1*AC + t2*CB, by Cramer's rule."""
        return (Fraction(cross(v, self.CB)) / self.S,
                Fraction(cross(self.AC, v)) / self.S)

    def girth(self, v: Vec) -> Fraction:
        return Fraction(cross(v, self.CB) + cross(self.AC, v)) / self.S

    def contains(self, v: Vec) -> bool:
        return cross(v, self.CB) >= 0 and cross(self.AC, v) >= 0

    def transform(self, U, shift=(0, 0)) -> "Frame":
        """Image of the frame under x -> U x + shift (vertex labels kept)."""
        return Frame.from_points(*(apply(U, p, shift) for p in (self.A, self.B, self.C)))

    def integer_form(self):
        """Integer vectors (ac, cb) and a positive scale ``L`` with
        ``ac = L*AC`` and ``cb = L*CB``.

        For an integer vector v, ``t1 = cross(v, cb) * L / D`` and
        ``t2 = cross(ac, v) * L / D`` where ``D = cross(ac, cb) > 0``.
        """
        L = lcm(*(Fraction(c).denominator for c in (*self.AC, *self.CB)))
        ac = (int(self.AC[0] * L), int(self.AC[1] * L))
        cb = (int(self.CB[0] * L), int(self.CB[1] * L))
        return ac, cb, L


def apply(U, p: Vec, shift=(0, 0)) -> Vec:
    """Affine image ``U p + shift`` for a 2x2 matrix given as nested rows."""
    (a, b), (c, d) = U
    return (a * p[0] + b * p[1] + shift[0], c * p[0] + d * p[1] + shift[1])


def girth(f: Frame, v: Vec) -> Fraction:
    """Frame-linear length with [AC] = [CB] = 1 and [AB] = 2."""
    return f.girth(v)


def segment_girth(f: Frame, P: Vec, Q: Vec) -> Fraction:
    return abs(f.girth(sub(Q, P)))


def in_angle(f: Frame, v: Vec) -> bool:
    """True iff v is a nonnegative combination of AC and CB."""
    return f.contains(v)


def abc_radius(f: Frame, P: Vec, Q: Vec, R: Vec) -> Fraction:
    """Product of the three side girths over four times the area."""
    s = doubled_area(P, Q, R)
    if s == 0:
        raise DegenerateError("abc_radius of a degenerate triangle")
    g = segment_girth(f, P, Q) * segment_girth(f, Q, R) * segment_girth(f, P, R)
    return g / (2 * abs(Fraction(s)))


def _lattice_line(P: Vec, Q: Vec):
    """Primitive integer direction d of PQ, the value c = X x d shared by all
    integer points X on the line, and whether that value is an integer."""
    D = sub(Q, P)
    den = lcm(Fraction(D[0]).denominator, Fraction(D[1]).denominator)
    dx, dy = int(D[0] * den), int(D[1] * den)
    g = gcd(dx, dy)
    d = (dx // g, dy // g)
    c = Fraction(cross(P, d))
    return d, c


def _ext_gcd(a: int, b: int):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def segment_lattice_count(P: Vec, Q: Vec, n: int) -> int:
    """Number of points of (Z/n)^2 on the closed segment PQ."""
    if n < 1:
        raise ValueError("n must be positive")
    P, Q = as_point(P), as_point(Q)
    if P == Q:
        raise ValueError("segment endpoints coincide")
    Pn, Qn = scale(P, n), scale(Q, n)
    d, c = _lattice_line(Pn, Qn)
    if c.denominator != 1:
        return 0
    # X x d = X.x*d.y - X.y*d.x = c has the particular solution below
    g, u, v = _ext_gcd(d[1], -d[0])
    X0 = (u * int(c), v * int(c))
    # position of an on-line point along d relative to X0
    i = 0 if d[0] != 0 else 1
    s1 = (Pn[i] - X0[i]) / d[i]
    s2 = (Qn[i] - X0[i]) / d[i]
    lo, hi = min(s1, s2), max(s1, s2)
    return max(0, floor(hi) - ceil(lo) + 1)


def in_lattice(P: Vec, n: int) -> bool:
    return all((Fraction(c) * n).denominator == 1 for c in P)


def strictly_inside(f: Frame, P: Vec) -> bool:
    """P lies in the open triangle ABC."""
    a, b, c = f.A, f.B, f.C
    return (doubled_area(a, c, P) > 0 and doubled_area(c, b, P) > 0
            and doubled_area(b, a, P) > 0)
