"""Counting integer vector pairs with a fixed pseudoscalar product.

Domains are finite unions of triangles with a vertex at the origin.  The
fast counters walk the lattice points of the first domain and, for each of
them, clip the one-parameter family of solutions of ``x1 x x2 = m`` against
the second domain exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import atan2, ceil, cos, floor, gcd, isqrt, lcm, pi, sin
from typing import List, Sequence, Tuple

import numpy as np
from scipy import integrate

from .exact import Frame, as_point, as_rational, cross
from .raster import HalfPlane, points as raster_points, y_extent

ZETA2 = pi * pi / 6.0


def sigma(m: int) -> int:
    """Sum of the positive divisors of m."""
    if m < 1:
        raise ValueError("m must be positive")
    total = 0
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            total += d
            if d * d != m:
                total += m // d
    return total


def _same_ray(u, v) -> bool:
    return cross(u, v) == 0 and u[0] * v[0] + u[1] * v[1] > 0


def _strictly_between(w, U, V) -> bool:
    return cross(U, w) > 0 and cross(w, V) > 0


class StarDomain:
    """Union of origin-vertex triangles O U V (U x V > 0), pairwise
    interior-disjoint.

    Membership convention: a point belongs to triangle OUV when it equals
    s U + t V with s > 0, t > 0 and s + t <= 1, except that the ray OU is
    included (t >= 0) whenever another triangle of the domain ends on that
    same ray.  Shared rays therefore count once, outer rays are open and
    outer edges are closed; ``tri(a)`` is exactly {0 < y < x <= a}.
    """

    def __init__(self, triangles: Sequence[Tuple[Sequence, Sequence]]):
        tris = []
        for U, V in triangles:
            U, V = as_point(U), as_point(V)
            if cross(U, V) <= 0:
                raise ValueError("each triangle needs U x V > 0")
            tris.append((U, V))
        for i, (U, V) in enumerate(tris):
            for U2, V2 in tris[i + 1:]:
                if (_strictly_between(U2, U, V) or _strictly_between(V2, U, V)
                        or _strictly_between(U, U2, V2) or _strictly_between(V, U2, V2)
                        or (_same_ray(U, U2) and _same_ray(V, V2))):
                    raise ValueError("triangles overlap")
        self.triangles = tris
        self.closed_first = [any(_same_ray(V2, U) for j, (_, V2) in enumerate(tris) if j != i)
                             for i, (U, _) in enumerate(tris)]

    def __repr__(self):
        body = "; ".join(f"({U[0]},{U[1]})-({V[0]},{V[1]})" for U, V in self.triangles)
        return f"StarDomain[{body}]"

    @classmethod
    def tri(cls, a) -> "StarDomain":
        a = as_rational(a)
        return cls([((a, 0), (a, a))])

    @classmethod
    def fan(cls, vertices) -> "StarDomain":
        """Triangles O V_j V_{j+1} for consecutive vertices."""
        vs = [as_point(v) for v in vertices]
        if len(vs) < 2:
            raise ValueError("a fan needs at least two vertices")
        return cls(list(zip(vs[:-1], vs[1:])))

    @classmethod
    def parse(cls, spec: str) -> "StarDomain":
        """``tri:a`` or ``poly:x1,y1;x2,y2;...`` (coordinates may be p/q)."""
        kind, _, body = spec.partition(":")
        if kind == "tri":
            return cls.tri(Fraction(body))
        if kind == "poly":
            verts = []
            for item in body.split(";"):
                x, y = item.split(",")
                verts.append((Fraction(x), Fraction(y)))
            return cls.fan(verts)
        raise ValueError(f"unknown domain spec {spec!r}")

    @classmethod
    def empty(cls) -> "StarDomain":
        return cls([])

    def scaled(self, lam) -> "StarDomain":
        lam = as_rational(lam)
        return StarDomain([((U[0] * lam, U[1] * lam), (V[0] * lam, V[1] * lam))
                           for U, V in self.triangles])

    def transform(self, M) -> "StarDomain":
        """Image under an integer matrix; orientation is restored if det < 0."""
        (a, b), (c, d) = M
        img = lambda p: (a * p[0] + b * p[1], c * p[0] + d * p[1])
        det = a * d - b * c
        if det == 0:
            raise ValueError("singular matrix")
        if det > 0:
            return StarDomain([(img(U), img(V)) for U, V in self.triangles])
        return StarDomain([(img(V), img(U)) for U, V in self.triangles])

    def doubled_area(self) -> Fraction:
        return sum((Fraction(cross(U, V)) for U, V in self.triangles), Fraction(0))

    def vertex_angles(self) -> List[float]:
        return [atan2(float(p[1]), float(p[0])) for U, V in self.triangles for p in (U, V)]

    def contains(self, X) -> bool:
        """Exact membership of a rational point."""
        for (U, V), closed in zip(self.triangles, self.closed_first):
            D = cross(U, V)
            s = cross(X, V)
            t = cross(U, X)
            if s > 0 and (t >= 0 if closed else t > 0) and s + t <= D:
                return True
        return False

    # integer data for the scaled domain n*Omega
    def _int_triangles(self, n: int):
        out = []
        for (U, V), closed in zip(self.triangles, self.closed_first):
            L = lcm(*(Fraction(c).denominator for c in (*U, *V)))
            Ui = (int(U[0] * L * n), int(U[1] * L * n))
            Vi = (int(V[0] * L * n), int(V[1] * L * n))
            out.append((Ui, Vi, L, closed))
        return out

    def lattice_points(self, n: int):
        """Integer points of n*Omega as (xs, ys) int64 arrays."""
        xs, ys = [], []
        for Ui, Vi, L, closed in self._int_triangles(n):
            W = (Vi[0] - Ui[0], Vi[1] - Ui[1])
            planes = [HalfPlane(Vi[1], -Vi[0], 0, strict=True),
                      HalfPlane(-Ui[1], Ui[0], 0, strict=not closed),
                      HalfPlane(-L * W[1], L * W[0], cross(Ui, Vi))]
            ylo, yhi = y_extent([(0, 0), (0, Fraction(Ui[1], L)), (0, Fraction(Vi[1], L))])
            px, py = raster_points(planes, ylo, yhi)
            xs.append(px)
            ys.append(py)
        if not xs:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        return np.concatenate(xs), np.concatenate(ys)


# --- exact counting on solution lines ---------------------------------------

_BIG = 1 << 62


def _dtype_for(bound) -> type:
    return np.int64 if bound < (1 << 60) else object


def _ext_gcd_vec(a, b):
    """Coefficients (p, q) with a*p + b*q = gcd(a, b), elementwise, for
    nonnegative a, b."""
    old_r, r = a.copy(), b.copy()
    old_s, s = np.ones_like(a), np.zeros_like(a)
    old_t, t = np.zeros_like(a), np.ones_like(a)
    while True:
        mask = r != 0
        if not np.any(mask):
            break
        q = np.zeros_like(a)
        q[mask] = old_r[mask] // r[mask]
        old_r[mask], r[mask] = r[mask], old_r[mask] - q[mask] * r[mask]
        old_s[mask], s[mask] = s[mask], old_s[mask] - q[mask] * s[mask]
        old_t[mask], t[mask] = t[mask], old_t[mask] - q[mask] * t[mask]
    return old_s, old_t


def _solution_lines(a, b, m: int):
    """For x1 = (a, b), the integer solutions of a*y - b*x = m form
    X0 + k*d.  Returns (keep, X0x, X0y, dx, dy) restricted to x1 whose
    gcd divides m."""
    g = np.gcd(a, b)
    keep = (m % g) == 0
    a, b, g = a[keep], b[keep], g[keep]
    ap, bp, mp = a // g, b // g, m // g
    p, q = _ext_gcd_vec(np.abs(ap), np.abs(bp))
    p = p * np.sign(ap)
    q = q * np.sign(bp)
    # ap*p + bp*q = 1  =>  y = p*mp, x = -q*mp
    return keep, -q * mp, p * mp, ap, bp


def _count_k(constraints, size, dtype):
    """Number of integers k with alpha + k*beta > 0 (or >= 0) for all
    constraints, elementwise."""
    lo = np.full(size, -_BIG, dtype=dtype)
    hi = np.full(size, _BIG, dtype=dtype)
    ok = np.ones(size, dtype=bool)
    for alpha, beta, strict in constraints:
        pos, neg, zero = beta > 0, beta < 0, beta == 0
        if np.any(pos):
            al, be = alpha[pos], beta[pos]
            bound = (-al) // be + 1 if strict else -(al // be)
            lo[pos] = np.maximum(lo[pos], bound)
        if np.any(neg):
            al, be = alpha[neg], -beta[neg]
            bound = -((-al) // be) - 1 if strict else al // be
            hi[neg] = np.minimum(hi[neg], bound)
        if np.any(zero):
            al = alpha[zero]
            ok[zero] &= (al > 0) if strict else (al >= 0)
    count = hi - lo + 1
    count = np.where(ok & (count > 0), count, 0)
    return count


def _cr(ux, uy, vx, vy):
    return ux * vy - uy * vx


def _triangle_constraints(X0x, X0y, dx, dy, tri):
    """Constraints on k for X0 + k d to lie in one integer triangle."""
    Ui, Vi, L, closed = tri
    Wx, Wy = Vi[0] - Ui[0], Vi[1] - Ui[1]
    D = Ui[0] * Vi[1] - Ui[1] * Vi[0]
    return [
        (_cr(X0x, X0y, Vi[0], Vi[1]), _cr(dx, dy, Vi[0], Vi[1]), True),
        (_cr(Ui[0], Ui[1], X0x, X0y), _cr(Ui[0], Ui[1], dx, dy), not closed),
        (D - L * _cr(X0x, X0y, Wx, Wy), -L * _cr(dx, dy, Wx, Wy), False),
    ]


def count_pairs_fast(om1: StarDomain, om2: StarDomain, m: int, n: int) -> int:
    """Exact number of pairs x1 in n*om1, x2 in n*om2 (integer points) with
    x1 x x2 = m."""
    if m == 0:
        raise ValueError("m must be nonzero")
    a, b = om1.lattice_points(n)
    if a.size == 0 or not om2.triangles:
        return 0
    tris = om2._int_triangles(n)
    big = max(abs(int(v)) for v in (a.max(), a.min(), b.max(), b.min()))
    tb = max(max(abs(c) for c in (*U, *V)) * L for U, V, L, _ in tris)
    dtype = _dtype_for(8 * (big * abs(m) + big) * tb * max(t[2] for t in tris))
    a, b = a.astype(dtype), b.astype(dtype)
    _, X0x, X0y, dx, dy = _solution_lines(a, b, m)
    total = 0
    for tri in tris:
        cons = _triangle_constraints(X0x, X0y, dx, dy, tri)
        total += int(np.sum(_count_k(cons, X0x.shape[0], dtype)))
    return total


def count_pairs_bruteforce(om1: StarDomain, om2: StarDomain, m: int, n: int) -> int:
    """Reference count: scan bounding boxes, test membership point by point,
    compare every pair.  Meant for small n."""
    P1 = _box_points(om1, n)
    P2 = _box_points(om2, n)
    if len(P1) == 0 or len(P2) == 0:
        return 0
    cr = P1[:, 0][:, None] * P2[None, :, 1] - P1[:, 1][:, None] * P2[None, :, 0]
    return int(np.count_nonzero(cr == m))


def _box_points(om: StarDomain, n: int) -> np.ndarray:
    if not om.triangles:
        return np.empty((0, 2), dtype=np.int64)
    xs = [p[0] * n for U, V in om.triangles for p in ((0, 0), U, V)]
    ys = [p[1] * n for U, V in om.triangles for p in ((0, 0), U, V)]
    x0, x1 = int(np.floor(float(min(xs)))) - 1, int(np.ceil(float(max(xs)))) + 1
    y0, y1 = int(np.floor(float(min(ys)))) - 1, int(np.ceil(float(max(ys)))) + 1
    X, Y = np.meshgrid(np.arange(x0, x1 + 1), np.arange(y0, y1 + 1), indexing="ij")
    X, Y = X.ravel().astype(object), Y.ravel().astype(object)
    inside = np.zeros(X.shape, dtype=bool)
    for (U, V), closed in zip(om.triangles, om.closed_first):
        # X = s*nU + t*nV scaled by D = nU x nV > 0
        Un, Vn = (U[0] * n, U[1] * n), (V[0] * n, V[1] * n)
        D = cross(Un, Vn)
        s = X * Vn[1] - Y * Vn[0]
        t = Un[0] * Y - Un[1] * X
        s_ok = s > 0
        t_ok = (t >= 0) if closed else (t > 0)
        inside |= s_ok & t_ok & (s + t <= D)
    return np.stack([X[inside], Y[inside]], axis=1).astype(np.int64)


# --- profiles and predictions ------------------------------------------

def _ray_length(U, V, w) -> float:
    Ux, Uy, Vx, Vy = (float(c) for c in (*U, *V))
    if Ux * w[1] - Uy * w[0] < 0 or w[0] * Vy - w[1] * Vx <= 0:
        return 0.0
    den = w[0] * (Vy - Uy) - w[1] * (Vx - Ux)
    return (Ux * Vy - Uy * Vx) / den


def chord_profile(om: StarDomain, phi: float) -> float:
    """Length of om intersected with the line through O at angle phi."""
    total = 0.0
    for sgn in (1.0, -1.0):
        w = (sgn * cos(phi), sgn * sin(phi))
        for U, V in om.triangles:
            total += _ray_length(U, V, w)
    return total


def profile_integral(om1: StarDomain, om2: StarDomain, tol: float = 1e-10) -> float:
    """Integral over [0, pi] of chord_profile(om1) * chord_profile(om2)."""
    cuts = {0.0, pi}
    for ang in om1.vertex_angles() + om2.vertex_angles():
        a = ang % pi
        cuts.add(a)
    cuts = sorted(cuts)
    pieces = [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b - a > 1e-15]
    f = lambda t: chord_profile(om1, t) * chord_profile(om2, t)
    total = 0.0
    for a, b in pieces:
        val, _ = integrate.quad(f, a, b, epsabs=tol / max(len(pieces), 1), epsrel=0.0, limit=200)
        total += val
    return total


def prediction(om1: StarDomain, om2: StarDomain, m: int, n: int, tol: float = 1e-10) -> float:
    """Leading term sigma(|m|)/|m| * zeta(2)^-1 * integral * n^2."""
    if m == 0:
        raise ValueError("m must be nonzero")
    return sigma(abs(m)) / abs(m) / ZETA2 * profile_integral(om1, om2, tol) * n * n


@dataclass(frozen=True)
class PairCount:
    m: int
    n: int
    count: int
    prediction: float

    @property
    def ratio(self) -> float:
        return self.count / self.prediction if self.prediction else float("nan")


def pair_count(om1: StarDomain, om2: StarDomain, m: int, n: int) -> PairCount:
    return PairCount(m, n, count_pairs_fast(om1, om2, m, n), prediction(om1, om2, m, n))


# --- special points in girth coordinates ------------------------------------

def special_constant(m: int) -> float:
    """(2 zeta(2))^-1 sigma(|m|)/|m|."""
    return sigma(abs(m)) / abs(m) / (2.0 * ZETA2)


def _an_points(f: Frame, gmax: Fraction):
    """Nonzero integer vectors of An with girth <= gmax, as int arrays."""
    ac, cb, L = f.integer_form()
    w = (cb[0] - ac[0], cb[1] - ac[1])
    D = cross(ac, cb)
    R = gmax * D / L
    planes = [HalfPlane(cb[1], -cb[0], 0), HalfPlane(-ac[1], ac[0], 0),
              HalfPlane(-w[1], w[0], R)]
    verts = [(0, 0), (gmax * f.AC[0], gmax * f.AC[1]), (gmax * f.CB[0], gmax * f.CB[1])]
    xs, ys = raster_points(planes, *y_extent(verts))
    nz = (xs != 0) | (ys != 0)
    return xs[nz], ys[nz]


def _omega_int(om: StarDomain):
    out = []
    for (U, V), closed in zip(om.triangles, om.closed_first):
        M = lcm(*(Fraction(c).denominator for c in (*U, *V)))
        out.append(((int(U[0] * M), int(U[1] * M)), (int(V[0] * M), int(V[1] * M)), M, closed))
    return out


def special_point_count(f: Frame, m: int, N: int, om: StarDomain) -> PairCount:
    """Pairs x, y of nonzero integer vectors in An with x x y = m whose
    girth pair ([x], [y]) lies in N*om; prediction c(m) S N^2 S(om) with
    S(om) the doubled area of om."""
    if m == 0:
        raise ValueError("m must be nonzero")
    pred = special_constant(m) * float(f.S) * N * N * float(om.doubled_area())
    if not om.triangles:
        return PairCount(m, N, 0, pred)
    gmax = N * max(max(U[0], V[0]) for U, V in om.triangles)
    xs, ys = _an_points(f, Fraction(gmax))
    if xs.size == 0:
        return PairCount(m, N, 0, pred)
    ac, cb, L = f.integer_form()
    w = (cb[0] - ac[0], cb[1] - ac[1])
    D0 = cross(ac, cb)
    tris = _omega_int(om)
    mag = int(max(abs(xs).max(), abs(ys).max())) * (abs(m) + 1)
    coef = max(abs(c) for c in (*ac, *cb, *w)) + 1
    tb = max(max(abs(c) for c in (*U, *V)) * M for U, V, M, _ in tris) + 1
    dtype = _dtype_for(64 * mag * coef * coef * tb * L * D0 * N)
    xs, ys = xs.astype(dtype), ys.astype(dtype)
    keep, Y0x, Y0y, dx, dy = _solution_lines(xs, ys, m)
    gx = _cr(xs[keep], ys[keep], w[0], w[1])  # girth(x) * D0 / L
    gy0 = _cr(Y0x, Y0y, w[0], w[1])
    gyd = _cr(dx, dy, w[0], w[1])
    base = [
        (_cr(Y0x, Y0y, cb[0], cb[1]), _cr(dx, dy, cb[0], cb[1]), False),
        (_cr(ac[0], ac[1], Y0x, Y0y), _cr(ac[0], ac[1], dx, dy), False),
    ]
    total = 0
    for Ui, Vi, M, closed in tris:
        Wx, Wy = Vi[0] - Ui[0], Vi[1] - Ui[1]
        Dt = Ui[0] * Vi[1] - Ui[1] * Vi[0]
        zero = np.zeros_like(gx)
        cons = base + [
            (_cr(gx, gy0, Vi[0], Vi[1]), _cr(zero, gyd, Vi[0], Vi[1]), True),
            (_cr(Ui[0], Ui[1], gx, gy0), _cr(Ui[0], Ui[1], zero, gyd), not closed),
            (N * D0 * Dt - L * M * _cr(gx, gy0, Wx, Wy), -L * M * _cr(zero, gyd, Wx, Wy), False),
        ]
        total += int(np.sum(_count_k(cons, gx.shape[0], dtype)))
    return PairCount(m, N, total, pred)


def special_point_count_bruteforce(f: Frame, m: int, N: int, om: StarDomain) -> int:
    """Reference count by a double loop over An vectors (small N only)."""
    if not om.triangles:
        return 0
    gmax = N * max(max(U[0], V[0]) for U, V in om.triangles)
    xs, ys = _an_points(f, Fraction(gmax))
    vecs = list(zip(xs.tolist(), ys.tolist()))
    target = om.scaled(N)
    count = 0
    for x in vecs:
        gx = f.girth(x)
        for y in vecs:
            if cross(x, y) == m and target.contains((gx, f.girth(y))):
                count += 1
    return count


# --- triangle census ------------------------------------------------------

def triangle_census(f: Frame, n: int, m: int, M, t1, t2) -> int:
    """Translation classes of triangles PQR with PQ, QR integer vectors of
    An, [PR] <= M (n/S)^(1/3), r(PQR) in 2n/S * (t1, t2) and
    0 < S(PQR) <= m.  Both orientations are counted."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    M, t1, t2 = as_rational(M), as_rational(t1), as_rational(t2)
    if not 0 < t1 < t2:
        raise ValueError("need 0 < t1 < t2")
    cap3 = M ** 3 * n / f.S  # [PR]^3 <= cap3
    gcap = Fraction(float(cap3) ** (1.0 / 3.0)) * (1 + Fraction(1, 10 ** 9)) + Fraction(1, 10 ** 9)
    lo_r, hi_r = 2 * n * t1 / f.S, 2 * n * t2 / f.S
    ac, cb, L = f.integer_form()
    wv = (cb[0] - ac[0], cb[1] - ac[1])
    D0 = cross(ac, cb)
    xs, ys = _an_points(f, gcap)
    count = 0
    for ux, uy in zip(xs.tolist(), ys.tolist()):
        u = (ux, uy)
        gu = f.girth(u)
        if gu >= gcap:
            continue
        g = gcd(ux, uy)
        d = (ux // g, uy // g)
        for j in range(-m, m + 1):
            if j == 0 or j % g:
                continue
            # u x v = j
            a_, b_ = d
            jp = j // g
            p, q = _ext_gcd_vec(np.array([abs(a_)], dtype=object), np.array([abs(b_)], dtype=object))
            p = int(p[0]) * (1 if a_ >= 0 else -1)
            q = int(q[0]) * (1 if b_ >= 0 else -1)
            V0 = (-q * jp, p * jp)
            gmax_v = (gcap - gu) * D0 / L
            cons = [
                (cross(V0, cb), cross(d, cb), False),
                (cross(ac, V0), cross(ac, d), False),
                (gmax_v - cross(V0, wv), -cross(d, wv), False),
            ]
            kmin, kmax = _k_range_scalar(cons)
            for k in range(kmin, kmax + 1):
                v = (V0[0] + k * d[0], V0[1] + k * d[1])
                if v == (0, 0):
                    continue
                gv = f.girth(v)
                if (gu + gv) ** 3 > cap3:
                    continue
                r = gu * gv * (gu + gv) / (2 * abs(j))
                if lo_r < r < hi_r:
                    count += 1
    return count


def _k_range_scalar(cons):
    lo, hi = -_BIG, _BIG
    for alpha, beta, strict in cons:
        alpha, beta = Fraction(alpha), Fraction(beta)
        if beta > 0:
            lo = max(lo, ceil(-alpha / beta))
        elif beta < 0:
            hi = min(hi, floor(alpha / -beta))
        elif alpha < 0:
            return 0, -1
    return lo, hi
