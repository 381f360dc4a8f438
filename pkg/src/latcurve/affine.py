"""Generalized affine length of broken lines and the triangle inequalities
behind it.

Areas are exact; cube roots and the optimisation over circumscribed lines
run in double precision.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import CircumscriptionError, ConfigurationError
from .exact import (Frame, Vec, abc_radius, as_point, cross, doubled_area,
                    segment_girth, sub)
from .jarnik import BrokenLine, build_chain

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _vertices(line) -> List[Tuple[Fraction, Fraction]]:
    if isinstance(line, BrokenLine):
        return list(line.vertices)
    return [as_point(p) for p in line]


def _on_segment(X: Vec, P: Vec, Q: Vec) -> bool:
    if cross(sub(Q, P), sub(X, P)) != 0:
        return False
    d = sub(Q, P)
    t = (X[0] - P[0]) * d[0] + (X[1] - P[1]) * d[1]
    return 0 <= t <= d[0] * d[0] + d[1] * d[1]


class RelativeLength(NamedTuple):
    value: float
    areas: List[Fraction]


def affine_length_rel(gamma, gamma1) -> RelativeLength:
    """Sum of cube roots of S(C_i D_{i+1} C_{i+1}) for gamma inscribed in gamma1."""
    C, D = _vertices(gamma), _vertices(gamma1)
    if len(D) != len(C) + 1:
        raise CircumscriptionError("gamma1 must have exactly one more vertex than gamma")
    if C[0] != D[0] or C[-1] != D[-1]:
        raise CircumscriptionError("gamma and gamma1 must share endpoints")
    for i in range(1, len(C) - 1):
        if not _on_segment(C[i], D[i], D[i + 1]):
            raise CircumscriptionError(f"vertex {i} is not on segment D_{i}D_{i + 1}")
    areas = [abs(doubled_area(C[i], D[i + 1], C[i + 1])) for i in range(len(C) - 1)]
    value = float(sum(np.cbrt(float(a)) for a in areas))
    return RelativeLength(value, areas)


# --- supremum over circumscribed lines ----------------------------------

def _unit(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


class _Problem:
    """Edges e_0..e_k of the chain, support directions u_0..u_{k+1}.

    u_0 = AC and u_{k+1} = CB are fixed; u_i for 1 <= i <= k is the
    interpolation (1 - theta) e_{i-1}/|e_{i-1}| + theta e_i/|e_i|.
    Term i is the doubled area cut off between C_i, C_{i+1} and the
    intersection of the support lines there.
    """

    def __init__(self, line: BrokenLine):
        edges = line.edges()
        self.e = np.array([[float(x), float(y)] for x, y in edges])
        self.eh = _unit(self.e)
        f = line.frame
        self.u0 = _unit(np.array([float(f.AC[0]), float(f.AC[1])]))
        self.uk = _unit(np.array([float(f.CB[0]), float(f.CB[1])]))
        self.k = len(edges) - 1

    def directions(self, theta):
        t = theta[:, None]
        mid = (1.0 - t) * self.eh[:-1] + t * self.eh[1:]
        return np.vstack([self.u0, mid, self.uk])

    def terms(self, u):
        a = _cross(u[:-1], self.e)
        b = _cross(self.e, u[1:])
        c = _cross(u[:-1], u[1:])
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(c > 0, a * b / c, 0.0)
        return np.maximum(t, 0.0)

    def value(self, theta) -> float:
        return float(np.sum(np.cbrt(self.terms(self.directions(theta)))))

    def local(self, idx, th, theta):
        """Objective restricted to coordinates ``idx`` (0-based vertex index
        minus one) set to ``th``; only the two adjacent terms are summed."""
        full = theta.copy()
        full[idx] = th
        u = self.directions(full)
        T = np.cbrt(self.terms(u))
        # vertex idx+1 touches terms idx and idx+1
        return T[idx] + T[idx + 1]

    def circumscribed(self, theta, line: BrokenLine) -> np.ndarray:
        """Vertices A, D_1, ..., D_{k+1}, B of the circumscribed line."""
        u = self.directions(theta)
        C = np.array([[float(x), float(y)] for x, y in line.vertices])
        D = []
        for i in range(self.k + 1):
            s = _cross(self.e[i], u[i + 1]) / _cross(u[i], u[i + 1])
            D.append(C[i] + s * u[i])
        return np.vstack([C[0], np.array(D), C[-1]])


def _golden_block(prob: _Problem, idx, theta, gtol):
    lo = np.zeros(len(idx))
    hi = np.ones(len(idx))
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = prob.local(idx, x1, theta)
    f2 = prob.local(idx, x2, theta)
    while np.max(hi - lo) > gtol:
        left = f1 < f2  # maximum lies in [x1, hi]
        lo = np.where(left, x1, lo)
        hi = np.where(left, hi, x2)
        nx1 = np.where(left, x2, hi - GOLDEN * (hi - lo))
        nx2 = np.where(left, lo + GOLDEN * (hi - lo), x1)
        nf = prob.local(idx, np.where(left, nx2, nx1), theta)
        f1, f2 = np.where(left, f2, nf), np.where(left, nf, f1)
        x1, x2 = nx1, nx2
    return 0.5 * (lo + hi)


def _ascend(prob: _Problem, theta, tol, gtol, max_sweeps):
    history = [prob.value(theta)]
    blocks = [np.arange(0, prob.k, 2), np.arange(1, prob.k, 2)]
    for _ in range(max_sweeps):
        for idx in blocks:
            if len(idx) == 0:
                continue
            cand = _golden_block(prob, idx, theta, gtol)
            old = prob.local(idx, theta[idx], theta)
            new = prob.local(idx, cand, theta)
            better = new > old
            theta[idx] = np.where(better, cand, theta[idx])
        history.append(prob.value(theta))
        if history[-1] - history[-2] < tol:
            break
    return theta, history


@dataclass
class SupResult:
    value: float
    theta: np.ndarray
    history: List[float]
    starts: List[float] = field(default_factory=list)
    gamma1: Optional[np.ndarray] = None

    @property
    def spread(self) -> float:
        return max(self.starts) - min(self.starts) if self.starts else 0.0


def default_seed() -> int:
    return int(os.environ.get("LCL_SEED", "0"))


def affine_length_sup(line: BrokenLine, tol: float = 1e-10, *, multistarts: int = 8,
                      seed: Optional[int] = None, gtol: float = 1e-10,
                      max_sweeps: int = 10_000, threads: Optional[int] = None) -> SupResult:
    """Approximate the generalized affine length of ``line``.

    One support-line direction per intermediate vertex is optimised by
    coordinate ascent (red-black blocks, golden-section line search) from
    ``multistarts`` random starts; the best start wins.  Sweeps stop once
    an entire sweep improves the value by less than ``tol``.
    """
    f = line.frame
    if line.k == 0:
        s = float(np.cbrt(float(f.S)))
        return SupResult(s, np.empty(0), [s], [s])
    prob = _Problem(line)
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    inits = [rng.uniform(0.05, 0.95, prob.k) for _ in range(multistarts)]

    def run(th):
        return _ascend(prob, th.copy(), tol, gtol, max_sweeps)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run, inits))
    else:
        results = [run(th) for th in inits]
    values = [h[-1] for _, h in results]
    best = int(np.argmax(values))
    theta, hist = results[best]
    return SupResult(values[best], theta, hist, values, prob.circumscribed(theta, line))


# --- triangle split and quadrilateral identities --------------------------

def _open_segment(X: Vec, P: Vec, Q: Vec) -> bool:
    return _on_segment(X, P, Q) and X != P and X != Q


@dataclass(frozen=True)
class SplitQuantities:
    err: float
    ratio_ap_pq: Fraction
    normalized_radius: Fraction
    distortion: Tuple[Fraction, Fraction]


def lemma1_quantities(f: Frame, P, R, Q) -> SplitQuantities:
    """P on side AC, R on side BC, Q on PR, all in the open segments.

    ``err`` is 1 - (S(APQ)/S)^(1/3) - (S(BQR)/S)^(1/3).  ``distortion`` is
    the range of [x] * (AC/AP) / [x]_APQ over the two edge directions of
    the angle of APQ; it equals (1, 1) in the equality case.
    """
    P, R, Q = as_point(P), as_point(R), as_point(Q)
    A, B, C = f.A, f.B, f.C
    if not (_open_segment(P, A, C) and _open_segment(R, B, C) and _open_segment(Q, P, R)):
        raise ConfigurationError("need P in AC, R in BC and Q in PR (open segments)")
    s1 = abs(doubled_area(A, P, Q)) / f.S
    s2 = abs(doubled_area(B, Q, R)) / f.S
    err = 1.0 - float(np.cbrt(float(s1))) - float(np.cbrt(float(s2)))
    ap, pq = segment_girth(f, A, P), segment_girth(f, P, Q)
    radius = f.S * abc_radius(f, A, Q, P)
    g = Frame.from_points(A, Q, P)
    vals = []
    for x in (sub(P, A), sub(Q, P)):
        vals.append(f.girth(x) / (g.girth(x) * ap))
    return SplitQuantities(err, ap / pq, radius, (min(vals), max(vals)))


def cube_root_identity_check(x: float, y: float, z: float) -> float:
    """|2(x+y+z) - 6 (xyz)^(1/3) - (a+b+c)((a-b)^2+(b-c)^2+(c-a)^2)|
    with a, b, c the cube roots of x, y, z."""
    if min(x, y, z) <= 0:
        raise ValueError("arguments must be positive")
    a, b, c = np.cbrt([x, y, z])
    lhs = 2.0 * (x + y + z) - 6.0 * float(np.cbrt(x * y * z))
    rhs = (a + b + c) * ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2)
    return abs(lhs - float(rhs))


def _check_quadrilateral(f: Frame, P, S, T, R, Q):
    P, S, T, R, Q = (as_point(p) for p in (P, S, T, R, Q))
    for e in (sub(S, P), sub(T, S), sub(R, T)):
        if e == (0, 0) or not f.contains(e):
            raise ConfigurationError("PS, ST and TR must be nonzero vectors of the frame angle")
    quad = [P, S, T, R]
    turns = [cross(sub(quad[(i + 1) % 4], quad[i]), sub(quad[(i + 2) % 4], quad[(i + 1) % 4]))
             for i in range(4)]
    if not (all(t > 0 for t in turns) or all(t < 0 for t in turns)):
        raise ConfigurationError("PSTR is not strictly convex")
    if not _open_segment(Q, S, T):
        raise ConfigurationError("Q must lie strictly between S and T")
    return P, S, T, R, Q


def gauss_line_identity(P, S, T, R, Q, f: Frame) -> Fraction:
    """S(PQR) - [QR]/[SQ] S(PQS) - [PQ]/[QT] S(RQT), exactly."""
    P, S, T, R, Q = _check_quadrilateral(f, P, S, T, R, Q)
    area = lambda X, Y, Z: abs(Fraction(doubled_area(X, Y, Z)))
    g = lambda X, Y: segment_girth(f, X, Y)
    return (area(P, Q, R) - g(Q, R) / g(S, Q) * area(P, Q, S)
            - g(P, Q) / g(Q, T) * area(R, Q, T))


def radius_interpolation_values(P, S, T, R, Q, f: Frame):
    """(u, v, r) with r = r(PQR), u = [PQ]/[PS] r(PQS), v = [QR]/[RT] r(QTR)."""
    P, S, T, R, Q = _check_quadrilateral(f, P, S, T, R, Q)
    g = lambda X, Y: segment_girth(f, X, Y)
    u = g(P, Q) / g(P, S) * abc_radius(f, P, Q, S)
    v = g(Q, R) / g(R, T) * abc_radius(f, Q, T, R)
    return u, v, abc_radius(f, P, Q, R)


def radius_interpolation_check(P, S, T, R, Q, f: Frame) -> bool:
    u, v, r = radius_interpolation_values(P, S, T, R, Q, f)
    return min(u, v) <= r <= max(u, v)


@dataclass(frozen=True)
class DeficitProbe:
    n: int
    k: int
    l_a: float
    deficit: float


def affine_deficit_probe(f: Frame, n: int, c=Fraction(1, 100), tol: float = 1e-10,
                         **kw) -> DeficitProbe:
    """Build the least-girth chain and report S^(1/3) minus its affine length."""
    line = build_chain(f, n, c)
    res = affine_length_sup(line, tol, **kw)
    s = float(np.cbrt(float(f.S)))
    return DeficitProbe(n, line.k, res.value, s - res.value)
