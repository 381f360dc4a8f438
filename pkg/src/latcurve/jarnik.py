"""Convex lattice broken lines inside a frame triangle.

Builds the least-girth chain with many lattice vertices, checks the
vertex-count ceiling and computes minimal areas of convex lattice polygons
by exhaustive search.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import List, Optional, Sequence, Tuple

from .errors import ConstructionError
from .exact import (Frame, Vec, add, as_point, as_rational, cross, in_lattice,
                    strictly_inside, sub)
from .girth import enumerate_by_girth
from .raster import HalfPlane, rows, y_extent


@dataclass(frozen=True)
class BrokenLine:
    """Chain A = C_0, C_1, ..., C_k, C_{k+1} = B inside ``frame``."""

    vertices: Tuple[Tuple[Fraction, Fraction], ...]
    frame: Frame
    n: Optional[int] = None

    @classmethod
    def from_points(cls, points, frame, n=None):
        return cls(tuple(as_point(p) for p in points), frame, n)

    @property
    def k(self) -> int:
        """Number of intermediate vertices."""
        return len(self.vertices) - 2

    @property
    def intermediate(self):
        return self.vertices[1:-1]

    def edges(self) -> List[Vec]:
        v = self.vertices
        return [sub(v[i + 1], v[i]) for i in range(len(v) - 1)]


@dataclass(frozen=True)
class Verification:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_abc_broken_line(line: BrokenLine) -> Verification:
    """Check endpoints, containment, edge directions, strict convexity and
    lattice membership; report the first violation."""
    f, v = line.frame, line.vertices
    if len(v) < 2:
        return Verification(False, "fewer than two vertices")
    if v[0] != f.A or v[-1] != f.B:
        return Verification(False, "endpoints differ from A and B")
    for i, p in enumerate(v[1:-1], 1):
        if not strictly_inside(f, p):
            return Verification(False, f"vertex {i} not strictly inside ABC")
    edges = line.edges()
    for i, e in enumerate(edges):
        if e == (0, 0) or not f.contains(e):
            return Verification(False, f"edge {i} not in the frame angle")
    for i in range(len(edges) - 1):
        if cross(edges[i], edges[i + 1]) <= 0:
            return Verification(False, f"convexity fails at vertex {i + 1}")
    if line.n is not None:
        for i, p in enumerate(v[1:-1], 1):
            if not in_lattice(p, line.n):
                return Verification(False, f"vertex {i} not on L_{line.n}")
    return Verification(True)


def max_vertex_bound(S, n: int) -> float:
    """Ceiling max(3, 5*(S n^2)^(1/3)) on the intermediate vertex count."""
    S = float(as_rational(S))
    if S <= 0:
        raise ValueError("S must be positive")
    return max(3.0, 5.0 * (S * n * n) ** (1.0 / 3.0))


def icbrt_floor(x: Fraction) -> int:
    """Largest integer m >= 0 with m**3 <= x."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    m = int(round(float(x) ** (1.0 / 3.0))) if x < 2 ** 1000 else 0
    m = max(m, 0)
    while m ** 3 > x:
        m -= 1
    while (m + 1) ** 3 <= x:
        m += 1
    return m


def chain_target(S, n: int, c) -> int:
    """floor(c * (S n^2)^(1/3)) evaluated exactly."""
    c = as_rational(c)
    return icbrt_floor(c ** 3 * as_rational(S) * n * n)


def _edge_angle(f: Frame, e: Vec) -> Fraction:
    t1, t2 = f.coords(e)
    return t2 / (t1 + t2)


def clip(poly, a: Vec, b) -> list:
    """Clip a convex polygon to the half-plane cross(a, X) >= b."""
    out = []
    for i, P in enumerate(poly):
        Q = poly[(i + 1) % len(poly)]
        fp, fq = cross(a, P) - b, cross(a, Q) - b
        if fp >= 0:
            out.append(P)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = Fraction(fp) / (fp - fq)
            out.append((P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])))
    return out


def _anchor_center(f: Frame, edges: Sequence[Vec]) -> Vec:
    """Vertex centroid of the region of admissible first vertices."""
    AB = sub(f.B, f.A)
    if edges:
        e1, em = edges[0], edges[-1]
    else:
        e1 = em = AB
    total = (sum(e[0] for e in edges), sum(e[1] for e in edges))
    T = sub(AB, total)
    # d1 = P0 - A: inside ABC, after AC and before e1; d2 = T - d1 after em
    # and before CB
    region = [(Fraction(0), Fraction(0)), f.AC, AB]
    region = clip(region, f.AC, 0)
    region = clip(region, (-e1[0], -e1[1]), 0)
    region = clip(region, (-em[0], -em[1]), -cross(em, T))
    region = clip(region, f.CB, cross(f.CB, T))
    if len(region) < 3:
        raise ConstructionError("edge vectors do not fit inside the frame")
    cx = sum(p[0] for p in region) / len(region)
    cy = sum(p[1] for p in region) / len(region)
    return (f.A[0] + cx, f.A[1] + cy)


def _chain_from(anchor: Vec, edges: Sequence[Vec]) -> List[Vec]:
    pts = [anchor]
    for e in edges:
        pts.append(add(pts[-1], e))
    return pts


def build_chain_vertices(f: Frame, n: int, count: int, window: int = 10) -> BrokenLine:
    """(AB,C;n)-broken line with exactly ``count`` intermediate vertices.

    Uses the ``count - 1`` least-girth primitive vectors interior to the
    frame angle as edges, sorted by angle, and tries lattice anchors near
    the centre of the admissible region, nearest first.
    """
    if count < 1:
        raise ValueError("count must be positive")
    vecs = enumerate_by_girth(f, count - 1, primitive=True, open_cone=True) if count > 1 else []
    vecs.sort(key=lambda e: _edge_angle(f, e))
    edges = [(Fraction(x, n), Fraction(y, n)) for x, y in vecs]
    center = _anchor_center(f, edges)
    base = (round(center[0] * n), round(center[1] * n))
    offsets = sorted(product(range(-window, window + 1), repeat=2),
                     key=lambda z: (_l1_frame_norm(f, z), z))
    for dz in offsets:
        anchor = (Fraction(base[0] + dz[0], n), Fraction(base[1] + dz[1], n))
        line = BrokenLine((f.A, *_chain_from(anchor, edges), f.B), f, n)
        if verify_abc_broken_line(line):
            return line
    raise ConstructionError(
        f"no anchor within {window}/{n} of the centre gives a valid broken line")


def _l1_frame_norm(f: Frame, z) -> Fraction:
    t1, t2 = f.coords(z)
    return abs(t1) + abs(t2)


def build_chain(f: Frame, n: int, c=Fraction(1, 100)) -> BrokenLine:
    """Least-girth (AB,C;n)-broken line with at least floor(c (S n^2)^(1/3))
    intermediate vertices (the chosen edge vectors plus the anchor)."""
    m = chain_target(f.S, n, c)
    if m < 1:
        raise ConstructionError(
            f"floor(c (S n^2)^(1/3)) = 0 for n={n}; increase n or c")
    return build_chain_vertices(f, n, m + 1)


def lattice_points_inside(f: Frame, n: int) -> List[Vec]:
    """Points of (Z/n)^2 in the open triangle ABC."""
    A, B, C = ((p[0] * n, p[1] * n) for p in (f.A, f.B, f.C))
    planes = []
    for P, Q in ((A, C), (C, B), (B, A)):
        # cross(Q - P, X - P) > 0
        dx, dy = Q[0] - P[0], Q[1] - P[1]
        planes.append(HalfPlane(-dy, dx, dy * P[0] - dx * P[1], strict=True))
    ylo, yhi = y_extent((A, B, C))
    return [(Fraction(x, n), Fraction(y, n))
            for y, lo, hi in rows(planes, ylo, yhi) for x in range(lo, hi + 1)]


def max_chain_vertices(f: Frame, n: int) -> int:
    """Largest intermediate-vertex count of any (AB,C;n)-broken line.

    Dynamic programming over all candidate edges taken in strictly
    increasing angle, which is exactly the strict convexity condition.
    """
    pts = lattice_points_inside(f, n)
    nodes = [f.A, *pts, f.B]
    a, b = 0, len(nodes) - 1
    edges = []
    for i in range(b):
        for j in range(1, b + 1):
            if i == j:
                continue
            e = sub(nodes[j], nodes[i])
            if f.contains(e):
                edges.append((_edge_angle(f, e), i, j))
    edges.sort()
    best = {a: 0}
    idx = 0
    while idx < len(edges):
        ang = edges[idx][0]
        group = []
        while idx < len(edges) and edges[idx][0] == ang:
            group.append(edges[idx])
            idx += 1
        updates = {}
        for _, i, j in group:
            if i in best:
                val = best[i] + 1
                if val > updates.get(j, -1):
                    updates[j] = val
        for j, val in updates.items():
            if val > best.get(j, -1):
                best[j] = val
    if b not in best:
        return -1
    return best[b] - 1


# --- minimal convex lattice polygons -------------------------------------

def _hull(pts):
    pts = sorted(set(pts))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(sub(out[-1], out[-2]), sub(p, out[-1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def polygon_doubled_area(poly) -> int:
    return abs(sum(cross(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))))


def _upper_bound_kgon(k: int):
    r = 1
    while True:
        disk = [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)
                if x * x + y * y <= r * r]
        hull = _hull(disk)
        if len(hull) >= k:
            runs = [[hull[(s + i) % len(hull)] for i in range(k)] for s in range(len(hull))]
            best = min(runs, key=polygon_doubled_area)
            return polygon_doubled_area(best), best
        r += 1


def _search_strip(k: int, w: int, X: int, best: int, best_poly):
    # lowest-leftmost vertex sits at the origin
    cand = [(x, y) for y in range(0, w + 1) for x in range(-X, X + 1)
            if y > 0 or x > 0]
    found = [best, best_poly]

    def dfs(path, area):
        j = len(path)
        last = path[-1]
        if j == k:
            prev = path[-2]
            if (cross(sub(last, prev), sub((0, 0), last)) > 0
                    and cross(sub((0, 0), last), path[1]) > 0
                    and area < found[0]):
                found[0], found[1] = area, list(path)
            return
        remaining = k - 1 - j  # fan triangles still to add after this one
        budget = found[0] - 1 - area - remaining
        if budget < 1:
            return
        prev = path[-2]
        for q in cand:
            a = cross(last, q)
            if a <= 0 or a > budget:
                continue
            if cross(sub(last, prev), sub(q, last)) <= 0:
                continue
            path.append(q)
            dfs(path, area + a)
            path.pop()

    for v1 in cand:
        dfs([(0, 0), v1], 0)
    return found[0], found[1]


def min_area_convex_lattice_kgon(k: int, return_polygon=False):
    """Minimal doubled area of a convex lattice polygon with k vertices.

    Exhaustive branch and bound.  Up to unimodular maps and translation a
    polygon of doubled area D and lattice width w lies in the strip
    0 <= y <= w with a bottom vertex at the origin and every vertex within
    |x| <= D/w + w/2; w itself satisfies 3 w^2 <= 4 D and w >= k/2 - 1.
    """
    if not 3 <= k <= 10:
        raise ValueError("k must be in 3..10")
    best, poly = _upper_bound_kgon(k)
    w = max(1, ceil(k / 2) - 1)
    while 3 * w * w <= 4 * best:
        X = floor(Fraction(best, w) + Fraction(w, 2))
        best, poly = _search_strip(k, w, X, best, poly)
        w += 1
    area = Fraction(best)
    return (area, poly) if return_polygon else area
