"""Convex curves carrying many points of prescribed scaled lattices.

The curve is a chain of stages.  Stage i lives in a rational tangent
triangle A_i B_i A_{i+1} of an arc of the unit circle (scaled by an integer
homothety) and carries a least-girth broken line with at least
c_i q_i^(2/3) vertices on (Z/q_i)^2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import ceil, isqrt, pi, tan
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from .errors import ConstructionError, DegenerateError, SearchExhausted
from .exact import Frame, Vec, as_point, as_rational, cross, in_lattice, segment_lattice_count, sub
from .jarnik import BrokenLine, build_chain_vertices

SCHEMA_VERSION = 1
AREA_FACTOR = 100
TURNING_BUDGET = pi / 2


# --- tangent triangles ------------------------------------------------------

def _circle_point(phi: float, max_den: int) -> Vec:
    """Exact rational point of the unit circle near angle phi."""
    t = Fraction(tan(phi / 2)).limit_denominator(max_den)
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _tangent_meet(P: Vec, Q: Vec) -> Vec:
    """Intersection of the unit-circle tangents X.P = 1 and X.Q = 1."""
    det = cross(P, Q)
    return ((Q[1] - P[1]) / det, (P[0] - Q[0]) / det)


def tangent_decomposition(c_prefix: Sequence, max_den: int = 1000) -> List[Frame]:
    """Tangent triangles A_i B_i A_{i+1} along a circular arc.

    Turning angles are proportional to c_i with total pi/2; the tangency
    points are rational points of the circle, so every vertex is exact.
    One integer homothety makes each doubled area at least 100 c_i^3.
    """
    cs = [as_rational(c) for c in c_prefix]
    if not cs:
        raise ValueError("empty series prefix")
    if any(c <= 0 for c in cs):
        raise DegenerateError("series terms must be positive")
    total = float(sum(cs))
    phis, acc = [0.0], 0.0
    for c in cs:
        acc += TURNING_BUDGET * float(c) / total
        phis.append(acc)
    pts = [_circle_point(phi, max_den) for phi in phis]
    for P, Q in zip(pts, pts[1:]):
        if cross(P, Q) <= 0:
            raise DegenerateError("tangency points collapsed; increase max_den")
    frames = [Frame.from_points(P, Q, _tangent_meet(P, Q)) for P, Q in zip(pts, pts[1:])]
    need = max(AREA_FACTOR * c ** 3 / f.S for f, c in zip(frames, cs))
    lam = max(1, isqrt(ceil(need)))
    while lam * lam < need:
        lam += 1
    if lam > 1:
        frames = [Frame.from_points(*((lam * p[0], lam * p[1]) for p in (f.A, f.B, f.C)))
                  for f in frames]
    return frames


# --- curve ------------------------------------------------------------------

@dataclass(frozen=True)
class Stage:
    frame: Frame
    chain: BrokenLine
    q: int
    c: Fraction
    certified_count: int

    def certificate_holds(self) -> bool:
        """certified_count >= c q^(2/3), compared exactly as cubes."""
        return self.certified_count ** 3 >= self.c ** 3 * self.q ** 2


@dataclass(frozen=True)
class Curve:
    stages: Tuple[Stage, ...]
    series: Tuple[Fraction, ...] = field(default=())

    @property
    def global_vertices(self) -> List[Vec]:
        out: List[Vec] = []
        for st in self.stages:
            vs = list(st.chain.vertices)
            out.extend(vs if not out else vs[1:])
        return out

    def is_convex(self) -> bool:
        v = self.global_vertices
        turns = [cross(sub(v[i + 1], v[i]), sub(v[i + 2], v[i + 1])) for i in range(len(v) - 2)]
        return all(t > 0 for t in turns) or all(t < 0 for t in turns)


Admissible = Union[Callable[[int], bool], Iterable[int], None]


def _candidates(admissible: Admissible, start: int):
    """Yield (q, admissible?) for the integers examined, in increasing order."""
    if admissible is None or callable(admissible):
        q = start
        while True:
            yield q, admissible is None or bool(admissible(q))
            q += 1
    else:
        for q in sorted(set(admissible)):
            if q >= start:
                yield q, True


def required_count(c: Fraction, q: int) -> int:
    """Least integer K with K^3 >= c^3 q^2."""
    target = c ** 3 * q ** 2
    K = max(1, int(float(c) * q ** (2 / 3)))
    while K ** 3 < target:
        K += 1
    while K > 1 and (K - 1) ** 3 >= target:
        K -= 1
    return K


def synthesize(series: Sequence, admissible: Admissible = None, stages: int = 3,
               max_attempts: int = 10_000, q_min: int = 1) -> Curve:
    """Stage by stage, the least admissible q_i > q_{i-1} for which a
    verified broken line on (Z/q_i)^2 in triangle i has at least
    c_i q_i^(2/3) intermediate vertices."""
    if stages < 1:
        raise ValueError("stages must be positive")
    if len(series) < stages:
        raise ValueError("series prefix shorter than the number of stages")
    cs = [as_rational(c) for c in series[:stages]]
    frames = tangent_decomposition(cs)
    out, q_prev = [], q_min - 1
    for i, (f, c) in enumerate(zip(frames, cs), start=1):
        tried, first, last = 0, None, None
        for q, ok in _candidates(admissible, q_prev + 1):
            if tried >= max_attempts:
                break
            tried += 1
            first = q if first is None else first
            last = q
            if not ok:
                continue
            K = required_count(c, q)
            try:
                chain = build_chain_vertices(f, q, K)
            except ConstructionError:
                continue
            st = Stage(f, chain, q, c, chain.k)
            if st.certificate_holds():
                out.append(st)
                q_prev = q
                break
        if len(out) < i and tried == 0:
            raise SearchExhausted(f"stage {i}: the admissible set has no value above {q_prev}",
                                  attempted=(None, None))
        if len(out) < i:
            raise SearchExhausted(
                f"stage {i}: no admissible q gave a certified chain "
                f"(tried {tried} values in [{first}, {last}])", attempted=(first, last))
    return Curve(tuple(out), tuple(cs))


def count_on_polyline(vertices: Sequence, n: int) -> int:
    """Points of (Z/n)^2 on a polyline, shared vertices counted once."""
    vs = [as_point(v) for v in vertices]
    if len(vs) < 2:
        raise ValueError("need at least two vertices")
    total = sum(segment_lattice_count(P, Q, n) for P, Q in zip(vs, vs[1:]))
    return total - sum(1 for v in vs[1:-1] if in_lattice(v, n))


def count_on_curve(curve: Curve, n: int) -> int:
    """k(curve, n): exact number of (Z/n)^2 points on the curve."""
    return count_on_polyline(curve.global_vertices, n)


# --- JSON -------------------------------------------------------------------

def _rat(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _unrat(d) -> Fraction:
    return Fraction(d["num"], d["den"])


def _pt(p) -> list:
    return [_rat(p[0]), _rat(p[1])]


def _unpt(p) -> Vec:
    return (_unrat(p[0]), _unrat(p[1]))


def to_json(curve: Curve) -> dict:
    return {
        "schema": "latcurve/curve",
        "version": SCHEMA_VERSION,
        "series": [_rat(c) for c in curve.series],
        "stages": [{
            "frame": {"A": _pt(st.frame.A), "B": _pt(st.frame.B), "C": _pt(st.frame.C)},
            "q": st.q,
            "c": _rat(st.c),
            "certified_count": st.certified_count,
            "vertices": [_pt(v) for v in st.chain.vertices],
        } for st in curve.stages],
        "global_vertices": [_pt(v) for v in curve.global_vertices],
    }


def from_json(data: dict) -> Curve:
    if data.get("schema") != "latcurve/curve" or data.get("version") != SCHEMA_VERSION:
        raise ValueError("not a version 1 latcurve curve document")
    stages = []
    for s in data["stages"]:
        fr = s["frame"]
        f = Frame.from_points(_unpt(fr["A"]), _unpt(fr["B"]), _unpt(fr["C"]))
        chain = BrokenLine(tuple(_unpt(v) for v in s["vertices"]), f, s["q"])
        stages.append(Stage(f, chain, s["q"], _unrat(s["c"]), s["certified_count"]))
    return Curve(tuple(stages), tuple(_unrat(c) for c in data["series"]))


def load_schema(name: str) -> dict:
    """A shipped JSON schema, e.g. ``curve.v1.json``."""
    return json.loads(resources.files("latcurve.schemas").joinpath(name).read_text())
