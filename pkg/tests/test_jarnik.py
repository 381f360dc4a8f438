from fractions import Fraction
from itertools import combinations
from math import atan2

import pytest

from latcurve.errors import ConstructionError
from latcurve.exact import Frame, cross, sub
from latcurve.jarnik import (BrokenLine, build_chain, build_chain_vertices, chain_target,
                             lattice_points_inside, max_chain_vertices, max_vertex_bound,
                             min_area_convex_lattice_kgon, verify_abc_broken_line)


def _dfs_max(f, n):
    """Longest strictly convex lattice chain from A to B by plain recursion."""
    pts = lattice_points_inside(f, n)
    best = -1

    def rec(cur, prev_e, count, used):
        nonlocal best
        e = sub(f.B, cur)
        if e != (0, 0) and f.contains(e) and (prev_e is None or cross(prev_e, e) > 0):
            best = max(best, count)
        for p in pts:
            if p in used:
                continue
            e = sub(p, cur)
            if e != (0, 0) and f.contains(e) and (prev_e is None or cross(prev_e, e) > 0):
                rec(p, e, count + 1, used | {p})

    rec(f.A, None, 0, frozenset())
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_max_chain_matches_dfs(unit, n):
    assert max_chain_vertices(unit, n) == _dfs_max(unit, n)


def test_max_chain_other_frame():
    f = Frame.from_points((0, 0), (2, 3), (3, 1))
    for n in (1, 2, 3):
        assert max_chain_vertices(f, n) == _dfs_max(f, n)


def _kgon_bruteforce(k, side):
    pts = [(x, y) for x in range(side + 1) for y in range(side + 1)]
    best = None
    for sub_ in combinations(pts, k):
        cx = sum(p[0] for p in sub_) / k
        cy = sum(p[1] for p in sub_) / k
        poly = sorted(sub_, key=lambda p: atan2(p[1] - cy, p[0] - cx))
        turns = [cross(sub(poly[(i + 1) % k], poly[i]), sub(poly[(i + 2) % k], poly[(i + 1) % k]))
                 for i in range(k)]
        if all(t > 0 for t in turns):
            a = sum(cross(poly[i], poly[(i + 1) % k]) for i in range(k))
            best = a if best is None else min(best, a)
    return best


@pytest.mark.parametrize("k,side", [(3, 2), (4, 2), (5, 3), (6, 3)])
def test_min_kgon_matches_grid_bruteforce(k, side):
    assert min_area_convex_lattice_kgon(k) == _kgon_bruteforce(k, side)


def test_min_kgon_polygon_is_convex_lattice():
    area, poly = min_area_convex_lattice_kgon(7, return_polygon=True)
    k = len(poly)
    assert k == 7
    assert sum(cross(poly[i], poly[(i + 1) % k]) for i in range(k)) == area
    turns = [cross(sub(poly[(i + 1) % k], poly[i]), sub(poly[(i + 2) % k], poly[(i + 1) % k]))
             for i in range(k)]
    assert all(t > 0 for t in turns)


def test_build_chain_unit_frame(unit):
    for n, k in [(10 ** 3, 2), (10 ** 4, 5), (10 ** 5, 22)]:
        line = build_chain(unit, n)
        assert verify_abc_broken_line(line)
        assert line.k == k
        assert line.k >= chain_target(unit.S, n, Fraction(1, 100))


def test_build_chain_general_frame():
    f = Frame.from_points((0, 0), (3, 5), (7, 1))
    line = build_chain(f, 10 ** 4, Fraction(1, 20))
    assert verify_abc_broken_line(line)
    assert line.k <= max_vertex_bound(f.S, 10 ** 4)


def test_build_chain_rational_frame():
    f = Frame.from_points((Fraction(1, 3), 0), (Fraction(-1, 2), Fraction(9, 4)), (3, Fraction(1, 5)))
    line = build_chain_vertices(f, 500, 8)
    assert verify_abc_broken_line(line) and line.k == 8


def test_build_chain_too_small(unit):
    with pytest.raises(ConstructionError):
        build_chain(unit, 10)


def test_verify_reports_violations(unit):
    n = 10
    good = BrokenLine.from_points([(0, 0), (Fraction(3, 10), Fraction(1, 10)), (0, 1)], unit, n)
    assert verify_abc_broken_line(good)
    cases = [
        [(0, 0), (Fraction(1, 3), Fraction(1, 10)), (0, 1)],  # off the lattice
        [(0, 0), (Fraction(5, 10), Fraction(3, 10)), (Fraction(2, 10), Fraction(2, 10)), (0, 1)],  # backward edge
        [(0, 0), (Fraction(5, 10), Fraction(5, 10)), (0, 1)],  # on the side BC
        [(0, 0), (Fraction(2, 10), Fraction(1, 10)), (Fraction(4, 10), Fraction(2, 10)), (0, 1)],
    ]
    for pts in cases:
        v = verify_abc_broken_line(BrokenLine.from_points(pts, unit, n))
        assert not v and v.violation


def test_vertex_bound_formula():
    assert max_vertex_bound(1, 1) == 5
    assert max_vertex_bound(8, 1) == 10


def test_vertex_bound_branches():
    assert max_vertex_bound(Fraction(1, 1000), 1) == 3
    assert max_vertex_bound(1, 1000) == pytest.approx(500)


def test_verify_literal_violations(unit):
    collinear = [(0, 0), (Fraction(1, 10), Fraction(1, 10)), (Fraction(2, 10), Fraction(2, 10)),
                 (Fraction(3, 10), Fraction(3, 10)), (0, 1)]
    assert not verify_abc_broken_line(BrokenLine.from_points(collinear, unit, 10))
    thirds = [(0, 0), (Fraction(1, 3), Fraction(1, 3)), (0, 1)]
    assert not verify_abc_broken_line(BrokenLine.from_points(thirds, unit, 2))


def test_min_kgon_small_values():
    assert [min_area_convex_lattice_kgon(k) for k in (3, 4, 5)] == [1, 2, 5]
