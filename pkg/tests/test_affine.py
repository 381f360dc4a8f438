import random
from fractions import Fraction

import pytest

from latcurve.affine import (affine_deficit_probe, affine_length_rel, affine_length_sup,
                             cube_root_identity_check, gauss_line_identity, lemma1_quantities,
                             radius_interpolation_check, radius_interpolation_values)
from latcurve.errors import CircumscriptionError, ConfigurationError
from latcurve.exact import Frame, cross
from latcurve.jarnik import BrokenLine, build_chain

from conftest import random_frame

H = Fraction(1, 2)


def lerp(P, Q, t):
    return (P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1]))


def random_side_split(rng, f):
    a, b, c = (Fraction(rng.randint(1, 999), 1000) for _ in range(3))
    P = lerp(f.A, f.C, a)
    R = lerp(f.B, f.C, b)
    return P, R, lerp(P, R, c)


def random_quadrilateral(rng, f):
    """P, S, T, R with PS, ST, TR in the frame angle in convex order, Q on ST."""
    while True:
        es = []
        for _ in range(3):
            t1, t2 = Fraction(rng.randint(1, 40), rng.randint(1, 9)), Fraction(rng.randint(1, 40), rng.randint(1, 9))
            es.append((t1 * f.AC[0] + t2 * f.CB[0], t1 * f.AC[1] + t2 * f.CB[1]))
        es.sort(key=lambda e: f.coords(e)[1] / f.girth(e))
        if cross(es[0], es[1]) != 0 and cross(es[1], es[2]) != 0:
            break
    P = (Fraction(rng.randint(-99, 99), rng.randint(1, 9)), Fraction(rng.randint(-99, 99), rng.randint(1, 9)))
    S = (P[0] + es[0][0], P[1] + es[0][1])
    T = (S[0] + es[1][0], S[1] + es[1][1])
    R = (T[0] + es[2][0], T[1] + es[2][1])
    return P, S, T, R, lerp(S, T, Fraction(rng.randint(1, 99), 100))


def test_side_split_midpoints(unit):
    P, R = (H, 0), (H, H)
    q = lemma1_quantities(unit, P, R, lerp(P, R, H))
    assert q.err == 0
    assert q.ratio_ap_pq == 1
    assert q.normalized_radius == 1
    assert q.distortion == (1, 1)


def test_side_split_cube_roots_subadditive():
    rng = random.Random(11)
    for _ in range(2000):
        f = random_frame(rng)
        assert lemma1_quantities(f, *random_side_split(rng, f)).err >= -1e-12


def test_side_split_rejects_bad_points(unit):
    with pytest.raises(ConfigurationError):
        lemma1_quantities(unit, (0, 0), (H, H), (Fraction(1, 4), Fraction(1, 4)))


@pytest.mark.parametrize("xyz", [(1, 1, 1), (1, 8, 27), (1e-6, 1, 1), (0.2, 3.0, 7.5)])
def test_cube_root_identity(xyz):
    assert cube_root_identity_check(*xyz) <= 1e-10 * sum(xyz)


def test_gauss_and_radius_random():
    rng = random.Random(3)
    for _ in range(500):
        f = random_frame(rng)
        cfg = random_quadrilateral(rng, f)
        assert gauss_line_identity(*cfg, f) == 0
        assert radius_interpolation_check(*cfg, f)


def test_radius_interpolation_trapezoid_equality(unit):
    # edges AC, AC+CB, CB: symmetric under swapping the frame sides
    P, S, T, R = (0, 0), (1, 0), (1, 1), (0, 2)
    u, v, r = radius_interpolation_values(P, S, T, R, lerp(S, T, H), unit)
    assert u == v == r == 4


def test_gauss_rejects_nonconvex(unit):
    with pytest.raises(ConfigurationError):
        gauss_line_identity((0, 0), (2, 0), (4, 0), (3, 1), (3, 0), unit)


def test_relative_length_midpoint(unit):
    P, R = (H, 0), (H, H)
    Q = lerp(P, R, H)
    res = affine_length_rel([unit.A, Q, unit.B], [unit.A, P, R, unit.B])
    assert res.value == pytest.approx(1.0, abs=1e-12)
    assert res.areas == [Fraction(1, 8), Fraction(1, 8)]


def test_relative_length_rejects_non_circumscribed(unit):
    with pytest.raises(CircumscriptionError):
        affine_length_rel([unit.A, (Fraction(1, 4), Fraction(1, 4)), unit.B],
                          [unit.A, (H, 0), (H, H), unit.B])


def test_sup_dominates_every_circumscribed_line():
    rng = random.Random(8)
    for _ in range(25):
        f = random_frame(rng, span=8)
        P, R, Q = random_side_split(rng, f)
        rel = affine_length_rel([f.A, Q, f.B], [f.A, P, R, f.B]).value
        sup = affine_length_sup(BrokenLine.from_points([f.A, Q, f.B], f), multistarts=4).value
        assert rel <= sup + 1e-9
        assert sup <= float(f.S) ** (1 / 3) + 1e-9


def test_sup_midpoint_equality(unit):
    Q = (H, Fraction(1, 4))
    res = affine_length_sup(BrokenLine.from_points([unit.A, Q, unit.B], unit))
    assert abs(res.value - 1.0) < 1e-9


def test_sup_deterministic_under_seed(unit):
    line = build_chain(unit, 10 ** 4)
    a = affine_length_sup(line, seed=5)
    b = affine_length_sup(line, seed=5, threads=2)
    assert a.value == b.value and a.starts == b.starts


def test_sup_without_vertices(unit):
    f = Frame.from_points((0, 0), (0, 2), (4, 0))
    res = affine_length_sup(BrokenLine.from_points([f.A, f.B], f))
    assert res.value == pytest.approx(float(f.S) ** (1 / 3))


def test_deficit_probe_positive(unit):
    p = affine_deficit_probe(unit, 10 ** 4)
    assert p.k == 5 and p.deficit > 0
    assert p.l_a + p.deficit == pytest.approx(1.0)
