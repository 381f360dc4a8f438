import json
from fractions import Fraction

import pytest
from jsonschema import validate

from latcurve.errors import DegenerateError, SearchExhausted
from latcurve.exact import cross
from latcurve.jarnik import verify_abc_broken_line
from latcurve.synth import (count_on_curve, count_on_polyline, from_json, load_schema,
                            required_count, synthesize, tangent_decomposition, to_json)

HALVES = [Fraction(1, 2 ** k) for k in range(1, 8)]


def test_tangent_triangles_two_terms():
    f1, f2 = tangent_decomposition([Fraction(1, 2), Fraction(1, 4)])
    assert f1.S >= 100 * Fraction(1, 8) and f2.S >= 100 * Fraction(1, 64)
    assert f1.B == f2.A  # shared tangency point
    # edge-direction sectors meet only along the common tangent at the shared point
    assert cross(f1.CB, f2.AC) == 0 and f1.CB[0] * f2.AC[0] + f1.CB[1] * f2.AC[1] > 0
    assert cross(f1.AC, f2.CB) > 0


def test_tangent_turning_budget():
    frames = tangent_decomposition(HALVES[:5])
    first, last = frames[0].AC, frames[-1].CB
    assert cross(first, last) > 0  # total turning below pi


def test_degenerate_series():
    with pytest.raises(DegenerateError):
        tangent_decomposition([Fraction(1, 2), 0])


def test_required_count_exact():
    assert required_count(Fraction(1, 2), 8) == 2
    assert required_count(Fraction(1, 2), 9) == 3
    for q in range(1, 200):
        K = required_count(Fraction(1, 3), q)
        assert K ** 3 * 27 >= q * q and (K == 1 or (K - 1) ** 3 * 27 < q * q)


@pytest.fixture(scope="module")
def curve():
    return synthesize(HALVES, None, 3, q_min=500)


def test_synth_certificates(curve):
    qs = [st.q for st in curve.stages]
    assert qs == sorted(set(qs))
    for i, st in enumerate(curve.stages, start=1):
        assert st.c == Fraction(1, 2 ** i)
        assert verify_abc_broken_line(st.chain)
        assert st.certificate_holds()
        assert count_on_curve(curve, st.q) >= st.certified_count
        assert st.frame.S >= 100 * st.c ** 3


def test_synth_global_convexity(curve):
    assert curve.is_convex()


def test_least_q_is_selected():
    cv = synthesize(HALVES, None, 1)
    assert cv.stages[0].q == 1


def test_admissible_list():
    cv = synthesize(HALVES, [7, 30, 31, 400], 2)
    assert [st.q for st in cv.stages] == [7, 30]


def test_search_exhausted_reports_range():
    with pytest.raises(SearchExhausted) as ei:
        synthesize(HALVES, [3], 2)
    assert ei.value.attempted == (None, None)
    with pytest.raises(SearchExhausted) as ei:
        synthesize(HALVES, lambda q: False, 1, max_attempts=5)
    assert "stage 1" in str(ei.value)


def test_polyline_count():
    assert count_on_polyline([(0, 0), (1, 0)], 7) == 8
    assert count_on_polyline([(0, 0), (1, 0), (1, 1)], 2) == 5


def test_count_unimodular_invariance(curve):
    # image under the shear (x, y) -> (x + y, y)
    img = [(x + y, y) for x, y in curve.global_vertices]
    for n in (500, 777):
        assert count_on_polyline(img, n) == count_on_curve(curve, n)


def test_json_roundtrip_and_schema(curve):
    doc = to_json(curve)
    validate(doc, load_schema("curve.v1.json"))
    back = from_json(json.loads(json.dumps(doc)))
    assert back.global_vertices == curve.global_vertices
    assert [st.certified_count for st in back.stages] == [st.certified_count for st in curve.stages]


def test_from_json_rejects_other_versions(curve):
    doc = to_json(curve)
    doc["version"] = 2
    with pytest.raises(ValueError):
        from_json(doc)
