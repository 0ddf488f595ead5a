from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chebyramsey.deduction import (
    ANTIPERIOD_CASES,
    Segment,
    antiperiod_consequences,
    case_length,
    case_vector,
    forced_lines,
    forced_segment,
    integer_certificates,
    line_certificates,
    segment_extension_trace,
)
from chebyramsey.errors import DegenerateTriangleUnsupported, HypothesisViolated, PairDoesNotMatchCase
from chebyramsey.geometry import Point, Triangle, is_copy
from chebyramsey.plane import ShiftVector


def V(x, y):
    return ShiftVector(x, y)


@st.composite
def triangles(draw):
    den = draw(st.integers(1, 6))
    a = draw(st.integers(1, 6 * den))
    b = draw(st.integers(a, 6 * den))
    c = draw(st.integers(b, a + b - 1))
    return Triangle(Fraction(a, den), Fraction(b, den), Fraction(c, den))


# ------------------------------------------------------------ segments

def test_segment_basics():
    s = Segment("vertical", Point(-3, -3), 1)
    assert s.end == Point(-3, -2)
    assert s.contains(Point(-3, Fraction(-5, 2))) and not s.contains(Point(-3, -1))
    assert Segment.between(Point(2, 0), Point(0, 0)) == Segment("horizontal", Point(0, 0), 2)


def test_forced_segment_example(T234):
    fs = forced_segment((Point(0, 0), Point(-1, -4)), "(b-a,+c)", T234)
    assert fs.segment == Segment("vertical", Point(-3, -3), 1)
    assert is_copy(Point(-3, -3), Point(0, 0), Point(-1, -4), T234)
    assert is_copy(Point(-3, -2), Point(0, 0), Point(-1, -4), T234)
    assert all(o.verified for o in fs.obligations)
    # pair given in the other order gives the same segment
    assert forced_segment((Point(-1, -4), Point(0, 0)), "(b-a,+c)", T234).segment == fs.segment


def test_twelve_cases_and_lengths(T234):
    assert len(ANTIPERIOD_CASES) == 12
    a, b, c = T234.sides
    lengths = {case: case_length(case, T234) for case in ANTIPERIOD_CASES}
    assert sorted(set(lengths.values())) == sorted({a + b - c, c + a - b, b + c - a})
    assert sum(1 for v in lengths.values() if v == a + b - c) == 4
    vectors = {case_vector(case, T234) for case in ANTIPERIOD_CASES}
    assert vectors == {V(2, 1), V(-2, 1), V(1, 2), V(1, -2), V(3, -2), V(-3, -2), V(-2, 3), V(-2, -3),
                       V(4, 1), V(-4, 1), V(1, 4), V(1, -4)}


@settings(max_examples=80, deadline=None)
@given(triangles(), st.sampled_from(sorted(ANTIPERIOD_CASES)),
       st.fractions(min_value=-10, max_value=10, max_denominator=6),
       st.fractions(min_value=-10, max_value=10, max_denominator=6))
def test_forced_segments_hold_everywhere(T, case, x, y):
    v = case_vector(case, T)
    p = Point(x, y)
    fs = forced_segment((p, Point(x - v.dx, y - v.dy)), case, T, samples=6)
    assert fs.segment.length == case_length(case, T)
    assert all(o.verified for o in fs.obligations)
    for z in fs.segment.samples(11):
        assert is_copy(fs.pair[0], fs.pair[1], z, T)


def test_forced_segment_errors(T234):
    with pytest.raises(PairDoesNotMatchCase):
        forced_segment((Point(0, 0), Point(1, 1)), "(b-a,+c)", T234)
    with pytest.raises(PairDoesNotMatchCase):
        forced_segment((Point(0, 0), Point(1, 1)), "(x,y)", T234)
    with pytest.raises(DegenerateTriangleUnsupported):
        forced_segment((Point(0, 0), Point(1, 1)), "(b-a,+c)", Triangle(1, 1, 2))


# ------------------------------------------------------------ anti-periods

def test_antiperiods_for_234(T234):
    r = antiperiod_consequences(T234, 10)
    assert set(r.anti_periods) == {V(2, 1), V(-2, 1), V(1, 2), V(1, -2),
                                   V(3, -2), V(-3, -2), V(-2, 3), V(-2, -3)}
    assert set(r.periods) == {V(4, 0), V(6, 0), V(8, 0), V(0, 4), V(0, 6), V(0, 8)}
    assert all(d.check() for d in r.decompositions)
    assert r.certificate is None and r.extra_anti_periods == []
    first = r.decompositions[0]
    assert first.target.vector == V(4, 0)
    assert [(s, t.vector) for s, t in first.terms] == [(1, V(2, 1)), (-1, V(-2, 1))]


def test_antiperiods_with_certificate():
    T = Triangle(Fraction(3, 2), 2, Fraction(5, 2))
    r = antiperiod_consequences(T, 5)
    assert r.certificate is not None
    n, m, k = r.certificate
    assert 0 < 2 * T.a * n + 2 * T.b * m + 2 * T.c * k <= T.a + T.b - T.c
    assert (2, 0, -1) in integer_certificates(T, 5)
    h = Fraction(1, 2)
    assert set(r.extra_anti_periods) == {V(Fraction(5, 2), h), V(Fraction(-5, 2), h),
                                         V(h, Fraction(5, 2)), V(h, Fraction(-5, 2))}


def test_antiperiods_equilateral():
    r = antiperiod_consequences(Triangle(1, 1, 1), 3)
    assert {V(1, 0), V(-1, 0), V(0, 1), V(0, -1)} <= set(r.anti_periods)
    assert set(r.periods) == {V(2, 0), V(0, 2)}


def test_certificate_search_matches_direct_scan():
    rng = random.Random(8)
    for _ in range(30):
        den = rng.randint(1, 5)
        a = rng.randint(1, 5 * den)
        b = rng.randint(a, 5 * den)
        c = rng.randint(b, a + b - 1)
        T = Triangle(Fraction(a, den), Fraction(b, den), Fraction(c, den))
        N = 3
        want = sorted(
            (n, m, k) for n in range(-N, N + 1) for m in range(-N, N + 1) for k in range(-N, N + 1)
            if 0 < 2 * T.a * n + 2 * T.b * m + 2 * T.c * k <= T.a + T.b - T.c
        )
        assert sorted(integer_certificates(T, N)) == want


@settings(max_examples=40, deadline=None)
@given(triangles())
def test_decompositions_always_check(T):
    r = antiperiod_consequences(T, 4)
    assert all(d.check() for d in r.decompositions)
    json.dumps(r.to_json())


# ------------------------------------------------------------ forced lines

def test_forced_lines_234(T234):
    fl = forced_lines(T234, 10)
    assert fl.blue_lines == [2, 3, 4]
    n, m = fl.certificate
    assert (n + m) % 2 == 0 and 1 <= 2 * n + 3 * m <= 2
    assert (4, -2) in line_certificates(T234, 10)
    assert all(o.verified for o in fl.obligations)
    assert is_copy(Point(0, 3), Point(-4, 0), Point(-2, 0), T234)
    assert is_copy(Point(0, 4), Point(-3, 2), Point(-1, 0), T234)


def test_forced_lines_without_certificate():
    # a = b = 2: an + bm = 2(n+m) is a multiple of 4 when n+m is even, never in [1, 2]
    fl = forced_lines(Triangle(2, 2, 3), 5)
    assert fl.certificate is None and fl.blue_lines == [2]
    assert all(o.verified for o in fl.obligations)


@settings(max_examples=40, deadline=None)
@given(triangles(), st.fractions(min_value=-9, max_value=9, max_denominator=4))
def test_forced_line_obligations_translate(T, x0):
    fl = forced_lines(T, 6)
    for o in fl.obligations:
        assert o.verified
        shifted = [Point(p.x + x0, p.y) for p in o.points]
        assert is_copy(*shifted, T)


# ------------------------------------------------------------ extension trace

def test_trace_isosceles_example():
    tr = segment_extension_trace(Triangle(2, 3, 3), 2)
    spans = [(s.y, s.lo, s.hi) for s in tr.steps]
    assert spans == [(0, 0, 2), (3, -1, 3), (0, -2, 4)]
    assert [s.length for s in tr.steps] == [2, 4, 6]
    assert [s.color for s in tr.steps] == ["red", "blue", "red"]
    assert all(o.verified for o in tr.all_obligations())


def test_trace_general_example(T234):
    tr = segment_extension_trace(T234, 1)
    assert [(s.y, s.lo, s.hi) for s in tr.steps] == [(0, 0, 5), (2, -1, 6)]
    z1, z2, z3, z4, z5 = Point(1, 2), Point(0, 0), Point(4, 3), Point(4, -1), Point(2, 2)
    triples = {frozenset(o.points) for o in tr.all_obligations() if o.kind == "copy"}
    for tri in ((z1, z2, z3), (z1, z2, z4), (z3, z4, z5)):
        assert frozenset(tri) in triples
    assert all(o.verified for o in tr.all_obligations())


@pytest.mark.parametrize("sides", [(2, 3, 3), (2, 3, 4), (3, 4, 6), (5, 7, 8), (1, 2, 2),
                                   (Fraction(3, 2), 2, Fraction(5, 2))])
@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_trace_lengths_and_obligations(sides, depth):
    T = Triangle(*sides)
    tr = segment_extension_trace(T, depth)
    base = T.a if T.b == T.c else T.b + T.c - T.a
    growth = T.b - T.a if T.b == T.c else T.c - T.b
    for level, step in enumerate(tr.steps):
        assert step.length == base + 2 * level * growth
    assert all(o.verified for o in tr.all_obligations())


def test_trace_errors():
    with pytest.raises(HypothesisViolated):
        segment_extension_trace(Triangle(2, 2, 3), 1)
    with pytest.raises(DegenerateTriangleUnsupported):
        segment_extension_trace(Triangle(1, 2, 3), 1)


def test_trace_json_records(T234):
    data = segment_extension_trace(T234, 2).to_json()
    recs = [o for step in data["steps"] for o in step["obligations"] if o["kind"] == "copy"]
    assert recs and all(set(o) >= {"points", "expected", "verified"} for o in recs)
    assert all(o["expected"] == "copy" and o["verified"] for o in recs)
