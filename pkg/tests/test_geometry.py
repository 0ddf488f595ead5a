from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chebyramsey.errors import (
    DegenerateTriangleUnsupported,
    DuplicatePoint,
    NonPositiveScale,
    NonPositiveSide,
    ParseError,
    TriangleInequalityViolated,
)
from chebyramsey.geometry import (
    Point,
    PointSet,
    Triangle,
    canonical_copy,
    count_copies,
    dumps_points,
    enumerate_copies,
    first_monochromatic_copy,
    is_copy,
    lemma1_filter,
    linf_dist,
    loads_points,
    ring_intersection,
    scale_instance,
    validate_triangle,
)
from chebyramsey.rational import as_rational, format_rational, parse_rational

from conftest import brute_copies, grid

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.builds(Point, rationals, rationals)


@st.composite
def triangles(draw, degenerate=False):
    den = draw(st.integers(1, 8))
    a = draw(st.integers(1, 6 * den))
    b = draw(st.integers(a, 6 * den))
    c = a + b if degenerate else draw(st.integers(b, a + b - 1))
    return Triangle(Fraction(a, den), Fraction(b, den), Fraction(c, den))


# ------------------------------------------------------------- rationals

def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -6 / 8 ") == Fraction(-3, 4)
    assert parse_rational("5") == 5
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("0.5")


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


# ------------------------------------------------------------- distances

def test_linf_examples():
    assert linf_dist(Point(0, 0), Point(0, 0)) == 0
    assert linf_dist(Point(0, 0), Point(-4, 0)) == 4
    assert linf_dist(Point(0, 2), Point(-1, 0)) == 2


@given(points, points, points)
def test_linf_metric_axioms(p, q, r):
    assert linf_dist(p, q) == linf_dist(q, p)
    assert (linf_dist(p, q) == 0) == (p == q)
    assert linf_dist(p, r) <= linf_dist(p, q) + linf_dist(q, r)


# ------------------------------------------------------------- triangles

def test_validate_triangle_examples():
    T = validate_triangle(4, 2, 3)
    assert T.sides == (2, 3, 4) and T.kind == "non-degenerate"
    assert T.diag_set == (1, 3, 5)
    D = validate_triangle(1, 1, 2)
    assert D.degenerate and D.diag_set == (0, 2, 2)
    with pytest.raises(TriangleInequalityViolated):
        validate_triangle(1, 1, 3)
    with pytest.raises(NonPositiveSide):
        validate_triangle(0, 1, 1)


def test_triangle_parse():
    assert Triangle.parse("1/2, 3/4,1") == Triangle(Fraction(1, 2), Fraction(3, 4), 1)
    with pytest.raises(ParseError):
        Triangle.parse("1,2")


# ------------------------------------------------------------- is_copy / necessary filter

def test_is_copy_examples(T234):
    assert is_copy(Point(2, 2), Point(1, 0), Point(5, 3), T234)
    assert not is_copy(Point(0, 0), Point(0, 0), Point(1, 1), T234)
    assert is_copy(Point(0, 2), Point(-4, 0), Point(-1, 0), T234)


def test_filter_examples(T234):
    assert lemma1_filter(Point(2, 2), Point(1, 0), Point(5, 3), T234)
    assert not lemma1_filter(Point(0, 0), Point(10, 0), Point(20, 0), T234)
    with pytest.raises(DegenerateTriangleUnsupported):
        lemma1_filter(Point(0, 0), Point(1, 0), Point(2, 0), Triangle(1, 1, 2))


@given(points, points, points, triangles())
def test_is_copy_permutation_invariant(p, q, r, T):
    vals = {is_copy(*perm, T) for perm in itertools.permutations((p, q, r))}
    assert len(vals) == 1


@st.composite
def copies(draw):
    T = draw(triangles())
    z1 = draw(points)
    sx, sy = draw(st.sampled_from([1, -1])), draw(st.sampled_from([1, -1]))
    t = draw(st.fractions(min_value=-T.c, max_value=T.c, max_denominator=8))
    z2 = Point(z1.x + sx * T.c, z1.y + t) if draw(st.booleans()) else Point(z1.x + t, z1.y + sy * T.c)
    pieces = ring_intersection(z1, T.b, z2, T.a)
    lo, hi = draw(st.sampled_from(pieces))
    u = draw(st.fractions(min_value=0, max_value=1, max_denominator=6))
    z3 = Point(lo.x + u * (hi.x - lo.x), lo.y + u * (hi.y - lo.y))
    return T, z1, z2, z3


@settings(max_examples=300)
@given(copies())
def test_filter_sound_on_constructed_copies(data):
    T, z1, z2, z3 = data
    assert is_copy(z1, z2, z3, T)
    assert lemma1_filter(z1, z2, z3, T)


def test_canonical_copy_is_copy():
    for T in (Triangle(2, 3, 4), Triangle(1, 1, 1), Triangle(1, 1, 2), Triangle(Fraction(1, 2), 2, 2)):
        assert is_copy(*canonical_copy(T), T)


@given(points, st.fractions(min_value=Fraction(1, 2), max_value=5, max_denominator=4),
       points, st.fractions(min_value=Fraction(1, 2), max_value=5, max_denominator=4))
def test_ring_intersection_pieces_lie_on_both_rings(p, r, q, t):
    for lo, hi in ring_intersection(p, r, q, t):
        for z in (lo, hi, Point((lo.x + hi.x) / 2, (lo.y + hi.y) / 2)):
            assert linf_dist(z, p) == r and linf_dist(z, q) == t


# ------------------------------------------------------------- point sets

def test_pointset_sorted_and_rejects_duplicates():
    S = PointSet([(1, 0), (0, 5), (0, 1)])
    assert list(S) == [Point(0, 1), Point(0, 5), Point(1, 0)]
    with pytest.raises(DuplicatePoint):
        PointSet([(0, 0), (0, 0)])


def test_points_json_roundtrip():
    S = PointSet([(Fraction(1, 2), -3), (2, Fraction(7, 3))])
    assert loads_points(dumps_points(S)) == S


def test_points_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        loads_points('[["1/2", "3"],\n ["1/0", "2"]]')
    assert info.value.line == 2 and info.value.column == 3
    with pytest.raises(ParseError):
        loads_points("[[0.5, 1]]")
    with pytest.raises(ParseError):
        loads_points("[[1, 2]")
    assert len(loads_points("")) == 0


# ------------------------------------------------------------- enumeration

def test_small_sets_have_no_copies(T234):
    assert enumerate_copies(PointSet([(0, 0), (2, 0)]), T234) == []


@pytest.mark.parametrize("method", ["kernel", "filtered", "brute"])
def test_enumeration_methods_agree_on_grid(T234, method):
    S = grid(8)
    assert enumerate_copies(S, T234, method=method) == brute_copies(S, T234)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=12, unique=True),
       st.integers(1, 4), triangles())
def test_random_sets_match_brute_force(coords, den, T):
    S = PointSet(Point(Fraction(x, den), Fraction(y, den)) for x, y in coords)
    expected = brute_copies(S, T)
    assert enumerate_copies(S, T) == expected
    assert enumerate_copies(S, T, method="filtered") == expected
    assert count_copies(S, T) == len(expected)


def test_thread_count_does_not_change_output(T234):
    S = grid(14)
    one = enumerate_copies(S, T234, threads=1)
    assert enumerate_copies(S, T234, threads=4) == one
    assert len(one) == count_copies(S, T234, threads=3)


def test_first_monochromatic_copy(T234):
    S = grid(6)
    tri, _ = first_monochromatic_copy(S, T234, [0] * len(S))
    assert tri == enumerate_copies(S, T234)[0]
    colors = [(int(p.x) + int(p.y)) % 2 for p in S]  # diagonal parity
    tri, seen = first_monochromatic_copy(S, T234, colors)
    assert tri is None and seen == len(enumerate_copies(S, T234))


def test_scale_instance(T234, five):
    T, S = scale_instance(Triangle(Fraction(1, 2), Fraction(3, 4), 1), PointSet(), 4)
    assert T == T234
    S5 = PointSet(five)
    T3, S3 = scale_instance(T234, S5, 3)
    assert enumerate_copies(S3, T3) == enumerate_copies(S5, T234)
    assert scale_instance(T234, S5, 1) == (T234, S5)
    with pytest.raises(NonPositiveScale):
        scale_instance(T234, S5, 0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=10, unique=True),
       st.fractions(min_value=Fraction(1, 5), max_value=7, max_denominator=5))
def test_scale_invariance(coords, lam):
    T = Triangle(1, 2, 2)
    S = PointSet(coords)
    T2, S2 = scale_instance(T, S, lam)
    assert enumerate_copies(S2, T2) == enumerate_copies(S, T)


def test_huge_coordinates_use_exact_fallback():
    big = 1 << 70
    S = PointSet([(big, 0), (big + 2, 0), (big, 3)])
    T = Triangle(2, 3, 3)
    assert enumerate_copies(S, T) == brute_copies(S, T) == [(0, 1, 2)]


def test_random_rational_sets_with_seed():
    rng = random.Random(7)
    T = Triangle(Fraction(3, 2), 2, Fraction(5, 2))
    for _ in range(20):
        pts = {(Fraction(rng.randint(-8, 8), 2), Fraction(rng.randint(-8, 8), 2)) for _ in range(12)}
        S = PointSet(pts)
        assert enumerate_copies(S, T) == brute_copies(S, T)
