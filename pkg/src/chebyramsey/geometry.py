"""Exact max-norm plane geometry: triangles, points and their isometric copies.

Every quantity is a :class:`fractions.Fraction`. A *copy* of ``T(a, b, c)``
is an unordered triple of points whose pairwise max-norm distances are the
multiset ``{a, b, c}``.
"""

from __future__ import annotations

import itertools
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    DegenerateTriangleUnsupported,
    DuplicatePoint,
    NonPositiveScale,
    NonPositiveSide,
    ParseError,
    TriangleInequalityViolated,
)
from .rational import as_rational, common_denominator, format_rational, parse_rational

NON_DEGENERATE = "non-degenerate"
DEGENERATE = "degenerate"


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, lam) -> "Point":
        return Point(self.x * lam, self.y * lam)

    def to_json(self):
        return [format_rational(self.x), format_rational(self.y)]

    def __repr__(self):
        return f"Point({format_rational(self.x)}, {format_rational(self.y)})"


@dataclass(frozen=True)
class Triangle:
    """Side lengths sorted so that ``a <= b <= c``; construction validates."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        sides = [as_rational(s) for s in (self.a, self.b, self.c)]
        if any(s <= 0 for s in sides):
            raise NonPositiveSide(f"side lengths must be positive, got {sides}")
        a, b, c = sorted(sides)
        if c > a + b:
            raise TriangleInequalityViolated(f"{c} > {a} + {b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def kind(self) -> str:
        return NON_DEGENERATE if self.c < self.a + self.b else DEGENERATE

    @property
    def degenerate(self) -> bool:
        return self.c == self.a + self.b

    @property
    def sides(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def side_set(self) -> tuple:
        return self.sides

    @property
    def diag_set(self) -> tuple:
        """Sorted multiset ``{a+b-c, c+a-b, b+c-a}``."""
        a, b, c = self.sides
        return tuple(sorted((a + b - c, c + a - b, b + c - a)))

    @property
    def is_integral(self) -> bool:
        return all(s.denominator == 1 for s in self.sides)

    def scaled(self, lam) -> "Triangle":
        return Triangle(self.a * lam, self.b * lam, self.c * lam)

    def to_json(self):
        return [format_rational(s) for s in self.sides]

    @classmethod
    def parse(cls, text: str) -> "Triangle":
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        if len(parts) != 3:
            raise ParseError(f"a triangle needs three side lengths, got {text!r}")
        return validate_triangle(*(parse_rational(p) for p in parts))

    def __str__(self):
        return "T(" + ",".join(format_rational(s) for s in self.sides) + ")"


class PointSet(Sequence):
    """Distinct points kept in lexicographic ``(x, y)`` order."""

    def __init__(self, points: Iterable = ()):
        pts = [p if isinstance(p, Point) else Point(*p) for p in points]
        ordered = sorted(pts)
        for p, q in zip(ordered, ordered[1:]):
            if p == q:
                raise DuplicatePoint(f"duplicate point {p!r}")
        self._points = tuple(ordered)

    def __getitem__(self, i):
        return self._points[i]

    def __len__(self):
        return len(self._points)

    def __eq__(self, other):
        return isinstance(other, PointSet) and self._points == other._points

    def __hash__(self):
        return hash(self._points)

    def __repr__(self):
        return f"PointSet({list(self._points)!r})"

    def index(self, p):
        return self._points.index(p if isinstance(p, Point) else Point(*p))

    def scaled(self, lam) -> "PointSet":
        return PointSet(p.scaled(lam) for p in self._points)

    def to_json(self):
        return [p.to_json() for p in self._points]

    @classmethod
    def grid(cls, step, span) -> "PointSet":
        """Points of ``(step*Z)^2`` inside the square ``[0, span]^2``."""
        step, span = as_rational(step), as_rational(span)
        m = int(span // step)
        return cls(Point(i * step, j * step) for i in range(m + 1) for j in range(m + 1))


def linf_dist(p: Point, q: Point) -> Fraction:
    return max(abs(p.x - q.x), abs(p.y - q.y))


def validate_triangle(a, b, c) -> Triangle:
    return Triangle(a, b, c)


def is_copy(z1: Point, z2: Point, z3: Point, T: Triangle) -> bool:
    d = sorted((linf_dist(z1, z2), linf_dist(z2, z3), linf_dist(z3, z1)))
    return d[0] == T.a and d[1] == T.b and d[2] == T.c


def lemma1_filter(z1: Point, z2: Point, z3: Point, T: Triangle) -> bool:
    """Necessary condition for a copy of a non-degenerate triangle.

    Some pair differs in y by a side length, and some pair differs in x+y by
    one of a+b-c, c+a-b, b+c-a.
    """
    if T.degenerate:
        raise DegenerateTriangleUnsupported(f"{T} is degenerate")
    sides = T.side_set
    diags = T.diag_set
    pts = (z1, z2, z3)
    pairs = ((0, 1), (1, 2), (2, 0))
    if not any(abs(pts[i].y - pts[j].y) in sides for i, j in pairs):
        return False
    return any(
        abs(pts[i].x + pts[i].y - pts[j].x - pts[j].y) in diags for i, j in pairs
    )


def canonical_copy(T: Triangle) -> tuple:
    """One explicit copy: (0, a), (-c, 0), (b-c, 0)."""
    return (Point(0, T.a), Point(-T.c, 0), Point(T.b - T.c, 0))


def ring_intersection(p: Point, r, q: Point, t) -> list:
    """Closed axis-parallel pieces of ``{z : |z-p| = r, |z-q| = t}``.

    Each piece is a pair of endpoints (equal for isolated points). Pieces
    may share endpoints at square corners.
    """
    r, t = as_rational(r), as_rational(t)
    pieces = []
    for kx in (p.x - r, p.x + r):
        ux = abs(kx - q.x)
        if ux > t:
            continue
        if ux == t:
            lo, hi = max(p.y - r, q.y - t), min(p.y + r, q.y + t)
            if lo <= hi:
                pieces.append((Point(kx, lo), Point(kx, hi)))
        else:
            for ky in (q.y - t, q.y + t):
                if p.y - r <= ky <= p.y + r:
                    pieces.append((Point(kx, ky), Point(kx, ky)))
    for ky in (p.y - r, p.y + r):
        uy = abs(ky - q.y)
        if uy > t:
            continue
        if uy == t:
            lo, hi = max(p.x - r, q.x - t), min(p.x + r, q.x + t)
            if lo <= hi:
                pieces.append((Point(lo, ky), Point(hi, ky)))
        else:
            for kx in (q.x - t, q.x + t):
                if p.x - r <= kx <= p.x + r:
                    pieces.append((Point(kx, ky), Point(kx, ky)))
    return pieces


def integer_frame(S: Sequence, T: Triangle):
    """Scale points and sides by their common denominator.

    Returns ``(xs, ys, (a, b, c), lam)`` with plain ints.
    """
    lam = common_denominator(
        [p.x for p in S] + [p.y for p in S] + list(T.sides)
    )
    xs = [int(p.x * lam) for p in S]
    ys = [int(p.y * lam) for p in S]
    sides = tuple(int(s * lam) for s in T.sides)
    return xs, ys, sides, lam


def _chunks(n, threads):
    if threads <= 1 or n < 64:
        return [(0, n)]
    parts = threads * 4
    size = -(-n // parts)
    return [(lo, min(n, lo + size)) for lo in range(0, n, size)]


def _kernel_scan(S, T, colors=None, first_only=False, threads=1):
    xs, ys, (a, b, c), _ = integer_frame(S, T)
    n = len(S)
    ranges = _chunks(n, threads)

    def run(rng):
        return kernels.copy_triples(xs, ys, a, b, c, rng[0], rng[1], colors, first_only)

    if len(ranges) == 1:
        results = [run(ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ranges))
    return results


def enumerate_copies(S: PointSet, T: Triangle, method: str = "kernel", threads: int = 1) -> list:
    """All index triples ``(i, j, k)``, ``i < j < k``, forming copies of T.

    ``method`` selects the route: ``"kernel"`` (ring intersection, default),
    ``"filtered"`` (triple scan pre-filtered by :func:`lemma1_filter`, needs a
    non-degenerate T) or ``"brute"`` (plain triple scan). All three return the
    same list in lexicographic order.
    """
    if not isinstance(S, PointSet):
        S = PointSet(S)
    if len(S) < 3:
        return []
    if method == "brute":
        return [
            t for t in itertools.combinations(range(len(S)), 3)
            if is_copy(S[t[0]], S[t[1]], S[t[2]], T)
        ]
    if method == "filtered":
        return [
            t for t in itertools.combinations(range(len(S)), 3)
            if lemma1_filter(S[t[0]], S[t[1]], S[t[2]], T)
            and is_copy(S[t[0]], S[t[1]], S[t[2]], T)
        ]
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    out = []
    for triples, _ in _kernel_scan(S, T, threads=threads):
        out.extend(triples)
    return out


def count_copies(S: PointSet, T: Triangle, threads: int = 1) -> int:
    if len(S) < 3:
        return 0
    return sum(seen for _, seen in _kernel_scan(S, T, threads=threads))


def first_monochromatic_copy(S: PointSet, T: Triangle, colors: Sequence[int], threads: int = 1):
    """Lexicographically first monochromatic copy, or None.

    Returns ``(triple or None, copies_seen)``; ``copies_seen`` is the total
    number of copies only when no monochromatic one exists.
    """
    if len(S) < 3:
        return None, 0
    results = _kernel_scan(S, T, colors=list(colors), first_only=True, threads=threads)
    seen = 0
    for triples, s in results:
        seen += s
        if triples:
            return triples[0], seen
    return None, seen


def scale_instance(T: Triangle, S: PointSet, lam) -> tuple:
    lam = as_rational(lam)
    if lam <= 0:
        raise NonPositiveScale(f"scale must be positive, got {lam}")
    return T.scaled(lam), S.scaled(lam)


# ---------------------------------------------------------------- file I/O

_TOKEN_RE = re.compile(r'"((?:[^"\\]|\\.)*)"|(-?\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)')


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def loads_points(text: str) -> PointSet:
    """Parse a JSON array of ``[x, y]`` pairs of "p/q" strings or integers."""
    try:
        data = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    positions = [m.start() for m in _TOKEN_RE.finditer(text)]
    if not isinstance(data, list):
        raise ParseError("point file must hold a JSON array", 1, 1)
    coords = []
    flat = 0
    for item in data:
        if not isinstance(item, list) or len(item) != 2:
            pos = positions[flat] if flat < len(positions) else 0
            raise ParseError("each point must be a two-element array", *_line_col(text, pos))
        pair = []
        for value in item:
            pos = positions[flat] if flat < len(positions) else 0
            flat += 1
            if isinstance(value, bool) or not isinstance(value, (int, str)):
                raise ParseError(f"coordinate {value!r} is not exact", *_line_col(text, pos))
            try:
                pair.append(as_rational(value))
            except ParseError as exc:
                raise ParseError(str(exc), *_line_col(text, pos)) from None
        coords.append(Point(*pair))
    return PointSet(coords)


def load_points(path) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return loads_points(fh.read())


def dumps_points(S: PointSet) -> str:
    return json.dumps(S.to_json())
