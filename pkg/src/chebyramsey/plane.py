"""Plane colorings: line lifts, grid-periodic tables, and shift parity.

Three kinds have finite descriptions and admit exact decisions:

* ``horizontal``: ``color(x, y) = C(y)`` for a :class:`LineColoring` C,
* ``diagonal``:   ``color(x, y) = C(x + y)``,
* ``grid``:       a table of ``nx * ny`` cells of size ``(px/nx, py/ny)``
  repeated with period ``(px, py)``.

Anything else with a ``color(x, y)`` method (or a plain callable) can only
be falsified, never certified, through :func:`sample_verify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import (
    DegenerateDiagonalRoute,
    EmptyGrid,
    ParseError,
    UndecidableForOpaqueColoring,
    UnlabeledInput,
    ZeroDistanceWithNonemptyColoring,
)
from .geometry import Point, PointSet, Triangle, first_monochromatic_copy, is_copy
from .line import (
    AvoidanceVerdict,
    LineColoring,
    _meet,
    avoids_distances,
    dumps_toml,
    line_coloring_from_dict,
    line_coloring_to_dict,
    loads_toml,
    shift_meetings,
)
from .rational import as_rational, format_rational

HORIZONTAL = "horizontal"
DIAGONAL = "diagonal"
GRID = "grid"


@dataclass(frozen=True)
class PlaneColoring:
    kind: str
    line: Optional[LineColoring] = None
    px: Optional[Fraction] = None
    py: Optional[Fraction] = None
    table: Optional[tuple] = None  # table[i][j] colors cell (i, j)

    def __post_init__(self):
        if self.kind in (HORIZONTAL, DIAGONAL):
            if self.line is None:
                raise ValueError("a lift needs a line coloring")
        elif self.kind == GRID:
            if self.px is None or self.py is None or not self.table:
                raise ValueError("a grid coloring needs periods and a table")
            px, py = as_rational(self.px), as_rational(self.py)
            if px <= 0 or py <= 0:
                raise ValueError("grid periods must be positive")
            table = tuple(tuple(int(c) for c in row) for row in self.table)
            if len({len(row) for row in table}) != 1 or not table[0]:
                raise ValueError("grid table must be rectangular and nonempty")
            object.__setattr__(self, "px", px)
            object.__setattr__(self, "py", py)
            object.__setattr__(self, "table", table)
        else:
            raise ValueError(f"unknown plane coloring kind {self.kind!r}")

    @property
    def color_count(self) -> int:
        if self.kind == GRID:
            return max(max(row) for row in self.table) + 1
        return self.line.color_count

    @property
    def cell_size(self):
        return self.px / len(self.table), self.py / len(self.table[0])

    def color(self, x, y) -> int:
        x, y = as_rational(x), as_rational(y)
        if self.kind == HORIZONTAL:
            return self.line(y)
        if self.kind == DIAGONAL:
            return self.line(x + y)
        wx, wy = self.cell_size
        i = math.floor((x % self.px) / wx)
        j = math.floor((y % self.py) / wy)
        return self.table[i][j]

    def __call__(self, x, y) -> int:
        return self.color(x, y)


def lift(C: LineColoring, axis: str) -> PlaneColoring:
    if axis not in (HORIZONTAL, DIAGONAL):
        raise ValueError(f"axis must be {HORIZONTAL!r} or {DIAGONAL!r}")
    return PlaneColoring(axis, line=C)


def constant_coloring() -> PlaneColoring:
    return lift(LineColoring(1, [0], [0]), HORIZONTAL)


@dataclass(frozen=True)
class LiftCertificate:
    copy_free: bool
    route: str
    distances: tuple
    verdict: Optional[AvoidanceVerdict]
    reason: str = ""

    def to_json(self):
        out = {
            "status": "copy-free" if self.copy_free else "not-certified",
            "route": self.route,
            "distances": [format_rational(d) for d in self.distances],
        }
        if self.verdict is not None:
            out["line_verdict"] = self.verdict.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def certify_lift(P: PlaneColoring, T: Triangle) -> LiftCertificate:
    """Copy-freeness of a lift, decided through its one-dimensional coloring.

    A horizontal lift is safe when its line coloring avoids the side
    lengths; a diagonal lift when it avoids a+b-c, c+a-b and b+c-a.
    """
    if P.kind == HORIZONTAL:
        dists = tuple(sorted(set(T.side_set)))
    elif P.kind == DIAGONAL:
        dists = tuple(sorted(set(T.diag_set)))
        if 0 in dists:
            raise DegenerateDiagonalRoute(f"{T} is degenerate: a+b-c = 0")
    else:
        raise ValueError("certify_lift needs a horizontal or diagonal lift")
    verdict = avoids_distances(P.line, dists)
    if verdict.avoids:
        return LiftCertificate(True, P.kind, dists, verdict)
    x, y, d = verdict.violation
    return LiftCertificate(
        False, P.kind, dists, verdict,
        f"line coloring puts {format_rational(x)} and {format_rational(y)} "
        f"(distance {format_rational(d)}) in one color",
    )


@dataclass(frozen=True)
class SampleVerdict:
    counterexample: Optional[tuple]  # three Points
    points_checked: int
    copies_checked: Optional[int]

    @property
    def found(self) -> bool:
        return self.counterexample is not None

    def to_json(self):
        out = {
            "verdict": "monochromatic-copy" if self.found else "no-counterexample",
            "grid_points": self.points_checked,
        }
        if self.found:
            out["witness"] = [p.to_json() for p in self.counterexample]
        else:
            out["copies_checked"] = self.copies_checked
            out["note"] = "finite sample only; not a certificate"
        return out


def _color_fn(P) -> Callable:
    if hasattr(P, "color"):
        return P.color
    if callable(P):
        return P
    raise TypeError("expected a plane coloring or a callable (x, y) -> color")


def sample_verify(P, T: Triangle, window, step, threads: int = 1) -> SampleVerdict:
    """Look for a monochromatic copy of T among grid points of [0, window]^2.

    The grid is ``(step*Z)^2``. A clean result is evidence, not proof.
    """
    window, step = as_rational(window), as_rational(step)
    if step <= 0 or window <= 0:
        raise EmptyGrid("window and step must be positive")
    grid = PointSet.grid(step, window)
    color = _color_fn(P)
    colors = [color(p.x, p.y) for p in grid]
    triple, seen = first_monochromatic_copy(grid, T, colors, threads=threads)
    if triple is None:
        return SampleVerdict(None, len(grid), seen)
    pts = tuple(grid[i] for i in triple)
    assert is_copy(*pts, T) and len({color(p.x, p.y) for p in pts}) == 1
    return SampleVerdict(pts, len(grid), None)


# ------------------------------------------------------------ shift parity

PERIOD = "period"
ANTI_PERIOD = "anti-period"
NEITHER = "neither"


@dataclass(frozen=True)
class ShiftVector:
    dx: Fraction
    dy: Fraction

    def __post_init__(self):
        object.__setattr__(self, "dx", as_rational(self.dx))
        object.__setattr__(self, "dy", as_rational(self.dy))

    def __add__(self, other):
        return ShiftVector(self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other):
        return ShiftVector(self.dx - other.dx, self.dy - other.dy)

    def __neg__(self):
        return ShiftVector(-self.dx, -self.dy)

    def to_json(self):
        return [format_rational(self.dx), format_rational(self.dy)]

    def __repr__(self):
        return f"({format_rational(self.dx)}, {format_rational(self.dy)})"


@dataclass(frozen=True)
class ShiftParity:
    value: str
    same_pair: Optional[tuple] = None       # points p, p+v with equal colors
    different_pair: Optional[tuple] = None  # points p, p+v with different colors

    def to_json(self):
        out = {"value": self.value}
        if self.value == NEITHER:
            out["same_pair"] = [p.to_json() for p in self.same_pair]
            out["different_pair"] = [p.to_json() for p in self.different_pair]
        return out


def _parity_from(witnesses) -> ShiftParity:
    same = diff = None
    for p, q, cp, cq in witnesses:
        if cp == cq and same is None:
            same = (p, q)
        if cp != cq and diff is None:
            diff = (p, q)
    if diff is None:
        return ShiftParity(PERIOD)
    if same is None:
        return ShiftParity(ANTI_PERIOD)
    return ShiftParity(NEITHER, same, diff)


def shift_parity(P: PlaneColoring, v: ShiftVector) -> ShiftParity:
    """Decide whether v preserves every color, flips every color, or neither."""
    if not isinstance(P, PlaneColoring):
        raise UndecidableForOpaqueColoring("only lifts and grid colorings are decidable")
    if P.kind in (HORIZONTAL, DIAGONAL):
        s = v.dy if P.kind == HORIZONTAL else v.dx + v.dy

        def witnesses():
            for x, cx, cy in shift_meetings(P.line, s):
                base = Point(0, x) if P.kind == HORIZONTAL else Point(x, 0)
                yield base, Point(base.x + v.dx, base.y + v.dy), cx, cy

        return _parity_from(witnesses())

    wx, wy = P.cell_size
    nx, ny = len(P.table), len(P.table[0])

    def axis_meetings(n, w, period, s):
        for i in range(n):
            for j in range(n):
                x = _meet(i * w, (i + 1) * w, j * w, (j + 1) * w, s, period)
                if x is not None:
                    yield x, i, j

    def witnesses():
        xs = list(axis_meetings(nx, wx, P.px, v.dx))
        ys = list(axis_meetings(ny, wy, P.py, v.dy))
        for x, i, i2 in xs:
            for y, j, j2 in ys:
                yield (Point(x, y), Point(x + v.dx, y + v.dy),
                       P.table[i][j], P.table[i2][j2])

    return _parity_from(witnesses())


@dataclass(frozen=True)
class LabeledShift:
    vector: ShiftVector
    label: str

    def to_json(self):
        return {"vector": self.vector.to_json(), "label": self.label}


def combine_shifts(p1: LabeledShift, p2: LabeledShift, subtract: bool = False) -> LabeledShift:
    """Add (or subtract) labeled shifts; labels multiply like signs."""
    for p in (p1, p2):
        if p.label not in (PERIOD, ANTI_PERIOD):
            raise UnlabeledInput(f"label must be period or anti-period, got {p.label!r}")
    vec = p1.vector - p2.vector if subtract else p1.vector + p2.vector
    label = PERIOD if p1.label == p2.label else ANTI_PERIOD
    return LabeledShift(vec, label)


# ---------------------------------------------------------------- file I/O

def plane_coloring_to_dict(P: PlaneColoring) -> dict:
    if P.kind == GRID:
        return {
            "kind": GRID,
            "px": format_rational(P.px),
            "py": format_rational(P.py),
            "table": [list(row) for row in P.table],
        }
    return {"kind": P.kind, **line_coloring_to_dict(P.line)}


def plane_coloring_from_dict(data: dict) -> PlaneColoring:
    kind = data.get("kind")
    try:
        if kind in (HORIZONTAL, DIAGONAL):
            line_data = data.get("line", data)
            return PlaneColoring(kind, line=line_coloring_from_dict(line_data))
        if kind == GRID:
            return PlaneColoring(
                GRID,
                px=as_rational(str(data["px"])),
                py=as_rational(str(data["py"])),
                table=data["table"],
            )
    except KeyError as exc:
        raise ParseError(f"plane coloring is missing {exc.args[0]!r}") from None
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad plane coloring: {exc}") from None
    raise ParseError(f"unknown plane coloring kind {kind!r}")


def loads_plane_coloring(text: str) -> PlaneColoring:
    return plane_coloring_from_dict(loads_toml(text))


def dumps_plane_coloring(P: PlaneColoring) -> str:
    return dumps_toml(plane_coloring_to_dict(P))
