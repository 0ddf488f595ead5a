"""Periodic piecewise-constant colorings of the real line.

A :class:`LineColoring` colors the half-open intervals ``[b_i, b_{i+1})`` of
one period and repeats. Distance avoidance is decided exactly by checking,
for every ordered pair of intervals, whether a shift by ``d`` makes them
meet modulo the period.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from . import kernels
from .errors import (
    NoColoringWithinBudget,
    ParseError,
    WindowTooSmall,
    ZeroDistance,
    ZeroDistanceWithNonemptyColoring,
)
from .rational import as_rational, common_denominator, format_rational

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


@dataclass(frozen=True)
class LineColoring:
    period: Fraction
    breakpoints: tuple
    colors: tuple

    def __post_init__(self):
        period = as_rational(self.period)
        bps = tuple(as_rational(b) for b in self.breakpoints)
        cols = tuple(int(c) for c in self.colors)
        if period <= 0:
            raise ValueError("period must be positive")
        if not bps or bps[0] != 0:
            raise ValueError("the first breakpoint must be 0")
        if any(q <= p for p, q in zip(bps, bps[1:])) or bps[-1] >= period:
            raise ValueError("breakpoints must increase strictly inside [0, period)")
        if len(cols) != len(bps):
            raise ValueError("need exactly one color per interval")
        if set(cols) != set(range(max(cols) + 1)):
            raise ValueError("color indices must be contiguous from 0")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "colors", cols)

    @classmethod
    def from_word(cls, word, unit=1) -> "LineColoring":
        """Residue-class coloring: ``[i*unit, (i+1)*unit)`` gets ``word[i]``."""
        unit = as_rational(unit)
        return cls(len(word) * unit, [i * unit for i in range(len(word))], word).normalized()

    @property
    def color_count(self) -> int:
        return max(self.colors) + 1

    def intervals(self):
        ends = self.breakpoints[1:] + (self.period,)
        return list(zip(self.breakpoints, ends, self.colors))

    def normalized(self) -> "LineColoring":
        """Merge neighbouring intervals of equal color (not across the wrap)."""
        bps, cols = [self.breakpoints[0]], [self.colors[0]]
        for b, c in zip(self.breakpoints[1:], self.colors[1:]):
            if c != cols[-1]:
                bps.append(b)
                cols.append(c)
        return LineColoring(self.period, bps, cols)

    def scaled(self, lam) -> "LineColoring":
        lam = as_rational(lam)
        return LineColoring(self.period * lam, [b * lam for b in self.breakpoints], self.colors)

    def __call__(self, x) -> int:
        return eval_line_coloring(self, x)


@dataclass(frozen=True)
class DistanceSet:
    distances: tuple

    def __init__(self, distances: Iterable = ()):
        vals = sorted({as_rational(d) for d in distances})
        if any(d < 0 for d in vals):
            raise ValueError("distances must be nonnegative")
        object.__setattr__(self, "distances", tuple(vals))

    def __iter__(self):
        return iter(self.distances)

    def __len__(self):
        return len(self.distances)

    def __contains__(self, d):
        return as_rational(d) in self.distances

    @property
    def is_integral(self) -> bool:
        return all(d.denominator == 1 for d in self.distances)

    def to_json(self):
        return [format_rational(d) for d in self.distances]


def _as_distance_set(D) -> DistanceSet:
    return D if isinstance(D, DistanceSet) else DistanceSet(D)


def eval_line_coloring(C: LineColoring, x) -> int:
    r = as_rational(x) % C.period
    return C.colors[bisect_right(C.breakpoints, r) - 1]


def _meet(lo_i, hi_i, lo_j, hi_j, s, period):
    """Some x in [lo_i, hi_i) with x + s in [lo_j, hi_j) + period*Z, else None."""
    t = math.floor((lo_i + s - hi_j) / period) + 1
    if lo_j + t * period < hi_i + s:
        return max(lo_i, lo_j + t * period - s)
    return None


def shift_meetings(C: LineColoring, s):
    """Yield ``(x, color(x), color(x + s))`` once per interval pair that meets."""
    s = as_rational(s)
    ivs = C.intervals()
    for lo_i, hi_i, ci in ivs:
        for lo_j, hi_j, cj in ivs:
            x = _meet(lo_i, hi_i, lo_j, hi_j, s, C.period)
            if x is not None:
                yield x, ci, cj


@dataclass(frozen=True)
class AvoidanceVerdict:
    avoids: bool
    violation: Optional[tuple] = None  # (x, x + d, d)

    def to_json(self):
        out = {"avoids": self.avoids}
        if self.violation is not None:
            out["violation"] = [format_rational(v) for v in self.violation]
        return out


def avoids_distances(C: LineColoring, D) -> AvoidanceVerdict:
    D = _as_distance_set(D)
    if 0 in D.distances:
        raise ZeroDistanceWithNonemptyColoring("0 is in the distance set")
    ivs = C.intervals()
    for d in D:
        for lo_i, hi_i, ci in ivs:
            for lo_j, hi_j, cj in ivs:
                if ci != cj:
                    continue
                x = _meet(lo_i, hi_i, lo_j, hi_j, d, C.period)
                if x is not None:
                    return AvoidanceVerdict(False, (x, x + d, d))
    return AvoidanceVerdict(True)


@dataclass(frozen=True)
class Reduction:
    distances: DistanceSet
    scale: int
    gcd: int


def rational_distance_reduction(D) -> Reduction:
    D = _as_distance_set(D)
    if any(d == 0 for d in D):
        raise ZeroDistance("distances must be positive")
    lam = common_denominator(D)
    ints = [int(d * lam) for d in D]
    return Reduction(DistanceSet(ints), lam, math.gcd(*ints) if ints else 0)


def _require_integral(D: DistanceSet):
    if not D.is_integral:
        raise ValueError("integral distances required; apply rational_distance_reduction first")
    if any(d == 0 for d in D):
        raise ZeroDistance("distances must be positive")


@dataclass
class LowerBound:
    value: int
    window: int
    edge_count: int
    witness: list  # coloring of {0..window} with `value` colors
    refutations: list = field(default_factory=list)  # [{"k", "nodes"}] for k < value

    def to_json(self):
        return {
            "value": self.value,
            "vertices": [0, self.window],
            "edges": self.edge_count,
            "witness_coloring": self.witness,
            "refuted": self.refutations,
        }


def distance_graph_edges(D: DistanceSet, n: int):
    return [(i, i + int(d)) for i in range(n + 1) for d in D if i + int(d) <= n]


def chi_line_lower(D, n: int) -> LowerBound:
    """Chromatic number of the distance graph on {0, ..., n}."""
    D = _as_distance_set(D)
    _require_integral(D)
    if not D.distances or n < min(D):
        raise WindowTooSmall(f"window {n} contains no edge")
    edges = distance_graph_edges(D, n)
    refuted = []
    k = 1
    while True:
        coloring, nodes, complete = kernels.hyper_color(n + 1, edges, k)
        assert complete
        if coloring is not None:
            return LowerBound(k, n, len(edges), coloring, refuted)
        refuted.append({"k": k, "nodes": nodes})
        k += 1


def _lex_word(D: DistanceSet, p: int, k: int):
    """Lexicographically smallest word in [k]^p avoiding D cyclically, or None."""
    ds = [int(d) for d in D]
    if any(d % p == 0 for d in ds):
        return None
    word = [-1] * p

    def ok(i, c):
        for d in ds:
            for j in ((i + d) % p, (i - d) % p):
                if j < i and word[j] == c:
                    return False
        return True

    def fill(i, maxused):
        if i == p:
            return True
        for c in range(min(k, maxused + 2)):
            if ok(i, c):
                word[i] = c
                if fill(i + 1, max(maxused, c)):
                    return True
        word[i] = -1
        return False

    return list(word) if fill(0, -1) else None


@dataclass
class UpperBound:
    value: int
    period: int
    word: list
    coloring: LineColoring

    def to_json(self):
        return {
            "value": self.value,
            "period": self.period,
            "word": self.word,
            "coloring": line_coloring_to_dict(self.coloring),
        }


def chi_line_upper(D, max_period: int) -> UpperBound:
    """Fewest colors of a residue-class coloring with period <= max_period.

    For each k the smallest period is tried first, then the lexicographically
    smallest word, so the witness is deterministic.
    """
    D = _as_distance_set(D)
    _require_integral(D)
    for k in range(1, max_period + 1):
        for p in range(1, max_period + 1):
            word = _lex_word(D, p, k)
            if word is None:
                continue
            coloring = LineColoring.from_word(word)
            if not avoids_distances(coloring, D).avoids:
                raise AssertionError("residue coloring failed the exact check")
            return UpperBound(k, p, word, coloring)
    raise NoColoringWithinBudget(
        f"no residue coloring with period <= {max_period} avoids {list(D.distances)}"
    )


@dataclass
class ChromaticResult:
    lower: LowerBound
    upper: UpperBound

    @property
    def status(self) -> str:
        return "exact" if self.lower.value == self.upper.value else "bounds"

    def to_json(self):
        return {
            "status": self.status,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
        }


def chi_line(D, window: int, max_period: int) -> ChromaticResult:
    return ChromaticResult(chi_line_lower(D, window), chi_line_upper(D, max_period))


# ---------------------------------------------------------------- file I/O

def line_coloring_to_dict(C: LineColoring) -> dict:
    return {
        "period": format_rational(C.period),
        "breaks": [format_rational(b) for b in C.breakpoints],
        "colors": list(C.colors),
    }


def line_coloring_from_dict(data: dict) -> LineColoring:
    try:
        return LineColoring(
            as_rational(str(data["period"])),
            [as_rational(str(b)) for b in data["breaks"]],
            data["colors"],
        )
    except KeyError as exc:
        raise ParseError(f"line coloring is missing {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad line coloring: {exc}") from None


def _toml_value(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    return str(v)


def dumps_toml(data: dict) -> str:
    """Minimal TOML writer for flat tables and one level of sub-tables."""
    lines, tables = [], []
    for key, value in data.items():
        if isinstance(value, dict):
            tables.append((key, value))
        else:
            lines.append(f"{key} = {_toml_value(value)}")
    for name, table in tables:
        lines.append(f"\n[{name}]")
        lines.extend(f"{k} = {_toml_value(v)}" for k, v in table.items())
    return "\n".join(lines) + "\n"


def loads_toml(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"invalid TOML: {exc}") from None


def loads_line_coloring(text: str) -> LineColoring:
    return line_coloring_from_dict(loads_toml(text))


def dumps_line_coloring(C: LineColoring) -> str:
    return dumps_toml(line_coloring_to_dict(C))
