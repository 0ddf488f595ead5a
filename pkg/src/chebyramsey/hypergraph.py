"""Copy hypergraphs on finite point sets and exact solvers over them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernels
from .errors import BudgetExhausted, ParseError
from .geometry import Point, PointSet, Triangle, enumerate_copies, is_copy
from .rational import as_rational, format_rational, parse_rational


@dataclass(frozen=True)
class CopyHypergraph:
    vertex_count: int
    edges: tuple
    points: Optional[PointSet] = None
    triangle: Optional[Triangle] = None

    def __post_init__(self):
        edges = sorted({tuple(sorted(e)) for e in self.edges})
        for e in edges:
            if len(set(e)) != len(e) or not all(0 <= v < self.vertex_count for v in e):
                raise ValueError(f"bad edge {e}")
        if self.points is not None:
            if len(self.points) != self.vertex_count:
                raise ValueError("point count does not match vertex count")
            if self.triangle is not None:
                for e in edges:
                    if len(e) != 3 or not is_copy(*(self.points[i] for i in e), self.triangle):
                        raise ValueError(f"edge {e} is not a copy of {self.triangle}")
        object.__setattr__(self, "edges", tuple(edges))

    def to_json(self):
        out = {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}
        if self.triangle is not None:
            out["triangle"] = self.triangle.to_json()
        if self.points is not None:
            out["points"] = self.points.to_json()
        return out


def build_copy_hypergraph(S: PointSet, T: Triangle, threads: int = 1) -> CopyHypergraph:
    if not isinstance(S, PointSet):
        S = PointSet(S)
    return CopyHypergraph(len(S), tuple(enumerate_copies(S, T, threads=threads)), S, T)


def loads_hypergraph(text: str) -> CopyHypergraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        T = None
        if data.get("triangle") is not None:
            T = Triangle(*(parse_rational(str(s)) for s in data["triangle"]))
        pts = None
        if data.get("points") is not None:
            pts = PointSet(Point(parse_rational(str(x)), parse_rational(str(y))) for x, y in data["points"])
        return CopyHypergraph(int(data["n"]), tuple(tuple(e) for e in data["edges"]), pts, T)
    except KeyError as exc:
        raise ParseError(f"hypergraph is missing {exc.args[0]!r}") from None


def dumps_hypergraph(H: CopyHypergraph) -> str:
    return json.dumps(H.to_json(), indent=2) + "\n"


@dataclass
class SolverResult:
    optimum: Optional[int]
    witness: list
    node_count: int
    deterministic: bool = True
    exceeds: Optional[int] = None  # set when no coloring with <= exceeds colors exists
    refutations: list = field(default_factory=list)

    def to_json(self):
        out = {
            "optimum": self.optimum,
            "witness": self.witness,
            "nodes": self.node_count,
            "deterministic": self.deterministic,
        }
        if self.exceeds is not None:
            out["exceeds"] = self.exceeds
        if self.refutations:
            out["refuted"] = self.refutations
        return out


def is_proper_coloring(H: CopyHypergraph, coloring) -> bool:
    return all(len({coloring[v] for v in e}) > 1 for e in H.edges)


def is_free_subset(H: CopyHypergraph, subset) -> bool:
    chosen = set(subset)
    return not any(all(v in chosen for v in e) for e in H.edges)


def hypergraph_chromatic(H: CopyHypergraph, k_max: int, node_limit: int = 0) -> SolverResult:
    """Fewest colors with no monochromatic edge, trying k = 1, 2, ... k_max."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    refuted, total = [], 0
    for k in range(1, k_max + 1):
        coloring, nodes, complete = kernels.hyper_color(H.vertex_count, H.edges, k, node_limit)
        total += nodes
        if not complete:
            raise BudgetExhausted(f"node limit hit while testing k={k}", best_observed=k)
        if coloring is not None:
            assert is_proper_coloring(H, coloring)
            return SolverResult(k, coloring, total, refutations=refuted)
        refuted.append({"k": k, "nodes": nodes})
    return SolverResult(None, [], total, exceeds=k_max, refutations=refuted)


def max_copy_free_subset(H: CopyHypergraph, node_limit: int = 0) -> SolverResult:
    """Largest vertex set containing no whole edge; lexicographically smallest optimum."""
    subset, nodes, complete = kernels.max_free_subset(H.vertex_count, H.edges, node_limit)
    if not complete:
        raise BudgetExhausted("node limit hit in the independent-set search",
                              best_observed=len(subset))
    assert is_free_subset(H, subset)
    return SolverResult(len(subset), list(subset), nodes)


# ------------------------------------------------------------ witness search

@dataclass
class WitnessResult:
    found: bool
    triangle: Triangle
    colors: int
    points: Optional[PointSet]
    span: Fraction  # side of the largest grid examined
    grid_points: int
    nodes: int
    note: str

    def to_json(self):
        out = {
            "found": self.found,
            "triangle": self.triangle.to_json(),
            "colors": self.colors,
            "span": format_rational(self.span),
            "grid_points": self.grid_points,
            "nodes": self.nodes,
            "note": self.note,
        }
        if self.points is not None:
            out["size"] = len(self.points)
            out["points"] = self.points.to_json()
        return out


def _needs_k(S: PointSet, T: Triangle, k: int, node_limit: int, threads: int):
    """(True if S cannot be (k-1)-colored, nodes used)."""
    H = build_copy_hypergraph(S, T, threads=threads)
    coloring, nodes, complete = kernels.hyper_color(len(S), H.edges, k - 1, node_limit)
    if not complete:
        raise BudgetExhausted(f"node limit hit on {len(S)} points", best_observed=k - 1)
    return coloring is None, nodes


def witness_search(T: Triangle, k: int, q: int, s, node_limit: int = 0,
                   threads: int = 1) -> WitnessResult:
    """Find a finite point set in ((1/q)Z)^2 that needs at least k colors.

    Grids [0, t]^2 are tried for t = 1/q, 2/q, ... up to s. The first grid
    that cannot be (k-1)-colored is shrunk by deleting points one at a time
    (in order) whenever the rest still needs k colors, giving a set where no
    single point can be dropped. That set is small, not necessarily minimum.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if q < 1:
        raise ValueError("grid denominator must be positive")
    s = as_rational(s)
    step = Fraction(1, q)
    total = 0
    span = step
    grid = PointSet()
    while span <= s:
        grid = PointSet.grid(step, span)
        bad, nodes = _needs_k(grid, T, k, node_limit, threads)
        total += nodes
        if bad:
            break
        span += step
    else:
        return WitnessResult(
            False, T, k, None, s, len(grid), total,
            f"every grid up to span {format_rational(s)} is {k - 1}-colorable",
        )
    # only points on some edge matter
    H = build_copy_hypergraph(grid, T, threads=threads)
    keep = sorted({v for e in H.edges for v in e})
    current = [grid[i] for i in keep]
    i = 0
    while i < len(current):
        trial = current[:i] + current[i + 1:]
        bad, nodes = _needs_k(PointSet(trial), T, k, node_limit, threads)
        total += nodes
        if bad:
            current = trial
        else:
            i += 1
    W = PointSet(current)
    return WitnessResult(
        True, T, k, W, span, len(grid), total,
        "no point can be removed; smaller witnesses may exist",
    )
