"""Bounds on the largest density of a copy-free subset of Z or Z^2.

Lower bounds come from periodic sets: a set of cells of the torus
Z^d / (n, m) whose periodic extension contains no copy of T. Upper bounds
come from finite patches: if alpha is the largest copy-free subset of an
n x m patch, every copy-free set has density at most alpha / (n m), since
some translate of the patch meets it in at least its average share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .errors import BudgetExhausted, NonIntegralSides, ProductNotCopyFree
from .geometry import Point, PointSet, Triangle, enumerate_copies, first_monochromatic_copy
from .rational import format_rational


def _check_integral(T: Triangle):
    if not T.is_integral:
        raise NonIntegralSides(f"{T} has non-integer sides; rescale with scale_instance first")


def _norm_dims(dims) -> tuple:
    dims = tuple(int(d) for d in (dims if isinstance(dims, (tuple, list)) else (dims,)))
    if len(dims) not in (1, 2) or any(d < 1 for d in dims):
        raise ValueError("dims must be (n) or (n, m) with positive entries")
    return dims


def _cells(dims):
    if len(dims) == 1:
        return [(i, 0) for i in range(dims[0])]
    n, m = dims
    return [(i, j) for i in range(n) for j in range(m)]


def _cell_label(cell, dims):
    return cell[0] if len(dims) == 1 else [cell[0], cell[1]]


def _padded(dims, pad):
    """Lattice points of the base box grown by ``pad`` on every side."""
    if len(dims) == 1:
        return [(x, 0) for x in range(-pad, dims[0] + pad)]
    n, m = dims
    return [(x, y) for x in range(-pad, n + pad) for y in range(-pad, m + pad)]


@dataclass(frozen=True)
class PeriodicSet:
    """Cells of the torus Z^d / dims; the set is their periodic extension."""

    dims: tuple
    cells: tuple

    def __post_init__(self):
        dims = _norm_dims(self.dims)
        cells = []
        for c in self.cells:
            c = (int(c), 0) if len(dims) == 1 and not isinstance(c, (tuple, list)) else tuple(int(v) for v in c)
            if len(dims) == 1:
                c = (c[0] % dims[0], 0)
            else:
                c = (c[0] % dims[0], c[1] % dims[1])
            cells.append(c)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cells", tuple(sorted(set(cells))))

    @property
    def size(self) -> int:
        n = 1
        for d in self.dims:
            n *= d
        return n

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.cells), self.size)

    def contains(self, x: int, y: int = 0) -> bool:
        if len(self.dims) == 1:
            return (x % self.dims[0], 0) in self.cells
        return (x % self.dims[0], y % self.dims[1]) in self.cells

    def to_json(self):
        return {
            "dims": list(self.dims),
            "cells": [_cell_label(c, self.dims) for c in self.cells],
            "density": format_rational(self.density),
        }


def periodic_copy(T: Triangle, S: PeriodicSet, threads: int = 1):
    """A copy of T inside the periodic extension of S, or None.

    Any copy has l-inf diameter c, so translating one of its vertices into
    the base box keeps the whole copy inside the box grown by c.
    """
    _check_integral(T)
    pad = int(T.c)
    pts = PointSet(Point(x, y) for x, y in _padded(S.dims, pad) if S.contains(x, y))
    if len(pts) < 3:
        return None
    triple, _ = first_monochromatic_copy(pts, T, [0] * len(pts), threads=threads)
    if triple is None:
        return None
    return tuple(pts[i] for i in triple)


def torus_hypergraph(T: Triangle, dims, threads: int = 1):
    """Constraints on torus cells from copies of T in the periodic extension.

    Returns (forced_out, edges): cells that cannot be used at all, and
    pair/triple edges over cell indices (no edge may be fully chosen).
    """
    _check_integral(T)
    dims = _norm_dims(dims)
    cells = _cells(dims)
    index = {c: i for i, c in enumerate(cells)}
    pad = int(T.c)
    pts = PointSet(Point(x, y) for x, y in _padded(dims, pad))

    def cell_of(p):
        if len(dims) == 1:
            return index[(int(p.x) % dims[0], 0)]
        return index[(int(p.x) % dims[0], int(p.y) % dims[1])]

    def in_box(p):
        if len(dims) == 1:
            return 0 <= p.x < dims[0]
        return 0 <= p.x < dims[0] and 0 <= p.y < dims[1]

    forced, edges = set(), set()
    for tri in enumerate_copies(pts, T, threads=threads):
        zs = [pts[i] for i in tri]
        if not any(in_box(z) for z in zs):
            continue
        e = tuple(sorted({cell_of(z) for z in zs}))
        if len(e) == 1:
            forced.add(e[0])
        else:
            edges.add(e)
    return sorted(forced), sorted(edges)


@dataclass
class DensityBound:
    dimension: int
    triangle: Triangle
    torus: Optional[PeriodicSet] = None
    patch_dims: Optional[tuple] = None
    alpha: Optional[int] = None
    torus_nodes: int = 0
    patch_nodes: int = 0

    @property
    def lower(self) -> Optional[Fraction]:
        return None if self.torus is None else self.torus.density

    @property
    def upper(self) -> Optional[Fraction]:
        if self.alpha is None:
            return None
        size = 1
        for d in self.patch_dims:
            size *= d
        return Fraction(self.alpha, size)

    def merged(self, other: "DensityBound") -> "DensityBound":
        return DensityBound(
            self.dimension, self.triangle,
            self.torus if self.torus is not None else other.torus,
            self.patch_dims if self.patch_dims is not None else other.patch_dims,
            self.alpha if self.alpha is not None else other.alpha,
            self.torus_nodes or other.torus_nodes,
            self.patch_nodes or other.patch_nodes,
        )

    def to_json(self):
        out = {"dimension": self.dimension, "triangle": self.triangle.to_json()}
        if self.torus is not None:
            out["torus"] = {
                "dims": list(self.torus.dims),
                "witness": [_cell_label(c, self.torus.dims) for c in self.torus.cells],
                "lower": format_rational(self.lower),
                "nodes": self.torus_nodes,
            }
        if self.alpha is not None:
            out["patch"] = {
                "dims": list(self.patch_dims),
                "alpha": self.alpha,
                "upper": format_rational(self.upper),
                "nodes": self.patch_nodes,
            }
        return out


def _solve_mis(n, edges, node_limit):
    subset, nodes, complete = kernels.max_free_subset(n, edges, node_limit)
    if not complete:
        raise BudgetExhausted("node limit hit in the independent-set search",
                              best_observed=len(subset))
    return subset, nodes


def density_lower_torus(T: Triangle, dims, node_limit: int = 0, threads: int = 1) -> DensityBound:
    """Densest cell set of the torus whose periodic extension is copy-free."""
    dims = _norm_dims(dims)
    forced, edges = torus_hypergraph(T, dims, threads=threads)
    cells = _cells(dims)
    free = [i for i in range(len(cells)) if i not in set(forced)]
    remap = {v: i for i, v in enumerate(free)}
    sub_edges = [tuple(remap[v] for v in e) for e in edges if all(v in remap for v in e)]
    subset, nodes = _solve_mis(len(free), sub_edges, node_limit)
    S = PeriodicSet(dims, [cells[free[i]] for i in subset])
    if periodic_copy(T, S, threads=threads) is not None:
        raise AssertionError("torus witness failed the periodic re-check")
    return DensityBound(len(dims), T, torus=S, torus_nodes=nodes)


def density_upper_patch(T: Triangle, dims, node_limit: int = 0, threads: int = 1) -> DensityBound:
    """alpha(patch) / |patch| for the patch [0, n) x [0, m) without wraparound."""
    _check_integral(T)
    dims = _norm_dims(dims)
    pts = PointSet(Point(x, y) for x, y in _cells(dims))
    edges = enumerate_copies(pts, T, threads=threads)
    subset, nodes = _solve_mis(len(pts), edges, node_limit)
    return DensityBound(len(dims), T, patch_dims=dims, alpha=len(subset), patch_nodes=nodes)


def density_bounds(T: Triangle, torus_dims, patch_dims, node_limit: int = 0,
                   threads: int = 1) -> DensityBound:
    lo = density_lower_torus(T, torus_dims, node_limit, threads)
    hi = density_upper_patch(T, patch_dims, node_limit, threads)
    if len(lo.torus.dims) != len(hi.patch_dims):
        raise ValueError("torus and patch must have the same dimension")
    return lo.merged(hi)


def product_construction(S1: PeriodicSet, T: Triangle, threads: int = 1) -> PeriodicSet:
    """S1 x S1 on the (n, n) torus, re-checked for copies before returning."""
    if len(S1.dims) != 1:
        raise ValueError("product_construction takes a one-dimensional periodic set")
    n = S1.dims[0]
    xs = [c[0] for c in S1.cells]
    S2 = PeriodicSet((n, n), [(x, y) for x in xs for y in xs])
    bad = periodic_copy(T, S2, threads=threads)
    if bad is not None:
        raise ProductNotCopyFree(
            f"the product set contains the copy {list(bad)}", copy=bad,
        )
    return S2
