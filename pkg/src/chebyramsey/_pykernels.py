"""Pure-Python hot kernels.

Reference implementation of the routines in ``_ckernels.pyx``. Both modules
expose the same functions with identical results, including node counts, so
either can back the public API.

All coordinates and side lengths handed to these kernels are plain integers
(callers scale rational data by a common denominator first).
"""

from __future__ import annotations

import sys

BACKEND = "python"


class _Budget(Exception):
    pass


def _ring(px, py, s):
    for y in range(py - s, py + s + 1):
        yield px - s, y
        yield px + s, y
    for x in range(px - s + 1, px + s):
        yield x, py - s
        yield x, py + s


def ring_meet(px, py, r, qx, qy, t):
    """Lattice pieces of {k : |k-p|_inf = r and |k-q|_inf = t}.

    Returns tuples ``(axis, fixed, lo, hi)``: axis ``"v"`` is the vertical
    run x = fixed, lo <= y <= hi; ``"h"`` is y = fixed, lo <= x <= hi.
    Pieces are pairwise disjoint.
    """
    pieces = []
    for kx in (px - r, px + r):
        ux = abs(kx - qx)
        if ux > t:
            continue
        if ux == t:
            lo = max(py - r, qy - t)
            hi = min(py + r, qy + t)
            if lo <= hi:
                pieces.append(("v", kx, lo, hi))
        else:
            for ky in (qy - t, qy + t):
                if py - r <= ky <= py + r:
                    pieces.append(("v", kx, ky, ky))
    # corners already belong to the vertical sides, hence the open x-range
    for ky in (py - r, py + r):
        uy = abs(ky - qy)
        if uy > t:
            continue
        if uy == t:
            lo = max(px - r + 1, qx - t)
            hi = min(px + r - 1, qx + t)
            if lo <= hi:
                pieces.append(("h", ky, lo, hi))
        else:
            for kx in (qx - t, qx + t):
                if px - r < kx < px + r:
                    pieces.append(("h", ky, kx, kx))
    return pieces


def copy_triples(xs, ys, a, b, c, lo=0, hi=None, colors=None, first_only=False):
    """Index triples i<j<k (lo <= i < hi) whose pairwise distances are {a,b,c}.

    Points must be distinct and sorted lexicographically. With ``colors``
    only monochromatic triples are returned. ``first_only`` stops after the
    first base index i that yields output. Returns ``(triples, copies_seen)``.
    """
    n = len(xs)
    if hi is None:
        hi = n
    index = {(x, y): i for i, (x, y) in enumerate(zip(xs, ys))}
    sides = (a, b, c)
    distinct = sorted(set(sides))
    ring_cost = sum(8 * s for s in distinct)
    out = []
    seen = 0
    for i in range(lo, hi):
        px, py = xs[i], ys[i]
        nbrs = []
        if ring_cost < n - i - 1:
            for s in distinct:
                for key in _ring(px, py, s):
                    j = index.get(key)
                    if j is not None and j > i:
                        nbrs.append((j, s))
        else:
            for j in range(i + 1, n):
                d = max(abs(xs[j] - px), abs(ys[j] - py))
                if d in distinct:
                    nbrs.append((j, d))
        local = []
        for j, s in nbrs:
            rest = list(sides)
            rest.remove(s)
            t, u = rest
            orders = ((t, u),) if t == u else ((t, u), (u, t))
            qx, qy = xs[j], ys[j]
            for ri, rj in orders:
                pieces = ring_meet(px, py, ri, qx, qy, rj)
                count = sum(p[3] - p[2] + 1 for p in pieces)
                found = []
                if count > n - j - 1:
                    for k in range(j + 1, n):
                        if (max(abs(xs[k] - px), abs(ys[k] - py)) == ri
                                and max(abs(xs[k] - qx), abs(ys[k] - qy)) == rj):
                            found.append(k)
                else:
                    for axis, fixed, plo, phi in pieces:
                        for v in range(plo, phi + 1):
                            k = index.get((fixed, v) if axis == "v" else (v, fixed))
                            if k is not None and k > j:
                                found.append(k)
                for k in found:
                    seen += 1
                    if colors is None or colors[i] == colors[j] == colors[k]:
                        local.append((j, k))
        if local:
            local.sort()
            out.extend((i, j, k) for j, k in local)
            if first_only:
                break
    return out, seen


def _incidence(n, edges):
    inc = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            inc[v].append(tuple(u for u in e if u != v))
    return inc


def hyper_color(n, edges, k, node_limit=0):
    """Find a k-coloring with no monochromatic edge.

    ``edges`` are tuples of 2 or 3 distinct vertices. Branching picks the
    uncolored vertex with the most forbidden colors, then highest degree,
    then lowest index; colors are tried in increasing order with the usual
    "at most one new color" symmetry breaking. An edge with all but one
    vertex in color c forbids c on the remaining vertex.

    Returns ``(coloring or None, nodes, complete)``; ``complete`` is False
    when ``node_limit`` (0 = unlimited) stopped the search.
    """
    if n == 0:
        return [], 0, True
    inc = _incidence(n, edges)
    degree = [len(x) for x in inc]
    colors = [-1] * n
    forb = [[0] * k for _ in range(n)]
    nforb = [0] * n
    nodes = 0

    def forbid(u, c, changes):
        if forb[u][c] == 0:
            nforb[u] += 1
        forb[u][c] += 1
        changes.append(u)
        return nforb[u] == k

    def dfs(depth, maxused):
        nonlocal nodes
        if depth == n:
            return True
        best = -1
        bkey = None
        for v in range(n):
            if colors[v] == -1:
                key = (nforb[v], degree[v])
                if bkey is None or key > bkey:
                    best, bkey = v, key
        v = best
        fv = forb[v]
        for c in range(min(k, maxused + 2)):
            if fv[c]:
                continue
            nodes += 1
            if node_limit and nodes > node_limit:
                raise _Budget
            colors[v] = c
            changes = []
            dead = False
            for others in inc[v]:
                if len(others) == 1:
                    u = others[0]
                    if colors[u] == -1:
                        dead |= forbid(u, c, changes)
                else:
                    u, w = others
                    if colors[u] == c and colors[w] == -1:
                        dead |= forbid(w, c, changes)
                    elif colors[w] == c and colors[u] == -1:
                        dead |= forbid(u, c, changes)
            if not dead and dfs(depth + 1, max(maxused, c)):
                return True
            for u in changes:
                forb[u][c] -= 1
                if forb[u][c] == 0:
                    nforb[u] -= 1
            colors[v] = -1
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 200))
    try:
        ok = dfs(0, -1)
    except _Budget:
        return None, nodes, False
    finally:
        sys.setrecursionlimit(old)
    return (list(colors) if ok else None), nodes, True


def max_free_subset(n, edges, node_limit=0):
    """Maximum vertex subset containing no complete edge.

    Branch and bound in index order, include-branch first, with two upper
    bounds: a Russian-doll table of optimal values on suffixes {i..n-1}, and
    the remaining-vertex count minus a greedy packing of live edges with
    disjoint undecided parts. The first optimum met in this order is the
    lexicographically smallest one.

    Returns ``(subset, nodes, complete)``.
    """
    if n == 0:
        return [], 0, True
    closing = [[] for _ in range(n)]
    for e in edges:
        m = max(e)
        closing[m].append(tuple(u for u in e if u != m))
    edge_list = [tuple(sorted(e)) for e in edges]
    state = [0] * n  # 0 undecided, 1 in, -1 out
    rd = [0] * (n + 1)
    nodes = 0
    mark = [0] * n
    stamp = 0

    def packing(i, start):
        nonlocal stamp
        stamp += 1
        got = 0
        for want in (1, 2, 3):
            for e in edge_list:
                if e[0] < start:
                    continue
                und = 0
                live = True
                for v in e:
                    if v >= i:
                        und += 1
                    elif state[v] != 1:
                        live = False
                        break
                if not live or und != want:
                    continue
                if any(mark[v] == stamp for v in e if v >= i):
                    continue
                for v in e:
                    if v >= i:
                        mark[v] = stamp
                got += 1
        return got

    def search(i, size, target, start):
        # True once a set of size `target` is reached; chosen vertices stay in state
        nonlocal nodes
        if size >= target:
            return True
        if i == n:
            return False
        if size + rd[i] < target:
            return False
        if size + (n - i) - packing(i, start) < target:
            return False
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Budget
        if all(any(state[u] != 1 for u in others) for others in closing[i]):
            state[i] = 1
            if search(i + 1, size + 1, target, start):
                return True
        state[i] = -1
        if search(i + 1, size, target, start):
            return True
        state[i] = 0
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 200))
    try:
        for j in range(n - 1, -1, -1):
            for v in range(j):
                state[v] = -1
            for v in range(j, n):
                state[v] = 0
            state[j] = 1
            nodes += 1
            if search(j + 1, 1, rd[j + 1] + 1, j):
                rd[j] = rd[j + 1] + 1
            else:
                rd[j] = rd[j + 1]
        state[:] = [0] * n
        if not search(0, 0, rd[0], 0):
            raise AssertionError("optimum not reproduced")
    except _Budget:
        return [], nodes, False
    finally:
        sys.setrecursionlimit(old)
    return [v for v in range(n) if state[v] == 1], nodes, True
