# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; same contract and results as ``_pykernels``."""

from libcpp.vector cimport vector
from libcpp.algorithm cimport sort

BACKEND = "cython"

ctypedef long long i64


cdef struct Piece:
    int axis        # 0: x fixed, run in y; 1: y fixed, run in x
    i64 fixed
    i64 lo
    i64 hi


cdef inline i64 _abs(i64 v) noexcept nogil:
    return -v if v < 0 else v


cdef inline i64 _max(i64 a, i64 b) noexcept nogil:
    return a if a > b else b


cdef inline i64 _min(i64 a, i64 b) noexcept nogil:
    return a if a < b else b


cdef inline i64 _dist(const i64* xs, const i64* ys, Py_ssize_t i, i64 px, i64 py) noexcept nogil:
    return _max(_abs(xs[i] - px), _abs(ys[i] - py))


cdef int _ring_meet(i64 px, i64 py, i64 r, i64 qx, i64 qy, i64 t, Piece* out) noexcept nogil:
    cdef int m = 0
    cdef int s, sv
    cdef i64 kx, ky, u, lo, hi, v
    for s in range(2):
        kx = px - r if s == 0 else px + r
        u = _abs(kx - qx)
        if u > t:
            continue
        if u == t:
            lo = _max(py - r, qy - t)
            hi = _min(py + r, qy + t)
            if lo <= hi:
                out[m].axis = 0; out[m].fixed = kx; out[m].lo = lo; out[m].hi = hi
                m += 1
        else:
            for sv in range(2):
                v = qy - t if sv == 0 else qy + t
                if py - r <= v <= py + r:
                    out[m].axis = 0; out[m].fixed = kx; out[m].lo = v; out[m].hi = v
                    m += 1
    for s in range(2):
        ky = py - r if s == 0 else py + r
        u = _abs(ky - qy)
        if u > t:
            continue
        if u == t:
            lo = _max(px - r + 1, qx - t)
            hi = _min(px + r - 1, qx + t)
            if lo <= hi:
                out[m].axis = 1; out[m].fixed = ky; out[m].lo = lo; out[m].hi = hi
                m += 1
        else:
            for sv in range(2):
                v = qx - t if sv == 0 else qx + t
                if px - r < v < px + r:
                    out[m].axis = 1; out[m].fixed = ky; out[m].lo = v; out[m].hi = v
                    m += 1
    return m


cdef Py_ssize_t _lower(const i64* xs, const i64* ys, Py_ssize_t n, i64 x, i64 y) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if xs[mid] < x or (xs[mid] == x and ys[mid] < y):
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef void _collect_run(const i64* xs, const i64* ys, Py_ssize_t n, int axis, i64 fixed,
                       i64 lo, i64 hi, Py_ssize_t after, vector[Py_ssize_t]& found) noexcept nogil:
    # indices > after lying on the lattice run
    cdef Py_ssize_t p
    cdef i64 v
    if axis == 0:
        p = _lower(xs, ys, n, fixed, lo)
        while p < n and xs[p] == fixed and ys[p] <= hi:
            if p > after:
                found.push_back(p)
            p += 1
    else:
        for v in range(lo, hi + 1):
            p = _lower(xs, ys, n, v, fixed)
            if p < n and xs[p] == v and ys[p] == fixed and p > after:
                found.push_back(p)


cdef i64 _copies_core(const i64* xs, const i64* ys, Py_ssize_t n, i64 a, i64 b, i64 c,
                      Py_ssize_t lo, Py_ssize_t hi, const int* colors, bint first_only,
                      vector[i64]& out) noexcept nogil:
    cdef i64 sides[3]
    cdef i64 distinct[3]
    cdef int nd = 0, q, o, norders, np_, pi
    cdef i64 ring_cost = 0, s, t, u, ri, rj, px, py, qx, qy, count, d, key
    cdef Py_ssize_t i, j, k, idx, idx2
    cdef i64 seen = 0
    cdef Piece pieces[8]
    cdef vector[Py_ssize_t] nbr_j
    cdef vector[i64] nbr_s
    cdef vector[Py_ssize_t] found
    cdef vector[Py_ssize_t] ring_found
    cdef vector[i64] local
    cdef i64 orders[2][2]
    sides[0] = a; sides[1] = b; sides[2] = c
    for q in range(3):
        if nd == 0 or distinct[nd - 1] != sides[q]:
            distinct[nd] = sides[q]
            nd += 1
    for q in range(nd):
        ring_cost += 8 * distinct[q]

    for i in range(lo, hi):
        px = xs[i]; py = ys[i]
        nbr_j.clear(); nbr_s.clear()
        if ring_cost < n - i - 1:
            for q in range(nd):
                s = distinct[q]
                ring_found.clear()
                _collect_run(xs, ys, n, 0, px - s, py - s, py + s, i, ring_found)
                _collect_run(xs, ys, n, 0, px + s, py - s, py + s, i, ring_found)
                _collect_run(xs, ys, n, 1, py - s, px - s + 1, px + s - 1, i, ring_found)
                _collect_run(xs, ys, n, 1, py + s, px - s + 1, px + s - 1, i, ring_found)
                for idx in range(<Py_ssize_t>ring_found.size()):
                    nbr_j.push_back(ring_found[idx]); nbr_s.push_back(s)
        else:
            for j in range(i + 1, n):
                d = _dist(xs, ys, j, px, py)
                for q in range(nd):
                    if d == distinct[q]:
                        nbr_j.push_back(j); nbr_s.push_back(d)
                        break
        local.clear()
        for idx in range(<Py_ssize_t>nbr_j.size()):
            j = nbr_j[idx]; s = nbr_s[idx]
            # remaining two sides after removing one copy of s
            if s == a:
                t = b; u = c
            elif s == b:
                t = a; u = c
            else:
                t = a; u = b
            orders[0][0] = t; orders[0][1] = u
            orders[1][0] = u; orders[1][1] = t
            norders = 1 if t == u else 2
            qx = xs[j]; qy = ys[j]
            for o in range(norders):
                ri = orders[o][0]; rj = orders[o][1]
                np_ = _ring_meet(px, py, ri, qx, qy, rj, pieces)
                count = 0
                for pi in range(np_):
                    count += pieces[pi].hi - pieces[pi].lo + 1
                found.clear()
                if count > n - j - 1:
                    for k in range(j + 1, n):
                        if _dist(xs, ys, k, px, py) == ri and _dist(xs, ys, k, qx, qy) == rj:
                            found.push_back(k)
                else:
                    for pi in range(np_):
                        _collect_run(xs, ys, n, pieces[pi].axis, pieces[pi].fixed,
                                     pieces[pi].lo, pieces[pi].hi, j, found)
                for idx2 in range(<Py_ssize_t>found.size()):
                    k = found[idx2]
                    seen += 1
                    if colors == NULL or (colors[i] == colors[j] and colors[j] == colors[k]):
                        local.push_back(<i64>j * n + k)
        if local.size() > 0:
            sort(local.begin(), local.end())
            for idx in range(<Py_ssize_t>local.size()):
                key = local[idx]
                out.push_back(i)
                out.push_back(key // n)
                out.push_back(key % n)
            if first_only:
                break
    return seen


def copy_triples(xs, ys, a, b, c, lo=0, hi=None, colors=None, first_only=False):
    """See ``_pykernels.copy_triples``."""
    cdef Py_ssize_t n = len(xs)
    cdef vector[i64] vx, vy
    cdef vector[int] vc
    cdef vector[i64] out
    cdef i64 seen
    cdef const int* cptr = NULL
    cdef Py_ssize_t clo = lo, chi = n if hi is None else hi
    cdef i64 ca = a, cb = b, cc = c
    cdef bint cfirst = first_only
    vx.reserve(n); vy.reserve(n)
    for v in xs:
        vx.push_back(v)
    for v in ys:
        vy.push_back(v)
    if colors is not None:
        for v in colors:
            vc.push_back(v)
        cptr = vc.data()
    with nogil:
        seen = _copies_core(vx.data(), vy.data(), n, ca, cb, cc, clo, chi, cptr, cfirst, out)
    res = [(out[p], out[p + 1], out[p + 2]) for p in range(0, <Py_ssize_t>out.size(), 3)]
    return res, seen


# ---------------------------------------------------------------- coloring

cdef class _Colorer:
    cdef int n, k
    cdef vector[vector[int]] inc_u
    cdef vector[vector[int]] inc_w
    cdef vector[int] degree, colors, nforb
    cdef vector[int] forb
    cdef long long nodes, node_limit
    cdef bint out_of_budget

    cdef bint _forbid(self, int u, int c, vector[int]& changes):
        cdef int p = u * self.k + c
        if self.forb[p] == 0:
            self.nforb[u] += 1
        self.forb[p] += 1
        changes.push_back(u)
        return self.nforb[u] == self.k

    cdef bint dfs(self, int depth, int maxused):
        cdef int v, best = -1, bf = -1, bd = -1, c, top, idx, u, w, p
        cdef bint dead
        cdef vector[int] changes
        if depth == self.n:
            return True
        for v in range(self.n):
            if self.colors[v] == -1:
                if self.nforb[v] > bf or (self.nforb[v] == bf and self.degree[v] > bd):
                    best = v; bf = self.nforb[v]; bd = self.degree[v]
        v = best
        top = self.k if self.k < maxused + 2 else maxused + 2
        for c in range(top):
            if self.forb[v * self.k + c]:
                continue
            self.nodes += 1
            if self.node_limit and self.nodes > self.node_limit:
                self.out_of_budget = True
                return False
            self.colors[v] = c
            changes.clear()
            dead = False
            for idx in range(<int>self.inc_u[v].size()):
                u = self.inc_u[v][idx]
                w = self.inc_w[v][idx]
                if w < 0:
                    if self.colors[u] == -1:
                        dead |= self._forbid(u, c, changes)
                else:
                    if self.colors[u] == c and self.colors[w] == -1:
                        dead |= self._forbid(w, c, changes)
                    elif self.colors[w] == c and self.colors[u] == -1:
                        dead |= self._forbid(u, c, changes)
            if not dead and self.dfs(depth + 1, maxused if maxused > c else c):
                return True
            for idx in range(<int>changes.size()):
                u = changes[idx]
                p = u * self.k + c
                self.forb[p] -= 1
                if self.forb[p] == 0:
                    self.nforb[u] -= 1
            self.colors[v] = -1
            if self.out_of_budget:
                return False
        return False


def hyper_color(n, edges, k, node_limit=0):
    """See ``_pykernels.hyper_color``."""
    if n == 0:
        return [], 0, True
    cdef _Colorer s = _Colorer()
    s.n = n
    s.k = k
    s.inc_u.resize(n)
    s.inc_w.resize(n)
    for e in edges:
        for v in e:
            others = [u for u in e if u != v]
            s.inc_u[v].push_back(others[0])
            s.inc_w[v].push_back(others[1] if len(others) > 1 else -1)
    s.degree.resize(n)
    for v in range(n):
        s.degree[v] = s.inc_u[v].size()
    s.colors.assign(n, -1)
    s.nforb.assign(n, 0)
    s.forb.assign(n * k, 0)
    s.nodes = 0
    s.node_limit = node_limit
    s.out_of_budget = False
    ok = s.dfs(0, -1)
    if s.out_of_budget:
        return None, s.nodes, False
    return ([s.colors[v] for v in range(n)] if ok else None), s.nodes, True


# ------------------------------------------------------- max free subset

cdef class _Packer:
    cdef int n
    cdef vector[vector[int]] close_u
    cdef vector[vector[int]] close_w
    cdef vector[int] e0, e1, e2
    cdef vector[int] state, rd, mark
    cdef int stamp
    cdef long long nodes, node_limit
    cdef bint out_of_budget

    cdef int packing(self, int i, int start):
        cdef int got = 0, want, e, und, q, v, m = self.e0.size()
        cdef int vs[3]
        cdef bint live, clash
        self.stamp += 1
        for want in range(1, 4):
            for e in range(m):
                if self.e0[e] < start:
                    continue
                vs[0] = self.e0[e]; vs[1] = self.e1[e]; vs[2] = self.e2[e]
                und = 0
                live = True
                for q in range(3):
                    v = vs[q]
                    if v < 0:
                        continue
                    if v >= i:
                        und += 1
                    elif self.state[v] != 1:
                        live = False
                        break
                if not live or und != want:
                    continue
                clash = False
                for q in range(3):
                    v = vs[q]
                    if v >= i and self.mark[v] == self.stamp:
                        clash = True
                        break
                if clash:
                    continue
                for q in range(3):
                    v = vs[q]
                    if v >= i:
                        self.mark[v] = self.stamp
                got += 1
        return got

    cdef bint search(self, int i, int size, int target, int start):
        cdef int idx, u, w
        cdef bint can
        if size >= target:
            return True
        if i == self.n:
            return False
        if size + self.rd[i] < target:
            return False
        if size + (self.n - i) - self.packing(i, start) < target:
            return False
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            self.out_of_budget = True
            return False
        can = True
        for idx in range(<int>self.close_u[i].size()):
            u = self.close_u[i][idx]
            w = self.close_w[i][idx]
            if self.state[u] == 1 and (w < 0 or self.state[w] == 1):
                can = False
                break
        if can:
            self.state[i] = 1
            if self.search(i + 1, size + 1, target, start):
                return True
            if self.out_of_budget:
                return False
        self.state[i] = -1
        if self.search(i + 1, size, target, start):
            return True
        self.state[i] = 0
        return False


def max_free_subset(n, edges, node_limit=0):
    """See ``_pykernels.max_free_subset``."""
    if n == 0:
        return [], 0, True
    cdef _Packer s = _Packer()
    cdef int j, v
    s.n = n
    s.close_u.resize(n)
    s.close_w.resize(n)
    for e in edges:
        m = max(e)
        others = [u for u in e if u != m]
        s.close_u[m].push_back(others[0])
        s.close_w[m].push_back(others[1] if len(others) > 1 else -1)
        se = sorted(e)
        s.e0.push_back(se[0])
        s.e1.push_back(se[1])
        s.e2.push_back(se[2] if len(se) > 2 else -1)
    s.state.assign(n, 0)
    s.rd.assign(n + 1, 0)
    s.mark.assign(n, 0)
    s.stamp = 0
    s.nodes = 0
    s.node_limit = node_limit
    s.out_of_budget = False
    for j in range(n - 1, -1, -1):
        for v in range(n):
            s.state[v] = -1 if v < j else 0
        s.state[j] = 1
        s.nodes += 1
        found = s.search(j + 1, 1, s.rd[j + 1] + 1, j)
        if s.out_of_budget:
            return [], s.nodes, False
        s.rd[j] = s.rd[j + 1] + 1 if found else s.rd[j + 1]
    for v in range(n):
        s.state[v] = 0
    found = s.search(0, 0, s.rd[0], 0)
    if s.out_of_budget:
        return [], s.nodes, False
    if not found:
        raise AssertionError("optimum not reproduced")
    return [v for v in range(n) if s.state[v] == 1], s.nodes, True
