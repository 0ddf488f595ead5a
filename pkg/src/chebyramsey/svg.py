"""Static SVG pictures of colorings, point sets and copies.

Exact rationals become decimals only here, formatted with six significant
digits. The picture uses plane coordinates with y pointing up.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .geometry import PointSet
from .plane import DIAGONAL, GRID, HORIZONTAL, PlaneColoring
from .rational import as_rational

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]
SIZE = 480  # pixels per side of the drawing area
MARGIN = 12


def num(v) -> str:
    return "%.6g" % float(v)


class _Canvas:
    def __init__(self, x0, y0, width, height):
        self.x0, self.y0 = Fraction(x0), Fraction(y0)
        w, h = Fraction(width), Fraction(height)
        self.scale = Fraction(SIZE) / max(w, h, Fraction(1))
        self.w, self.h = w, h
        self.items = []

    def px(self, x, y):
        sx = MARGIN + (Fraction(x) - self.x0) * self.scale
        sy = MARGIN + (self.y0 + self.h - Fraction(y)) * self.scale
        return num(sx), num(sy)

    def polygon(self, pts, fill, extra=""):
        coords = " ".join(",".join(self.px(x, y)) for x, y in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}"{extra}/>')

    def polyline(self, pts, stroke, extra=""):
        coords = " ".join(",".join(self.px(x, y)) for x, y in pts)
        self.items.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="2"{extra}/>'
        )

    def circle(self, x, y, r, fill, cls, title=None):
        cx, cy = self.px(x, y)
        body = f"<title>{escape(title)}</title>" if title else ""
        self.items.append(
            f'<circle class="{cls}" cx="{cx}" cy="{cy}" r="{r}" fill="{fill}">{body}</circle>'
        )

    def render(self) -> str:
        W = num(2 * MARGIN + self.w * self.scale)
        H = num(2 * MARGIN + self.h * self.scale)
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
            f'viewBox="0 0 {W} {H}">\n'
        )
        return head + "".join(f"  {it}\n" for it in self.items) + "</svg>\n"


def _clip(poly, a, b, c):
    """Clip a convex polygon to the half-plane a*x + b*y <= c."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _color(i):
    return PALETTE[i % len(PALETTE)]


def _coloring_shapes(cv: _Canvas, P: PlaneColoring, W: Fraction):
    square = [(Fraction(0), Fraction(0)), (W, Fraction(0)), (W, W), (Fraction(0), W)]
    if P.kind in (HORIZONTAL, DIAGONAL):
        C = P.line
        hi_arg = W if P.kind == HORIZONTAL else 2 * W
        k = 0
        while k * C.period < hi_arg:
            base = k * C.period
            for lo, hi, col in C.intervals():
                lo, hi = base + lo, base + hi
                if lo >= hi_arg:
                    break
                if P.kind == HORIZONTAL:
                    band = _clip(_clip(square, 0, -1, -lo), 0, 1, hi)
                else:
                    band = _clip(_clip(square, -1, -1, -lo), 1, 1, hi)
                if len(band) >= 3:
                    cv.polygon(band, _color(col))
            k += 1
        return
    if P.kind == GRID:
        wx, wy = P.cell_size
        nx, ny = len(P.table), len(P.table[0])
        ix = 0
        while ix * wx < W:
            iy = 0
            while iy * wy < W:
                x0, y0 = ix * wx, iy * wy
                cell = [(x0, y0), (min(x0 + wx, W), y0), (min(x0 + wx, W), min(y0 + wy, W)),
                        (x0, min(y0 + wy, W))]
                cv.polygon(cell, _color(P.table[ix % nx][iy % ny]))
                iy += 1
            ix += 1


def render_svg(coloring=None, points=None, copies=(), window=None) -> str:
    """Draw a coloring of [0, window]^2, a point set, and copy triples.

    ``copies`` holds triples of points or of indices into ``points``.
    """
    pts = list(points) if points is not None else []
    tris = []
    for tri in copies:
        tri = [pts[v] if isinstance(v, int) else v for v in tri]
        tris.append(tri)
    if window is not None:
        W = as_rational(window)
        x0 = y0 = Fraction(0)
        span = W
    elif pts:
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        x0, y0 = min(xs) - 1, min(ys) - 1
        span = max(max(xs) - x0, max(ys) - y0) + 1
        W = None
    else:
        x0 = y0 = Fraction(0)
        span = Fraction(1)
        W = None
    cv = _Canvas(x0, y0, span, span)
    if coloring is not None:
        if W is None:
            raise ValueError("rendering a coloring needs a window")
        _coloring_shapes(cv, coloring, W)
    for tri in tris:
        corners = [(p.x, p.y) for p in tri]
        cv.polyline(corners + corners[:1], "#000000", ' class="copy" stroke-opacity="0.7"')
    for p in pts:
        cv.circle(p.x, p.y, 5, "#000000", "point", f"({num(p.x)}, {num(p.y)})")
    for tri in tris:
        for p in tri:
            cv.circle(p.x, p.y, 3, "#ffd700", "vertex")
    return cv.render()


def render_point_set(S: PointSet, copies=()) -> str:
    return render_svg(points=S, copies=copies)


def count_class(svg: str, cls: str) -> int:
    return svg.count(f'class="{cls}"')

