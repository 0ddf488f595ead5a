"""Period/anti-period deductions for two-colorings with no monochromatic copy.

Nothing here searches for proofs. Each function replays a fixed argument on
concrete rational side lengths and emits *obligations*: the finite facts
the argument rests on (three points form a copy, a point lies on a segment,
two segments are mirror images). Each obligation is checked with exact
arithmetic when it is created.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DegenerateTriangleUnsupported,
    HypothesisViolated,
    PairDoesNotMatchCase,
)
from .geometry import Point, Triangle, is_copy
from .plane import ANTI_PERIOD, PERIOD, LabeledShift, ShiftVector
from .rational import as_rational, format_rational

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
DEFAULT_BOUND = 50


@dataclass(frozen=True)
class Segment:
    """Closed axis-parallel segment starting at ``anchor``."""

    axis: str
    anchor: Point
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "length", as_rational(self.length))
        if self.length < 0:
            raise ValueError("segment length must be nonnegative")

    @classmethod
    def between(cls, p: Point, q: Point) -> "Segment":
        if p.y == q.y:
            lo, hi = sorted((p, q))
            return cls(HORIZONTAL, lo, hi.x - lo.x)
        if p.x == q.x:
            lo, hi = sorted((p, q))
            return cls(VERTICAL, lo, hi.y - lo.y)
        raise ValueError("endpoints are not axis-aligned")

    @property
    def end(self) -> Point:
        if self.axis == HORIZONTAL:
            return Point(self.anchor.x + self.length, self.anchor.y)
        return Point(self.anchor.x, self.anchor.y + self.length)

    def at(self, frac) -> Point:
        t = as_rational(frac) * self.length
        if self.axis == HORIZONTAL:
            return Point(self.anchor.x + t, self.anchor.y)
        return Point(self.anchor.x, self.anchor.y + t)

    def samples(self, k: int = 4) -> list:
        return [self.at(Fraction(i, k)) for i in range(k + 1)]

    def contains(self, p: Point) -> bool:
        if self.axis == HORIZONTAL:
            return p.y == self.anchor.y and self.anchor.x <= p.x <= self.anchor.x + self.length
        return p.x == self.anchor.x and self.anchor.y <= p.y <= self.anchor.y + self.length

    def to_json(self):
        return {
            "axis": self.axis,
            "from": self.anchor.to_json(),
            "to": self.end.to_json(),
            "length": format_rational(self.length),
        }


@dataclass(frozen=True)
class Obligation:
    kind: str
    points: tuple
    expected: str
    verified: bool
    note: str = ""

    def to_json(self):
        out = {
            "kind": self.kind,
            "points": [p.to_json() for p in self.points],
            "expected": self.expected,
            "verified": self.verified,
        }
        if self.note:
            out["note"] = self.note
        return out


def copy_obligation(T: Triangle, *pts, note="") -> Obligation:
    return Obligation("copy", tuple(pts), "copy", is_copy(*pts, T), note)


def inside_obligation(p: Point, seg: Segment, note="") -> Obligation:
    return Obligation("contains", (p, seg.anchor, seg.end), "inside", seg.contains(p), note)


def _need_nondegenerate(T: Triangle):
    if T.degenerate:
        raise DegenerateTriangleUnsupported(f"{T} is degenerate")


# ------------------------------------------------------------ forced segments

# Each case is a vector (s, t-u) up to the symmetries of the square, where
# (s, t, u) permutes (a, b, c). The forced segment has length t + u - s.
_PARTS = {
    "a": ("a", "c", "b"),  # (+-a, c-b), length b+c-a
    "b": ("b", "a", "c"),  # (+-b, a-c), length c+a-b
    "c": ("c", "b", "a"),  # (+-c, b-a), length a+b-c
}

# how the base vector (t-u, s) is carried onto each listed form
_FORMS = {
    "(t-u,+s)": lambda x, y: (x, y),
    "(t-u,-s)": lambda x, y: (x, -y),
    "(+s,t-u)": lambda x, y: (y, x),
    "(-s,t-u)": lambda x, y: (-y, x),
}


def _case_name(part, form):
    s, t, u = _PARTS[part]
    diff = f"{t}-{u}"
    return (form.replace("t-u", diff).replace("+s", "+" + s).replace("-s", "-" + s))


ANTIPERIOD_CASES = {
    _case_name(part, form): (part, form) for part in "abc" for form in _FORMS
}


def _sides(T, part):
    names = {"a": T.a, "b": T.b, "c": T.c}
    return tuple(names[n] for n in _PARTS[part])


def case_vector(case: str, T: Triangle) -> ShiftVector:
    part, form = ANTIPERIOD_CASES[case]
    s, t, u = _sides(T, part)
    return ShiftVector(*_FORMS[form](t - u, s))


def case_length(case: str, T: Triangle) -> Fraction:
    part, _ = ANTIPERIOD_CASES[case]
    s, t, u = _sides(T, part)
    return t + u - s


@dataclass
class ForcedSegment:
    case: str
    pair: tuple
    segment: Segment
    obligations: list

    def to_json(self):
        return {
            "case": self.case,
            "pair": [p.to_json() for p in self.pair],
            "segment": self.segment.to_json(),
            "obligations": [o.to_json() for o in self.obligations],
        }


def forced_segment(pair, case: str, T: Triangle, samples: int = 4) -> ForcedSegment:
    """Segment of third vertices completing a same-colored pair to a copy.

    ``pair`` differs by the case vector v (either order). If v is not an
    anti-period such a pair exists, and every point of the returned segment
    forms a copy of T with it, so the whole segment takes the other color.
    """
    _need_nondegenerate(T)
    if case not in ANTIPERIOD_CASES:
        raise PairDoesNotMatchCase(f"unknown case {case!r}; known: {sorted(ANTIPERIOD_CASES)}")
    p, q = (x if isinstance(x, Point) else Point(*x) for x in pair)
    v = case_vector(case, T)
    diff = q - p
    if (diff.x, diff.y) == (v.dx, v.dy):
        p, q = q, p
    elif (diff.x, diff.y) != (-v.dx, -v.dy):
        raise PairDoesNotMatchCase(f"pair difference {diff!r} is not +-{v!r}")
    part, form = ANTIPERIOD_CASES[case]
    s, t, u = _sides(T, part)
    g = _FORMS[form]
    ends = [g(-t, -t), g(-t, u - s)]
    seg = Segment.between(*(Point(p.x + dx, p.y + dy) for dx, dy in ends))
    obligations = [copy_obligation(T, p, q, r) for r in seg.samples(samples)]
    return ForcedSegment(case, (p, q), seg, obligations)


# ------------------------------------------------------ anti-period algebra

@dataclass(frozen=True)
class Decomposition:
    target: LabeledShift
    terms: tuple  # ((sign, LabeledShift), ...)

    def check(self) -> bool:
        total = ShiftVector(0, 0)
        flips = 0
        for sign, term in self.terms:
            total = total + term.vector if sign > 0 else total - term.vector
            flips += term.label == ANTI_PERIOD
        label = PERIOD if flips % 2 == 0 else ANTI_PERIOD
        return total == self.target.vector and label == self.target.label

    def to_json(self):
        return {
            "target": self.target.to_json(),
            "terms": [
                {"sign": "+" if sign > 0 else "-", **term.to_json()}
                for sign, term in self.terms
            ],
            "verified": self.check(),
        }


def _dedup(vectors):
    out = []
    for v in vectors:
        if v not in out:
            out.append(v)
    return out


def integer_certificates(T: Triangle, bound: int) -> list:
    """All (n, m, k) in the box |.| <= bound with 0 < 2an+2bm+2ck <= a+b-c.

    Sorted by L1 norm, then max norm, then lexicographically.
    """
    from .rational import common_denominator

    lam = common_denominator(T.sides)
    A, B, C = (int(2 * s * lam) for s in T.sides)
    R = int((T.a + T.b - T.c) * lam)
    found = []
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            base = A * n + B * m
            # 0 < base + C k <= R
            k_lo = (-base) // C + 1
            k_hi = (R - base) // C
            for k in range(max(k_lo, -bound), min(k_hi, bound) + 1):
                found.append((n, m, k))
    found.sort(key=lambda v: (sum(map(abs, v)), max(map(abs, v)), v))
    return found


@dataclass
class DeductionReport:
    triangle: Triangle
    hypothesis: str
    anti_periods: list
    periods: list
    decompositions: list
    bound: int
    certificate: Optional[tuple] = None
    certificate_count: int = 0
    extra_anti_periods: list = field(default_factory=list)

    def to_json(self):
        return {
            "triangle": self.triangle.to_json(),
            "hypothesis": self.hypothesis,
            "anti_periods": [v.to_json() for v in self.anti_periods],
            "periods": [v.to_json() for v in self.periods],
            "decompositions": [d.to_json() for d in self.decompositions],
            "certificate_search": {
                "bound": self.bound,
                "found": self.certificate is not None,
                "certificate": list(self.certificate) if self.certificate else None,
                "certificates_in_box": self.certificate_count,
            },
            "extra_anti_periods": [v.to_json() for v in self.extra_anti_periods],
        }


def antiperiod_consequences(T: Triangle, bound: int = DEFAULT_BOUND) -> DeductionReport:
    """Anti-periods and periods forced when no axis-parallel segment of
    length c+a-b is monochromatic, plus the optional (n, m, k) upgrade."""
    _need_nondegenerate(T)
    a, b, c = T.sides
    anti = lambda dx, dy: LabeledShift(ShiftVector(dx, dy), ANTI_PERIOD)  # noqa: E731
    per = lambda dx, dy: LabeledShift(ShiftVector(dx, dy), PERIOD)  # noqa: E731
    eight = [
        (a, c - b), (-a, c - b), (c - b, a), (c - b, -a),
        (b, a - c), (-b, a - c), (a - c, b), (a - c, -b),
    ]
    p2b, q2b = per(2 * b, 0), per(0, 2 * b)
    decomps = [
        Decomposition(per(2 * a, 0), ((1, anti(a, c - b)), (-1, anti(-a, c - b)))),
        Decomposition(p2b, ((1, anti(b, a - c)), (-1, anti(-b, a - c)))),
        Decomposition(per(2 * c, 0), ((1, anti(c - b, a)), (1, anti(c - b, -a)), (1, p2b))),
        Decomposition(per(0, 2 * a), ((1, anti(c - b, a)), (-1, anti(c - b, -a)))),
        Decomposition(q2b, ((1, anti(a - c, b)), (-1, anti(a - c, -b)))),
        Decomposition(per(0, 2 * c), ((1, anti(a, c - b)), (1, anti(-a, c - b)), (1, q2b))),
    ]
    certs = integer_certificates(T, bound)
    report = DeductionReport(
        triangle=T,
        hypothesis=(
            "no monochromatic axis-parallel segment of length "
            f"c+a-b = {format_rational(c + a - b)}"
        ),
        anti_periods=_dedup(ShiftVector(*v) for v in eight),
        periods=_dedup(d.target.vector for d in decomps),
        decompositions=decomps,
        bound=bound,
        certificate=certs[0] if certs else None,
        certificate_count=len(certs),
    )
    if certs:
        report.extra_anti_periods = _dedup(
            ShiftVector(*v) for v in [(c, b - a), (-c, b - a), (b - a, c), (b - a, -c)]
        )
    return report


# -------------------------------------------------------------- forced lines

def line_certificates(T: Triangle, bound: int) -> list:
    """(n, m) with |n|, |m| <= bound, n+m even and c-b <= an+bm <= a."""
    a, b, c = T.sides
    found = [
        (n, m)
        for n in range(-bound, bound + 1)
        for m in range(-bound, bound + 1)
        if (n + m) % 2 == 0 and c - b <= a * n + b * m <= a
    ]
    found.sort(key=lambda v: (abs(v[0]) + abs(v[1]), max(map(abs, v)), v))
    return found


def _parity_chain(T: Triangle, n: int, m: int, x0=0) -> list:
    """Obligations walking line colors from y=0 to y=an+bm by steps of +-a, +-b."""
    a, b, c = T.sides
    steps = [a if n > 0 else -a] * abs(n) + [b if m > 0 else -b] * abs(m)
    obligations = []
    y = Fraction(0)
    for st in steps:
        other = b if abs(st) == a else a
        # (x0, y+st) with (x0-c, y) and (x0+other-c, y); reflected when st < 0
        obligations.append(copy_obligation(
            T, Point(x0, y + st), Point(x0 - c, y), Point(x0 + other - c, y),
            note=f"line y={format_rational(y)} forces the other color on y={format_rational(y + st)}",
        ))
        y += st
    return obligations


@dataclass
class ForcedLines:
    triangle: Triangle
    blue_lines: list
    certificate: Optional[tuple]
    certificate_count: int
    bound: int
    obligations: list

    def to_json(self):
        return {
            "triangle": self.triangle.to_json(),
            "hypothesis": "line y=0 is red",
            "blue_lines": [format_rational(y) for y in self.blue_lines],
            "certificate_search": {
                "bound": self.bound,
                "found": self.certificate is not None,
                "certificate": list(self.certificate) if self.certificate else None,
                "certificates_in_box": self.certificate_count,
            },
            "obligations": [o.to_json() for o in self.obligations],
        }


def forced_lines(T: Triangle, bound: int = DEFAULT_BOUND) -> ForcedLines:
    _need_nondegenerate(T)
    a, b, c = T.sides
    obligations = [
        copy_obligation(T, Point(0, a), Point(-c, 0), Point(b - c, 0), note="y=a blue"),
        copy_obligation(T, Point(0, b), Point(-c, 0), Point(a - c, 0), note="y=b blue"),
    ]
    blue = _dedup([a, b])
    certs = line_certificates(T, bound)
    cert = certs[0] if certs else None
    if cert is not None:
        n, m = cert
        h = a * n + b * m
        obligations.extend(_parity_chain(T, n, m))
        obligations.append(copy_obligation(
            T, Point(0, c), Point(-b, h), Point(a - b, 0),
            note=f"y=c blue via red line y={format_rational(h)}",
        ))
        blue = _dedup(blue + [c])
    return ForcedLines(T, blue, cert, len(certs), bound, obligations)


# ------------------------------------------------------ segment extension

@dataclass
class TraceStep:
    level: int
    color: str
    y: Fraction
    lo: Fraction
    hi: Fraction
    obligations: list

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def segment(self) -> Segment:
        return Segment(HORIZONTAL, Point(self.lo, self.y), self.length)

    def to_json(self):
        return {
            "level": self.level,
            "color": self.color,
            "segment": self.segment().to_json(),
            "obligations": [o.to_json() for o in self.obligations],
        }


@dataclass
class DeductionTrace:
    triangle: Triangle
    case: str
    growth: Fraction
    steps: list
    obligations: list  # frame-independent checks (reflection, coverage)

    def all_obligations(self) -> list:
        out = list(self.obligations)
        for st in self.steps:
            out.extend(st.obligations)
        return out

    def to_json(self):
        return {
            "triangle": self.triangle.to_json(),
            "case": self.case,
            "growth_per_end": format_rational(self.growth),
            "steps": [s.to_json() for s in self.steps],
            "obligations": [o.to_json() for o in self.obligations],
        }


def _interval_obligation(kind, expected, ok, note, *pts):
    return Obligation(kind, tuple(pts), expected, bool(ok), note)


def _isosceles_step(T, prev, y_new):
    a, b = T.a, T.b
    lo, hi = prev.lo + a - b, prev.hi - a + b
    obligations = []
    prev_seg = prev.segment()
    for x in (lo, (lo + hi) / 2, hi):
        xp = max(prev.lo, x - b)
        p1, p2 = Point(xp, prev.y), Point(xp + a, prev.y)
        obligations.append(inside_obligation(p1, prev_seg))
        obligations.append(inside_obligation(p2, prev_seg))
        obligations.append(copy_obligation(T, p1, p2, Point(x, y_new)))
    return lo, hi, obligations


def _general_window(T, frame, I_base):
    """Obligations for one window of length b+c-a, in base coordinates."""
    a, b, c = T.sides
    obligations = []
    I = Segment.between(frame(0, 0), frame(I_base, 0))
    J1 = Segment.between(frame(c, a), frame(2 * c - a, a))
    J2_lo, J2_hi = c - b, c
    J12 = Segment.between(frame(c - b, a), frame(2 * c - a, a))

    for X0 in (c, (3 * c - a) / 2, 2 * c - a):
        p2, p3 = frame(X0 - c, 0), frame(X0 + b - c, 0)
        obligations.append(inside_obligation(p2, I, "J1 pair on I"))
        obligations.append(inside_obligation(p3, I, "J1 pair on I"))
        obligations.append(copy_obligation(T, frame(X0, a), p2, p3, note="J1 point"))

    for x1 in (J2_lo, (J2_lo + J2_hi) / 2, J2_hi):
        x = x1
        links = 0
        while x < c:
            z1 = frame(x, a)
            z2 = frame(x + b - c, 0)
            z3 = frame(x + b, c + a - b)
            z4 = frame(x + b, a - b)
            z5 = frame(x + b - a, a)
            obligations.append(inside_obligation(z2, I, "z2 on I"))
            obligations.append(copy_obligation(T, z1, z2, z3, note="z1 z2 z3"))
            obligations.append(copy_obligation(T, z1, z2, z4, note="z1 z2 z4"))
            obligations.append(copy_obligation(T, z3, z4, z5, note="z3 z4 z5"))
            obligations.append(inside_obligation(z5, J12, "z5 in J2 u J1"))
            x += b - a
            links += 1
        obligations.append(inside_obligation(
            frame(x, a), J1, f"chain from x1={format_rational(x1)} ends in J1 after {links} links",
        ))
    return obligations


def _reflection_checks(T) -> list:
    a, b, c = T.sides
    w = b + c - a
    mirror = lambda x: w - x  # noqa: E731
    J1, J2 = (c, 2 * c - a), (c - b, c)
    J1p, J2p = (b - c, b - a), (b - a, 2 * b - a)
    obligations = []
    for src, dst, name in ((J1, J1p, "J1 -> J1'"), (J2, J2p, "J2 -> J2'"), ((0, w), (0, w), "I -> I")):
        img = tuple(sorted(mirror(x) for x in src))
        obligations.append(_interval_obligation(
            "reflection", "mirror-image", img == dst,
            f"{name} about 2x = {format_rational(w)}",
            Point(src[0], a), Point(src[1], a), Point(dst[0], a), Point(dst[1], a),
        ))
    covered = J2p[1] >= J2[0] and J1p[1] == J2p[0] and J2[1] == J1[0]
    obligations.append(_interval_obligation(
        "cover", "union", covered, "J'1 u J'2 u J2 u J1 = J",
        Point(J1p[0], a), Point(J1[1], a),
    ))
    # mirrored five-point configuration
    x1 = c - b
    z = [(x1, a), (x1 + b - c, 0), (x1 + b, c + a - b), (x1 + b, a - b), (x1 + b - a, a)]
    zm = [Point(mirror(x), y) for x, y in z]
    obligations.append(copy_obligation(T, zm[0], zm[1], zm[2], note="mirrored z1 z2 z3"))
    obligations.append(copy_obligation(T, zm[0], zm[1], zm[3], note="mirrored z1 z2 z4"))
    obligations.append(copy_obligation(T, zm[2], zm[3], zm[4], note="mirrored z3 z4 z5"))
    return obligations


def segment_extension_trace(T: Triangle, depth: int) -> DeductionTrace:
    """Replay the growth of a monochromatic segment into a monochromatic line.

    Isosceles triangles (b = c) start from a red segment of length a on
    y = 0 and alternate between the lines y = 0 and y = b; otherwise the
    start has length b+c-a and the lines are y = 0 and y = a. Each step
    forces the opposite color on a concentric segment that is longer by
    ``growth`` (b-a or c-b) at each end, so step l has length
    ``base + 2*l*growth``.
    """
    _need_nondegenerate(T)
    a, b, c = T.sides
    if a == b:
        raise HypothesisViolated("the extension argument needs a < b")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    isosceles = b == c
    if isosceles:
        spacing, base, growth = b, a, b - a
    else:
        spacing, base, growth = a, b + c - a, c - b
    steps = [TraceStep(0, "red", Fraction(0), Fraction(0), base, [])]
    for level in range(1, depth + 1):
        prev = steps[-1]
        sgn = 1 if level % 2 else -1
        y_new = prev.y + sgn * spacing
        color = "blue" if level % 2 else "red"
        if isosceles:
            lo, hi, obl = _isosceles_step(T, prev, y_new)
        else:
            w = base
            g = c - b
            lo, hi = prev.lo - g, prev.hi + g
            starts = _dedup([prev.lo, (prev.lo + prev.hi - w) / 2, prev.hi - w])
            obl = []
            for s in starts:
                frame = (lambda s0, y0, sg: lambda X, Y: Point(s0 + X, y0 + sg * Y))(s, prev.y, sgn)
                obl.extend(_general_window(T, frame, w))
            obl.append(_interval_obligation(
                "cover", "union",
                starts[0] - g == lo and starts[-1] + w + g == hi,
                "windows of the previous segment cover the new one",
                Point(lo, y_new), Point(hi, y_new),
            ))
        steps.append(TraceStep(level, color, y_new, lo, hi, obl))
    global_obl = [] if isosceles else _reflection_checks(T)
    return DeductionTrace(T, "isosceles" if isosceles else "general", growth, steps, global_obl)
