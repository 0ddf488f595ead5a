"""Command-line front end: ``cheby-ramsey <subcommand> [options]``.

Every subcommand except ``render`` prints a JSON report. The report holds a
``runtime`` section (thread count, wall time) that is excluded from the
determinism hash; everything else is identical for any thread count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__, kernels
from .deduction import (
    ANTIPERIOD_CASES,
    DEFAULT_BOUND,
    antiperiod_consequences,
    case_vector,
    forced_lines,
    forced_segment,
    segment_extension_trace,
)
from .density import density_bounds
from .errors import ChebyRamseyError, NoColoringWithinBudget, ParseError
from .geometry import Point, PointSet, Triangle, canonical_copy, enumerate_copies, is_copy, linf_dist, load_points
from .hypergraph import build_copy_hypergraph, hypergraph_chromatic, max_copy_free_subset, witness_search
from .line import DistanceSet, chi_line, chi_line_upper, rational_distance_reduction
from .plane import DIAGONAL, HORIZONTAL, certify_lift, lift, loads_plane_coloring, sample_verify
from .rational import format_rational, parse_rational
from .svg import render_svg

TOOL = "cheby-ramsey"
EXIT_CERTIFIED, EXIT_COUNTEREXAMPLE, EXIT_UNDECIDED = 0, 1, 2
EXIT_INPUT_ERROR = 3


def _rational(text):
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _triangle(text):
    try:
        return Triangle.parse(text)
    except ChebyRamseyError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dims(text):
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected n or n,m") from None
    if len(dims) not in (1, 2) or min(dims) < 1:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected n or n,m")
    return dims


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _distances(text):
    return [_rational(p) for p in text.split(",") if p.strip()]


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ChebyRamseyError(f"cannot read {path}: {exc.strerror}") from None


def _default_threads():
    env = os.environ.get("CHEBY_RAMSEY_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


# ------------------------------------------------------------ subcommands

def _copy_record(S, tri):
    pts = [S[i] for i in tri]
    return {
        "indices": list(tri),
        "points": [p.to_json() for p in pts],
        "distances": sorted(
            (linf_dist(pts[i], pts[j]) for i, j in ((0, 1), (1, 2), (0, 2)))
        ),
    }


def run_copies(args):
    S = load_points(args.points) if args.points else PointSet()
    T = args.triangle
    tris = enumerate_copies(S, T, threads=args.threads)
    records = []
    for tri in tris:
        rec = _copy_record(S, tri)
        rec["distances"] = [format_rational(d) for d in rec["distances"]]
        records.append(rec)
    return {"points": len(S), "count": len(tris), "copies": records}, 0


def run_verify(args):
    P = loads_plane_coloring(_read_text(args.coloring))
    T = args.triangle
    result = {"kind": P.kind}
    certified = False
    if P.kind in (HORIZONTAL, DIAGONAL):
        cert = certify_lift(P, T)
        certified = cert.copy_free
        result["certificate"] = cert.to_json()
    else:
        result["certificate"] = {"status": "not-certified",
                                 "reason": "grid colorings are only checked by sampling"}
    found = False
    if args.window is not None:
        verdict = sample_verify(P, T, args.window, args.step, threads=args.threads)
        found = verdict.found
        result["sweep"] = {
            "window": format_rational(args.window),
            "step": format_rational(args.step),
            **verdict.to_json(),
        }
    if found:
        code, status = EXIT_COUNTEREXAMPLE, "counterexample"
    elif certified:
        code, status = EXIT_CERTIFIED, "certified"
    else:
        code, status = EXIT_UNDECIDED, "not-certified"
    result["status"] = status
    return result, code


def _line_route(D, window, max_period):
    red = rational_distance_reduction(D)
    out = {
        "distances": [format_rational(d) for d in DistanceSet(D)],
        "scale": red.scale,
        "integer_distances": red.distances.to_json(),
    }
    if window is not None:
        res = chi_line(red.distances, window, max_period)
        out.update(res.to_json())
        up = res.upper
    else:
        up = chi_line_upper(red.distances, max_period)
        out["upper"] = up.to_json()
    return out, up, red.scale


def run_chi_line(args):
    if args.distances:
        out, _, _ = _line_route(args.distances, args.window, args.max_period)
        return out, 0
    if args.triangle is None:
        raise ChebyRamseyError("chi-line needs --distances or --triangle")
    T = args.triangle
    routes = {}
    best = None
    route_list = [(HORIZONTAL, T.side_set)]
    if not T.degenerate:
        route_list.append((DIAGONAL, T.diag_set))
    for name, D in route_list:
        try:
            info, up, lam = _line_route(D, args.window, args.max_period)
        except NoColoringWithinBudget as exc:
            routes[name] = {"error": str(exc)}
            continue
        # scale the residue coloring back to the triangle's units and certify the lift
        cert = certify_lift(lift(up.coloring.scaled(Fraction(1, lam)), name), T)
        assert cert.copy_free
        info["lift_certificate"] = cert.to_json()
        routes[name] = info
        if best is None or up.value < best[0]:
            best = (up.value, name)
    z = canonical_copy(T)
    assert is_copy(*z, T)
    plane = {
        "lower": 2,
        "lower_reason": "a copy exists: " + json.dumps([p.to_json() for p in z]),
        "upper": best[0] if best else None,
        "upper_route": best[1] if best else None,
    }
    plane["status"] = "exact" if best and best[0] == 2 else "bounds"
    return {"triangle": T.to_json(), "routes": routes, "plane": plane}, 0


def run_chi_set(args):
    S = load_points(args.points)
    H = build_copy_hypergraph(S, args.triangle, threads=args.threads)
    res = hypergraph_chromatic(H, args.colors)
    out = {"vertices": H.vertex_count, "edges": len(H.edges), "chromatic": res.to_json()}
    if args.free_subset:
        out["max_copy_free_subset"] = max_copy_free_subset(H).to_json()
    return out, 0


def run_density(args):
    T = args.triangle
    dims = args.dims
    patch = args.patch or tuple(d + int(T.c) for d in dims)
    bound = density_bounds(T, dims, patch, threads=args.threads)
    return bound.to_json(), 0


def run_witness(args):
    q = args.step.denominator if args.step.numerator == 1 else None
    if q is None:
        raise ChebyRamseyError("--step must be 1/q for witness search")
    span = args.window if args.window is not None else Fraction(8)
    res = witness_search(args.triangle, args.colors, q, span, node_limit=args.node_limit,
                         threads=args.threads)
    return res.to_json(), 0


def run_deduce(args):
    T = args.triangle
    rng = random.Random(args.seed)
    segments = []
    den = max(1, T.a.denominator * T.b.denominator * T.c.denominator)
    for case in sorted(ANTIPERIOD_CASES):
        v = case_vector(case, T)
        p = Point(Fraction(rng.randint(-20, 20), den), Fraction(rng.randint(-20, 20), den))
        q = Point(p.x - v.dx, p.y - v.dy)
        segments.append(forced_segment((p, q), case, T).to_json())
    out = {
        "triangle": T.to_json(),
        "anti_periods": antiperiod_consequences(T, args.bound).to_json(),
        "forced_lines": forced_lines(T, args.bound).to_json(),
        "forced_segments": segments,
    }
    if T.a < T.b:
        out["extension_trace"] = segment_extension_trace(T, args.depth).to_json()
    else:
        out["extension_trace"] = None
    failed = _count_failed(out)
    out["obligations_failed"] = failed
    return out, 0 if failed == 0 else 1


def _count_failed(node):
    if isinstance(node, dict):
        own = 1 if node.get("verified") is False else 0
        return own + sum(_count_failed(v) for v in node.values())
    if isinstance(node, list):
        return sum(_count_failed(v) for v in node)
    return 0


def run_render(args):
    coloring = loads_plane_coloring(_read_text(args.coloring)) if args.coloring else None
    S = load_points(args.points) if args.points else None
    copies = []
    if S is not None and args.triangle is not None:
        copies = enumerate_copies(S, args.triangle, threads=args.threads)
    window = args.window
    if coloring is not None and window is None:
        window = Fraction(8)
    return render_svg(coloring, S, copies, window), 0


# ---------------------------------------------------------------- plumbing

def _config(args):
    cfg = {"subcommand": args.command}
    for key in ("triangle", "points", "coloring", "distances", "window", "step", "max_period",
                "colors", "dims", "patch", "bound", "depth", "node_limit", "free_subset", "seed"):
        if not hasattr(args, key):
            continue
        v = getattr(args, key)
        if isinstance(v, Triangle):
            v = v.to_json()
        elif isinstance(v, Fraction):
            v = format_rational(v)
        elif isinstance(v, tuple):
            v = list(v)
        elif isinstance(v, list):
            v = [format_rational(x) for x in v]
        elif key in ("points", "coloring") and v is not None:
            v = os.path.basename(v)
        cfg[key] = v
    return cfg


def _default(o):
    if isinstance(o, Fraction):
        return format_rational(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def payload_digest(report: dict) -> str:
    body = {k: v for k, v in report.items() if k not in ("runtime", "determinism")}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"), default=_default)
    return hashlib.sha256(blob.encode()).hexdigest()


def build_report(args, result, elapsed) -> dict:
    report = {
        "tool": TOOL,
        "version": __version__,
        "config": _config(args),
        "result": result,
    }
    report["determinism"] = {
        "payload_sha256": payload_digest(report),
        "excluded": ["runtime"],
    }
    report["runtime"] = {
        "threads": args.threads,
        "backend": kernels.BACKEND,
        "seconds": round(elapsed, 6),
    }
    return report


def load_schema(name: str = "report") -> dict:
    """A published JSON schema shipped with the package."""
    from importlib import resources

    text = resources.files("chebyramsey").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def strip_runtime(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "runtime"}


COMMANDS = {
    "copies": run_copies,
    "verify": run_verify,
    "chi-line": run_chi_line,
    "chi-set": run_chi_set,
    "density": run_density,
    "witness": run_witness,
    "deduce": run_deduce,
    "render": run_render,
}


class _Parser(argparse.ArgumentParser):
    # usage errors share the input-error code; 2 means "not certified" for verify
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=TOOL,
        description="Exact tools for plane colorings avoiding monochromatic l-infinity copies of a triangle.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker threads (default: $CHEBY_RAMSEY_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("copies", parents=[common], help="list copies of T in a point set")
    p.add_argument("--triangle", type=_triangle, required=True, help="side lengths a,b,c")
    p.add_argument("--points", help="JSON file of [x, y] pairs")

    p = sub.add_parser("verify", parents=[common], help="certify or falsify a plane coloring")
    p.add_argument("--triangle", type=_triangle, required=True)
    p.add_argument("--coloring", required=True, help="TOML plane coloring")
    p.add_argument("--window", type=_rational, help="also scan the grid in [0, W]^2")
    p.add_argument("--step", type=_rational, default=Fraction(1), help="grid step p/q")

    p = sub.add_parser("chi-line", parents=[common],
                       help="chromatic bounds for distance sets on the line (or via triangle routes)")
    p.add_argument("--distances", type=_distances, help="comma-separated distances")
    p.add_argument("--triangle", type=_triangle)
    p.add_argument("--window", type=int, help="lower bound window {0..n}")
    p.add_argument("--max-period", type=_positive_int, default=12)

    p = sub.add_parser("chi-set", parents=[common], help="chromatic number of a finite point set")
    p.add_argument("--triangle", type=_triangle, required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--colors", type=_positive_int, default=4, help="largest k to try")
    p.add_argument("--free-subset", action="store_true", help="also find a largest copy-free subset")

    p = sub.add_parser("density", parents=[common], help="torus/patch density bounds")
    p.add_argument("--triangle", type=_triangle, required=True)
    p.add_argument("--dims", type=_dims, required=True, help="torus dims n or n,m")
    p.add_argument("--patch", type=_dims, help="patch dims (default: dims + c)")

    p = sub.add_parser("witness", parents=[common], help="finite set needing k colors")
    p.add_argument("--triangle", type=_triangle, required=True)
    p.add_argument("--colors", type=_positive_int, required=True, help="k")
    p.add_argument("--step", type=_rational, default=Fraction(1), help="grid step 1/q")
    p.add_argument("--window", type=_rational, help="largest grid span (default 8)")
    p.add_argument("--node-limit", type=int, default=0)

    p = sub.add_parser("deduce", parents=[common], help="period/anti-period deductions")
    p.add_argument("--triangle", type=_triangle, required=True)
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_BOUND, help="certificate box N")
    p.add_argument("--depth", type=_positive_int, default=2, help="extension trace depth")

    p = sub.add_parser("render", parents=[common], help="SVG of a coloring and/or point set")
    p.add_argument("--coloring")
    p.add_argument("--points")
    p.add_argument("--triangle", type=_triangle, help="overlay copies among --points")
    p.add_argument("--window", type=_rational)
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.threads is None:
        args.threads = _default_threads()
    start = time.perf_counter()
    try:
        result, code = COMMANDS[args.command](args)
    except ChebyRamseyError as exc:
        print(f"{TOOL} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.command == "render":
        _emit(result, args.out)
        return code
    report = build_report(args, result, time.perf_counter() - start)
    _emit(json.dumps(report, indent=2, default=_default) + "\n", args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
