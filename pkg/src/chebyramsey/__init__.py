"""Exact tools for colorings of the plane under the max norm that avoid
monochromatic isometric copies of a triangle."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .geometry import (
    Point,
    PointSet,
    Triangle,
    canonical_copy,
    count_copies,
    enumerate_copies,
    first_monochromatic_copy,
    is_copy,
    lemma1_filter,
    linf_dist,
    load_points,
    loads_points,
    dumps_points,
    ring_intersection,
    scale_instance,
    validate_triangle,
)
from .line import (
    DistanceSet,
    LineColoring,
    avoids_distances,
    chi_line,
    chi_line_lower,
    chi_line_upper,
    dumps_line_coloring,
    eval_line_coloring,
    loads_line_coloring,
    rational_distance_reduction,
)
from .plane import (
    ANTI_PERIOD,
    NEITHER,
    PERIOD,
    LabeledShift,
    PlaneColoring,
    ShiftVector,
    certify_lift,
    combine_shifts,
    constant_coloring,
    dumps_plane_coloring,
    lift,
    loads_plane_coloring,
    sample_verify,
    shift_parity,
)
from .deduction import (
    ANTIPERIOD_CASES,
    DeductionReport,
    DeductionTrace,
    Segment,
    antiperiod_consequences,
    forced_lines,
    forced_segment,
    segment_extension_trace,
)
from .hypergraph import (
    CopyHypergraph,
    SolverResult,
    build_copy_hypergraph,
    hypergraph_chromatic,
    max_copy_free_subset,
    witness_search,
)
from .density import (
    DensityBound,
    PeriodicSet,
    density_bounds,
    density_lower_torus,
    density_upper_patch,
    product_construction,
)
from .kernels import BACKEND
