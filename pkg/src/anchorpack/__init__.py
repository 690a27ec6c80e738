"""Lower-left anchored rectangle packing in the unit square."""

from anchorpack.geometry import (
    Instance,
    Packing,
    Point,
    Rect,
    StaircaseTile,
    UNIT_SQUARE,
    interiors_overlap,
    largest_anchored_rect,
    point_in_open_interior,
    rect_area,
    tile_area,
)
from anchorpack.packing import (
    Tiling,
    brute_force_optimal,
    greedy_packing,
    max_empty_anchored_rect,
    processing_order,
    tile_packing,
    tile_packing_tiling,
    validate_packing,
)
from anchorpack.bounds import (
    BoundResult,
    eval_F,
    exp_integral_E1,
    lower_bound_integral,
    lower_bound_simple,
    optimize_bound,
)
from anchorpack.bounds import BoundParams
from anchorpack.analysis import AnalysisReport, analyze_instance

__all__ = [
    "AnalysisReport",
    "BoundParams",
    "BoundResult",
    "Instance",
    "Packing",
    "Point",
    "Rect",
    "StaircaseTile",
    "Tiling",
    "UNIT_SQUARE",
    "analyze_instance",
    "brute_force_optimal",
    "eval_F",
    "exp_integral_E1",
    "greedy_packing",
    "interiors_overlap",
    "largest_anchored_rect",
    "lower_bound_integral",
    "lower_bound_simple",
    "max_empty_anchored_rect",
    "optimize_bound",
    "point_in_open_interior",
    "processing_order",
    "rect_area",
    "tile_area",
    "tile_packing",
    "tile_packing_tiling",
    "validate_packing",
]
