"""Layout DSL: grammar, parser, validation, and geometry resolution."""

from .draw import PlacementTarget, draw_layout
from .nodes import (
    CONTAINER,
    COORDINATE,
    MAX_CONTAINERS,
    MAX_DEPTH,
    SLOT_TYPES,
    DepthError,
    InvalidTreeError,
    LayoutError,
    LayoutLimitError,
    LayoutNode,
    LayoutSyntaxError,
    LayoutTree,
    RelRect,
    Slot,
    ValidationReport,
    Violation,
    container,
    coordinate,
    iter_containers,
    slot,
)
from .parser import format_num, parse_layout, serialize_layout
from .validator import OVERLAP_THRESHOLD, overlap_ratio, validate_layout

__all__ = [
    "CONTAINER",
    "COORDINATE",
    "DepthError",
    "InvalidTreeError",
    "LayoutError",
    "LayoutLimitError",
    "LayoutNode",
    "LayoutSyntaxError",
    "LayoutTree",
    "MAX_CONTAINERS",
    "MAX_DEPTH",
    "OVERLAP_THRESHOLD",
    "PlacementTarget",
    "RelRect",
    "SLOT_TYPES",
    "Slot",
    "ValidationReport",
    "Violation",
    "container",
    "coordinate",
    "draw_layout",
    "format_num",
    "iter_containers",
    "overlap_ratio",
    "parse_layout",
    "serialize_layout",
    "slot",
    "validate_layout",
]
