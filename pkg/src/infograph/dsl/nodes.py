"""Layout tree node types.

A layout is a tree of coordinate nodes (spatial scaffolding, children are
nodes) and container nodes (leaves grouping typed slots). Every rect is
relative to its parent region, all components in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

SLOT_TYPES = ("title", "image", "icon", "headline", "content")

COORDINATE = "coordinate"
CONTAINER = "container"

MAX_DEPTH = 16
MAX_CONTAINERS = 64

EPS = 1e-9


class LayoutError(Exception):
    """Base class for layout DSL failures."""


class LayoutSyntaxError(LayoutError):
    """Malformed DSL text, with source position and the expected token."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        detail = f" (found {found!r})" if found else ""
        super().__init__(f"line {line}, col {col}: expected {expected}{detail}")


class DepthError(LayoutError):
    """Node nesting exceeds MAX_DEPTH."""


class LayoutLimitError(LayoutError):
    """Tree exceeds the container-count cap."""


class InvalidTreeError(LayoutError):
    """Operation requires a validated tree but validation fails."""


@dataclass(frozen=True)
class RelRect:
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class Slot:
    slot_type: str
    rel: RelRect


@dataclass(frozen=True)
class LayoutNode:
    node_kind: str  # COORDINATE or CONTAINER
    rel: RelRect
    children: tuple[LayoutNode, ...] = ()
    slots: tuple[Slot, ...] = ()


@dataclass(frozen=True)
class LayoutTree:
    root: LayoutNode
    source_text: str = ""


@dataclass(frozen=True)
class Violation:
    code: str  # OVERLAP | SLOT_MULTIPLICITY | TITLE_MULTIPLICITY | BOUNDS | EMPTY_CONTAINER
    path: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{v.code} at {v.path}: {v.detail}" for v in self.violations)


def coordinate(x: float, y: float, w: float, h: float, children) -> LayoutNode:
    return LayoutNode(COORDINATE, RelRect(x, y, w, h), children=tuple(children))


def container(x: float, y: float, w: float, h: float, slots) -> LayoutNode:
    return LayoutNode(CONTAINER, RelRect(x, y, w, h), slots=tuple(slots))


def slot(slot_type: str, x: float, y: float, w: float, h: float) -> Slot:
    return Slot(slot_type, RelRect(x, y, w, h))


def iter_containers(node: LayoutNode, path: str = ""):
    """Yield (path, container) in depth-first, left-to-right order."""
    if node.node_kind == CONTAINER:
        yield path or "/", node
        return
    for i, child in enumerate(node.children):
        yield from iter_containers(child, f"{path}/{i}")
