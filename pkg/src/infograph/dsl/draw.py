"""Resolve a validated layout tree to absolute canvas rectangles."""

from __future__ import annotations

from dataclasses import dataclass

from ..model import CanvasSpec, Rect
from .nodes import CONTAINER, InvalidTreeError, LayoutNode, LayoutTree
from .validator import validate_layout


@dataclass(frozen=True)
class PlacementTarget:
    """One slot resolved to canvas coordinates.

    container_path identifies the owning container; path appends the slot
    index (container_path + "#i"). Emission order is depth-first,
    left-to-right, which downstream placement relies on.
    """

    slot_type: str
    abs_rect: Rect
    container_path: str
    path: str


def _compose(
    node: LayoutNode,
    frame: tuple[float, float, float, float],
    path: str,
    canvas: CanvasSpec,
    out: list[PlacementTarget],
) -> None:
    fx, fy, fw, fh = frame
    rel = node.rel
    nx = fx + rel.x * fw
    ny = fy + rel.y * fh
    nw = rel.w * fw
    nh = rel.h * fh
    if node.node_kind == CONTAINER:
        for i, s in enumerate(node.slots):
            sx = nx + s.rel.x * nw
            sy = ny + s.rel.y * nh
            sw = s.rel.w * nw
            sh = s.rel.h * nh
            out.append(
                PlacementTarget(
                    slot_type=s.slot_type,
                    abs_rect=Rect(
                        sx * canvas.width,
                        sy * canvas.height,
                        sw * canvas.width,
                        sh * canvas.height,
                    ),
                    container_path=path or "/",
                    path=f"{path or '/'}#{i}",
                )
            )
        return
    for i, child in enumerate(node.children):
        _compose(child, (nx, ny, nw, nh), f"{path}/{i}", canvas, out)


def draw_layout(tree: LayoutTree, canvas: CanvasSpec) -> list[PlacementTarget]:
    """Emit every slot's absolute rect by affine composition down the tree.

    Raises InvalidTreeError when the tree fails validation; callers never
    see geometry from an invalid tree.
    """
    report = validate_layout(tree)
    if not report.ok:
        raise InvalidTreeError(report.summary())
    out: list[PlacementTarget] = []
    _compose(tree.root, (0.0, 0.0, 1.0, 1.0), "", canvas, out)
    return out
