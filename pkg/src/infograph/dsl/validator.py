"""Constraint and guide checks on layout trees.

Constraints keep the geometry sane (BOUNDS, sibling OVERLAP); guides encode
infographic conventions: one icon, one headline, and one content slot per
container, and a single title for the whole tree. Both are hard failures for
composer use; the report enumerates every violation so a generating LLM can
be re-prompted with the full list.
"""

from __future__ import annotations

from .nodes import (
    CONTAINER,
    COORDINATE,
    EPS,
    LayoutNode,
    LayoutTree,
    RelRect,
    ValidationReport,
    Violation,
)

# Sibling overlap above this share of the smaller rect's area is a violation.
OVERLAP_THRESHOLD = 0.05


def _rel_intersection(a: RelRect, b: RelRect) -> float:
    ox = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    oy = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    return max(0.0, ox) * max(0.0, oy)


def overlap_ratio(a: RelRect, b: RelRect) -> float:
    """Intersection area as a fraction of the smaller rect's area."""
    smaller = min(a.w * a.h, b.w * b.h)
    if smaller <= 0:
        return 0.0
    return _rel_intersection(a, b) / smaller


def _check_bounds(rel: RelRect, path: str, out: list[Violation]) -> None:
    bad = (
        rel.x < -EPS
        or rel.y < -EPS
        or rel.w <= 0
        or rel.h <= 0
        or rel.x + rel.w > 1 + EPS
        or rel.y + rel.h > 1 + EPS
    )
    if bad:
        out.append(
            Violation(
                "BOUNDS",
                path,
                f"rect ({rel.x},{rel.y},{rel.w},{rel.h}) exits the unit square",
            )
        )


def _check_sibling_overlaps(rects: list[tuple[str, RelRect]], out: list[Violation]) -> None:
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            (path_a, a), (path_b, b) = rects[i], rects[j]
            ratio = overlap_ratio(a, b)
            if ratio > OVERLAP_THRESHOLD:
                out.append(
                    Violation(
                        "OVERLAP",
                        path_b,
                        f"overlaps sibling {path_a} by {ratio * 100:.1f}% of the smaller area",
                    )
                )


def _walk(node: LayoutNode, path: str, out: list[Violation], title_paths: list[str]) -> None:
    if node.node_kind == COORDINATE:
        child_rects = []
        for i, child in enumerate(node.children):
            child_path = f"{path}/{i}"
            _check_bounds(child.rel, child_path, out)
            child_rects.append((child_path, child.rel))
            _walk(child, child_path, out, title_paths)
        _check_sibling_overlaps(child_rects, out)
        return

    # Container: bounds + overlap over slots, multiplicity guides.
    if not node.slots:
        out.append(Violation("EMPTY_CONTAINER", path, "container has no slots"))
    counts: dict[str, int] = {}
    slot_rects = []
    for i, s in enumerate(node.slots):
        slot_path = f"{path}#{i}"
        _check_bounds(s.rel, slot_path, out)
        slot_rects.append((slot_path, s.rel))
        counts[s.slot_type] = counts.get(s.slot_type, 0) + 1
        if s.slot_type == "title":
            title_paths.append(slot_path)
    _check_sibling_overlaps(slot_rects, out)
    for slot_type in ("icon", "headline", "content"):
        if counts.get(slot_type, 0) > 1:
            out.append(
                Violation(
                    "SLOT_MULTIPLICITY",
                    path,
                    f"container holds {counts[slot_type]} {slot_type} slots, at most 1 allowed",
                )
            )


def validate_layout(tree: LayoutTree) -> ValidationReport:
    """Report every constraint and guide violation in the tree."""
    out: list[Violation] = []
    title_paths: list[str] = []
    root = tree.root
    if root.node_kind != COORDINATE:
        out.append(Violation("BOUNDS", "/", "root must be a coordinate node"))
    if (root.rel.x, root.rel.y, root.rel.w, root.rel.h) != (0.0, 0.0, 1.0, 1.0):
        out.append(Violation("BOUNDS", "/", "root rect must be the unit rect (0,0,1,1)"))
    _walk(root, "", out, title_paths)
    if len(title_paths) > 1:
        out.append(
            Violation(
                "TITLE_MULTIPLICITY",
                title_paths[1],
                f"tree holds {len(title_paths)} title slots, at most 1 allowed",
            )
        )
    return ValidationReport(tuple(out))
