from __future__ import annotations

import random

import pytest

from infograph.dsl import (
    COORDINATE,
    LayoutNode,
    LayoutTree,
    container,
    coordinate,
    parse_layout,
    slot,
    validate_layout,
)
from infograph.model import Rect, intersection_area
from treegen import noisy_tree, valid_tree

# ---------------------------------------------------------------------------
# brute-force overlap oracle
# ---------------------------------------------------------------------------


def _sibling_groups(node: LayoutNode, path: str = ""):
    """Yield lists of (path, rel) that are mutual siblings."""
    if node.node_kind == COORDINATE:
        group = [(f"{path}/{i}", child.rel) for i, child in enumerate(node.children)]
        yield group
        for i, child in enumerate(node.children):
            yield from _sibling_groups(child, f"{path}/{i}")
    else:
        yield [(f"{path}#{i}", s.rel) for i, s in enumerate(node.slots)]


def oracle_overlap_pairs(tree: LayoutTree, threshold: float = 0.05) -> set[tuple[str, str]]:
    """All sibling pairs overlapping by more than threshold of the smaller area."""
    pairs = set()
    for group in _sibling_groups(tree.root):
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                (pa, a), (pb, b) = group[i], group[j]
                area = intersection_area(Rect(a.x, a.y, a.w, a.h), Rect(b.x, b.y, b.w, b.h))
                smaller = min(a.w * a.h, b.w * b.h)
                if smaller > 0 and area / smaller > threshold:
                    pairs.add((pa, pb))
    return pairs


# ---------------------------------------------------------------------------
# guide and constraint fixtures
# ---------------------------------------------------------------------------


def test_disjoint_siblings_are_ok():
    tree = parse_layout(
        "(C,0,0,1,1,[(G,0,0,0.5,1,[(content,0,0,1,1)]),(G,0.5,0,0.5,1,[(image,0,0,1,1)])])"
    )
    assert validate_layout(tree).ok


def test_duplicate_icon_slots_fire_slot_multiplicity():
    tree = parse_layout(
        "(C,0,0,1,1,[(G,0,0,1,1,[(icon,0,0,0.3,1),(icon,0.5,0,0.3,1)])])"
    )
    report = validate_layout(tree)
    assert "SLOT_MULTIPLICITY" in report.codes()


def test_duplicate_headline_and_content_fire_slot_multiplicity():
    for slot_type in ("headline", "content"):
        tree = LayoutTree(
            root=coordinate(
                0, 0, 1, 1,
                [container(0, 0, 1, 1, [slot(slot_type, 0, 0, 1, 0.4), slot(slot_type, 0, 0.5, 1, 0.4)])],
            )
        )
        assert "SLOT_MULTIPLICITY" in validate_layout(tree).codes()


def test_two_images_in_one_container_are_allowed():
    tree = parse_layout(
        "(C,0,0,1,1,[(G,0,0,1,1,[(image,0,0,0.45,1),(image,0.5,0,0.45,1)])])"
    )
    assert validate_layout(tree).ok


def test_two_titles_fire_title_multiplicity():
    tree = parse_layout(
        "(C,0,0,1,1,[(G,0,0,1,0.4,[(title,0,0,1,1)]),(G,0,0.5,1,0.4,[(title,0,0,1,1)])])"
    )
    report = validate_layout(tree)
    assert "TITLE_MULTIPLICITY" in report.codes()


def test_twenty_percent_overlap_fires():
    # overlap 0.1x1 = 20% of the smaller area (0.5): well past the 5% threshold
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,0.6,1,[(content,0,0,1,1)]),(G,0.5,0,0.5,1,[(image,0,0,1,1)])])")
    a, b = Rect(0, 0, 0.6, 1), Rect(0.5, 0, 0.5, 1)
    assert intersection_area(a, b) / min(a.area(), b.area()) == pytest.approx(0.2)
    report = validate_layout(tree)
    assert "OVERLAP" in report.codes()
    overlap = next(v for v in report.violations if v.code == "OVERLAP")
    assert "20.0%" in overlap.detail


def test_overlap_under_threshold_is_tolerated():
    # overlap 0.02x1 = 4% of the smaller area: under the 5% threshold
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,0.52,1,[(content,0,0,1,1)]),(G,0.5,0,0.5,1,[(image,0,0,1,1)])])")
    assert validate_layout(tree).ok


def test_empty_container_fires():
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,1,1,[])])")
    assert "EMPTY_CONTAINER" in validate_layout(tree).codes()


def test_bounds_fires_when_rect_exits_unit_square():
    tree = LayoutTree(
        root=coordinate(0, 0, 1, 1, [container(0.8, 0, 0.5, 1, [slot("content", 0, 0, 1, 1)])])
    )
    assert "BOUNDS" in validate_layout(tree).codes()


def test_root_must_be_unit_rect():
    tree = LayoutTree(
        root=coordinate(0, 0, 0.5, 1, [container(0, 0, 1, 1, [slot("content", 0, 0, 1, 1)])])
    )
    assert "BOUNDS" in validate_layout(tree).codes()


def test_report_enumerates_all_violations():
    tree = parse_layout(
        "(C,0,0,1,1,["
        "(G,0,0,0.6,1,[(title,0,0,1,0.3),(icon,0,0.4,0.4,0.3),(icon,0.5,0.4,0.4,0.3)]),"
        "(G,0.5,0,0.5,1,[(title,0,0,1,0.3)]),"
        "(G,0,0,0.1,0.1,[])"
        "])"
    )
    report = validate_layout(tree)
    assert {"OVERLAP", "SLOT_MULTIPLICITY", "TITLE_MULTIPLICITY", "EMPTY_CONTAINER"} <= report.codes()
    assert not report.ok


# ---------------------------------------------------------------------------
# oracle equivalence on random trees
# ---------------------------------------------------------------------------


def test_overlap_detection_matches_oracle_on_noisy_trees():
    rng = random.Random(555)
    disagreements = 0
    saw_overlapping = 0
    for _ in range(100):
        tree = noisy_tree(rng)
        expected = oracle_overlap_pairs(tree)
        got = [v for v in validate_layout(tree).violations if v.code == "OVERLAP"]
        if expected:
            saw_overlapping += 1
        if len(got) != len(expected) or bool(got) != bool(expected):
            disagreements += 1
    assert disagreements == 0
    assert saw_overlapping > 10  # the generator actually produces overlaps


def test_generator_trees_are_always_valid():
    rng = random.Random(99)
    for _ in range(100):
        report = validate_layout(valid_tree(rng))
        assert report.ok, report.summary()
