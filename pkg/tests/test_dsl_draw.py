from __future__ import annotations

import random

import pytest

from infograph.dsl import InvalidTreeError, draw_layout, parse_layout
from infograph.model import CanvasSpec
from treegen import valid_tree


def test_title_slot_composition():
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,1,0.2,[(title,0,0,1,1)])])")
    targets = draw_layout(tree, CanvasSpec(1000, 500))
    assert len(targets) == 1
    r = targets[0].abs_rect
    assert (r.x, r.y, r.w, r.h) == (0, 0, 1000, 100)
    assert targets[0].slot_type == "title"


def test_identity_composition_fills_canvas():
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,1,1,[(image,0,0,1,1)])])")
    targets = draw_layout(tree, CanvasSpec(640, 480))
    r = targets[0].abs_rect
    assert (r.x, r.y, r.w, r.h) == (0, 0, 640, 480)


def test_three_rows_quarters():
    tree = parse_layout(
        "(C,0,0,1,1,["
        "(G,0,0,1,0.25,[(image,0,0,1,1)]),"
        "(G,0,0.25,1,0.25,[(image,0,0,1,1)]),"
        "(G,0,0.5,1,0.25,[(image,0,0,1,1)])"
        "])"
    )
    targets = draw_layout(tree, CanvasSpec(1200, 900))
    ys = [t.abs_rect.y for t in targets]
    hs = [t.abs_rect.h for t in targets]
    assert ys == [0, 225, 450]
    assert hs == [225, 225, 225]


def test_slots_emitted_depth_first_left_to_right():
    tree = parse_layout(
        "(C,0,0,1,1,["
        "(G,0,0,1,0.2,[(title,0,0,1,1)]),"
        "(C,0,0.25,1,0.7,["
        "(G,0,0,0.45,1,[(icon,0,0,1,0.3),(headline,0,0.4,1,0.3)]),"
        "(G,0.5,0,0.5,1,[(content,0,0,1,1)])"
        "])])"
    )
    targets = draw_layout(tree, CanvasSpec(100, 100))
    assert [t.slot_type for t in targets] == ["title", "icon", "headline", "content"]
    assert [t.container_path for t in targets] == ["/0", "/1/0", "/1/0", "/1/1"]


def test_draw_refuses_invalid_tree():
    tree = parse_layout("(C,0,0,1,1,[(G,0,0,1,1,[])])")
    with pytest.raises(InvalidTreeError):
        draw_layout(tree, CanvasSpec(100, 100))


def test_canvas_scaling_is_linear():
    rng = random.Random(321)
    for _ in range(20):
        tree = valid_tree(rng)
        base = draw_layout(tree, CanvasSpec(500, 400))
        scaled = draw_layout(tree, CanvasSpec(1500, 1200))
        for t0, t1 in zip(base, scaled):
            assert t1.abs_rect.x == pytest.approx(3 * t0.abs_rect.x, abs=1e-9)
            assert t1.abs_rect.y == pytest.approx(3 * t0.abs_rect.y, abs=1e-9)
            assert t1.abs_rect.w == pytest.approx(3 * t0.abs_rect.w, abs=1e-9)
            assert t1.abs_rect.h == pytest.approx(3 * t0.abs_rect.h, abs=1e-9)


def test_targets_always_inside_canvas():
    rng = random.Random(4242)
    canvas = CanvasSpec(1280, 720)
    for _ in range(50):
        for t in draw_layout(valid_tree(rng), canvas):
            r = t.abs_rect
            assert r.x >= -1e-6 and r.y >= -1e-6
            assert r.x + r.w <= canvas.width + 1e-6
            assert r.y + r.h <= canvas.height + 1e-6
