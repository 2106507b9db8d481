from __future__ import annotations

import base64
import random

import numpy as np
import pytest

from infograph.model import Rect
from infograph.tools.images import (
    BackendUnavailable,
    ImageRequest,
    RemoteImageBackend,
    SegmentationUnavailable,
    StubImageBackend,
    assemble_prompt,
    clip_image,
    decode_png,
    edit_image,
    encode_png,
    generate_image,
    png_size,
)

STUB = StubImageBackend()


# ---------------------------------------------------------------------------
# prompt assembly
# ---------------------------------------------------------------------------


def test_pivot_prompt_template():
    req = ImageRequest(caption="a cute cat", kind="pivot")
    assert assemble_prompt(req) == "a focused image of a cute cat"


def test_background_prompt_template():
    req = ImageRequest(caption="the park under warm sunlight", kind="background")
    assert assemble_prompt(req) == "a background of the park under warm sunlight"


def test_prompt_appends_style_and_effect():
    req = ImageRequest(caption="a cute cat", kind="pivot", style="watercolor", effect="blur")
    assert assemble_prompt(req) == "a focused image of a cute cat, watercolor, blur"


def test_every_prompt_starts_with_one_template():
    rng = random.Random(5)
    styles = ("watercolor", "3d_render", "flat", "photo", "none")
    effects = ("blur", "focused", "none")
    for _ in range(100):
        kind = rng.choice(("pivot", "background"))
        req = ImageRequest(
            caption=rng.choice(("a dog", "two pyramids", "rain over the sea")),
            kind=kind,
            style=rng.choice(styles),
            effect=rng.choice(effects),
        )
        prompt = assemble_prompt(req)
        starts = prompt.startswith("a focused image of ") or prompt.startswith("a background of ")
        assert starts
        assert prompt.startswith("a focused image of ") == (kind == "pivot")


def test_request_validation():
    with pytest.raises(ValueError):
        ImageRequest(caption="", kind="pivot")
    with pytest.raises(ValueError):
        ImageRequest(caption="x", kind="pivot", style="oilpaint")


# ---------------------------------------------------------------------------
# stub generation
# ---------------------------------------------------------------------------


def test_stub_is_deterministic():
    a = STUB.txt2img("a focused image of a cute cat", 128, 128, seed=7)
    b = STUB.txt2img("a focused image of a cute cat", 128, 128, seed=7)
    assert a == b
    c = STUB.txt2img("a focused image of a cute cat", 128, 128, seed=8)
    assert a != c


def test_generate_image_sizes():
    pivot = generate_image(ImageRequest(caption="a cute cat", kind="pivot"), STUB)
    assert png_size(pivot.content) == (1024, 1024)
    assert pivot.task == "pivot_figure"
    bg = generate_image(
        ImageRequest(caption="dunes", kind="background"), STUB, canvas_size=(640, 360)
    )
    assert png_size(bg.content) == (640, 360)
    assert bg.task == "background"
    assert bg.meta["prompt"] == "a background of dunes"
    assert len(bg.meta["palette"]) == 3


# ---------------------------------------------------------------------------
# remote backend
# ---------------------------------------------------------------------------


class _Resp:
    def __init__(self, status=200, png=b"fakepng"):
        self.status_code = status
        self._png = png

    def raise_for_status(self):
        if self.status_code >= 400:
            raise RuntimeError(f"http {self.status_code}")

    def json(self):
        return {"png_base64": base64.b64encode(self._png).decode()}


def test_remote_backend_decodes_png_base64():
    def post(url, json=None, timeout=None):
        assert url.endswith("/txt2img")
        assert json["steps"] == 50
        return _Resp()

    backend = RemoteImageBackend("http://img.test", post=post)
    assert backend.txt2img("p", 64, 64, 0) == b"fakepng"


def test_remote_backend_5xx_raises_backend_unavailable():
    backend = RemoteImageBackend("http://img.test", post=lambda *a, **k: _Resp(status=503))
    with pytest.raises(BackendUnavailable):
        backend.txt2img("p", 64, 64, 0)


def test_remote_backend_timeout_raises_backend_unavailable():
    def post(url, json=None, timeout=None):
        raise TimeoutError("timed out")

    backend = RemoteImageBackend("http://img.test", post=post)
    with pytest.raises(BackendUnavailable):
        backend.txt2img("p", 64, 64, 0)


# ---------------------------------------------------------------------------
# editing
# ---------------------------------------------------------------------------


def _sample_png(w=64, h=48) -> bytes:
    return STUB.txt2img("sample", w, h, seed=1)


def test_edit_grayscale_equalizes_channels():
    out = edit_image(_sample_png(), "grayscale", STUB)
    pixels = np.array(decode_png(out.content).convert("RGB"))
    assert (pixels[..., 0] == pixels[..., 1]).all()
    assert (pixels[..., 1] == pixels[..., 2]).all()
    assert "warning" not in out.meta


def test_edit_invert_is_involution_on_pixels():
    png = _sample_png()
    once = edit_image(png, "invert", STUB)
    twice = edit_image(once.content, "invert", STUB)
    a = np.array(decode_png(png).convert("RGB"))
    b = np.array(decode_png(twice.content).convert("RGB"))
    assert (a == b).all()


def test_edit_unknown_instruction_is_flagged_noop():
    png = _sample_png()
    out = edit_image(png, "make it baroque", STUB)
    assert out.content == png
    assert "warning" in out.meta


def test_edit_remote_returns_backend_bytes_verbatim():
    def post(url, json=None, timeout=None):
        assert url.endswith("/edit")
        return _Resp(png=b"snowy-bytes")

    backend = RemoteImageBackend("http://img.test", post=post)
    out = edit_image(_sample_png(), "make it snowy", backend)
    assert out.content == b"snowy-bytes"


# ---------------------------------------------------------------------------
# clipping
# ---------------------------------------------------------------------------


def test_clip_left_half_matches_array_slice_oracle():
    png = _sample_png(64, 48)
    clipped = clip_image(png, {"rectangle": Rect(0, 0, 32, 48)})
    src = np.array(decode_png(png).convert("RGBA"))
    out = np.array(decode_png(clipped.content))
    assert out.shape == (48, 32, 4)
    assert (out == src[0:48, 0:32]).all()


def test_clip_full_image_is_identity():
    png = _sample_png(40, 40)
    clipped = clip_image(png, {"rectangle": Rect(0, 0, 40, 40)})
    src = np.array(decode_png(png).convert("RGBA"))
    out = np.array(decode_png(clipped.content))
    assert (out == src).all()


def test_clip_rect_out_of_bounds_rejected():
    with pytest.raises(ValueError):
        clip_image(_sample_png(40, 40), {"rectangle": Rect(10, 10, 40, 40)})


def test_point_clip_without_backend_raises():
    with pytest.raises(SegmentationUnavailable):
        clip_image(_sample_png(), {"point": {"x": 5, "y": 5}})


def test_point_clip_with_backend_returns_mask_applied_png():
    masked = encode_png(decode_png(_sample_png(16, 16)).convert("RGBA"))

    class FakeSeg:
        def segment(self, png, selector):
            assert "point" in selector
            return masked

    out = clip_image(_sample_png(16, 16), {"point": {"x": 3, "y": 3}}, backend=FakeSeg())
    assert out.content == masked


def test_fallback_backend_degrades_to_stub():
    from infograph.tools.images import FallbackImageBackend

    class Down:
        def txt2img(self, *a, **k):
            raise BackendUnavailable("down")

        def edit(self, *a, **k):
            raise BackendUnavailable("down")

    backend = FallbackImageBackend(Down())
    png = backend.txt2img("p", 32, 32, 0)
    assert png == STUB.txt2img("p", 32, 32, 0)
    out, warned = backend.edit(png, "grayscale")
    assert not warned


def test_remote_backend_concurrency_cap():
    import threading
    import time as _time

    active = []
    peak = []
    lock = threading.Lock()

    def post(url, json=None, timeout=None):
        with lock:
            active.append(1)
            peak.append(len(active))
        _time.sleep(0.02)
        with lock:
            active.pop()
        return _Resp()

    backend = RemoteImageBackend("http://img.test", post=post, max_concurrency=2)
    threads = [
        threading.Thread(target=lambda: backend.txt2img("p", 8, 8, 0)) for _ in range(6)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert max(peak) <= 2
