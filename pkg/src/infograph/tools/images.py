"""Image generation, editing, and clipping.

Generation and editing run against a backend: either an HTTP service
(diffusion server behind GM_IMG_ENDPOINT) or the built-in stub, a pure
function of (prompt, seed) that renders a seeded gradient with the caption
baked in. Rectangle clipping is computed natively; point/line clipping
needs a segmentation backend.
"""

from __future__ import annotations

import base64
import hashlib
import io
import os
import threading
from dataclasses import dataclass

import numpy as np
from PIL import Image, ImageDraw, ImageFilter, ImageFont, ImageOps

from ..model import DesignResource, Rect

PIVOT_TEMPLATE = "a focused image of {}"
BACKGROUND_TEMPLATE = "a background of {}"

STYLES = ("watercolor", "3d_render", "flat", "photo", "none")
EFFECTS = ("blur", "focused", "none")

PIVOT_SIZE = (1024, 1024)

EDIT_FILTERS = ("grayscale", "invert", "blur")


class BackendUnavailable(RuntimeError):
    """Remote image backend timed out or answered with an error."""


class SegmentationUnavailable(RuntimeError):
    """Point/line clipping requested without a segmentation backend."""


@dataclass(frozen=True)
class ImageRequest:
    caption: str
    kind: str  # pivot | background
    style: str = "none"
    effect: str = "none"
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.caption:
            raise ValueError("caption must be non-empty")
        if self.kind not in ("pivot", "background"):
            raise ValueError(f"kind must be pivot or background, got {self.kind!r}")
        if self.style not in STYLES:
            raise ValueError(f"style must be one of {STYLES}")
        if self.effect not in EFFECTS:
            raise ValueError(f"effect must be one of {EFFECTS}")


def assemble_prompt(req: ImageRequest) -> str:
    """Fill the kind template with the caption, appending non-none modifiers."""
    template = PIVOT_TEMPLATE if req.kind == "pivot" else BACKGROUND_TEMPLATE
    prompt = template.format(req.caption)
    if req.style != "none":
        prompt += f", {req.style}"
    if req.effect != "none":
        prompt += f", {req.effect}"
    return prompt


def palette_for_prompt(prompt: str) -> list[str]:
    """Three-color palette derived from the prompt hash, darkest first."""
    digest = hashlib.sha256(prompt.encode("utf-8")).digest()
    colors = []
    for i in range(3):
        r, g, b = digest[i * 3 : i * 3 + 3]
        colors.append((r, g, b))
    colors.sort(key=lambda c: 0.2126 * c[0] + 0.7152 * c[1] + 0.0722 * c[2])
    return ["#%02X%02X%02X" % c for c in colors]


class StubImageBackend:
    """Deterministic procedural generator: gradient + hash palette + caption."""

    def txt2img(self, prompt: str, width: int, height: int, seed: int) -> bytes:
        digest = hashlib.sha256(f"{prompt}|{seed}".encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        palette = palette_for_prompt(prompt)
        c0 = np.array(_hex_rgb(palette[0]), dtype=np.float64)
        c1 = np.array(_hex_rgb(palette[-1]), dtype=np.float64)
        ty = np.linspace(0.0, 1.0, height)[:, None, None]
        tx = np.linspace(0.0, 1.0, width)[None, :, None]
        t = (ty + tx) / 2.0
        pixels = c0 * (1 - t) + c1 * t
        noise = rng.normal(0.0, 6.0, size=(height, width, 1))
        pixels = np.clip(pixels + noise, 0, 255).astype(np.uint8)
        img = Image.fromarray(pixels, "RGB")
        draw = ImageDraw.Draw(img)
        font = ImageFont.load_default()
        text = prompt[:80]
        draw.rectangle((0, height - 18, width, height), fill=_hex_rgb(palette[0]))
        draw.text((4, height - 15), text, fill=(255, 255, 255), font=font)
        return encode_png(img)

    def edit(self, png: bytes, instruction: str) -> tuple[bytes, bool]:
        """Apply a named filter; unknown instructions are a flagged no-op."""
        lowered = instruction.lower()
        img = decode_png(png)
        if "grayscale" in lowered:
            out = ImageOps.grayscale(img.convert("RGB")).convert("RGB")
        elif "invert" in lowered:
            out = ImageOps.invert(img.convert("RGB"))
        elif "blur" in lowered:
            out = img.convert("RGB").filter(ImageFilter.GaussianBlur(4))
        else:
            return png, True
        return encode_png(out), False

    def palette(self, prompt: str) -> list[str]:
        return palette_for_prompt(prompt)


class RemoteImageBackend:
    """HTTP adapter: POST {endpoint}/txt2img and /edit, JSON in/out.

    At most max_concurrency requests are in flight per backend instance.
    """

    def __init__(self, endpoint: str | None = None, post=None, timeout: float = 60.0,
                 max_concurrency: int = 4):
        self.endpoint = (endpoint or os.environ.get("GM_IMG_ENDPOINT", "")).rstrip("/")
        self.timeout = timeout
        self._gate = threading.BoundedSemaphore(max_concurrency)
        if post is None:
            import requests

            post = requests.post
        self._post = post
        if not self.endpoint:
            raise BackendUnavailable("GM_IMG_ENDPOINT is not configured")

    def _call(self, path: str, payload: dict) -> bytes:
        with self._gate:
            try:
                resp = self._post(f"{self.endpoint}{path}", json=payload, timeout=self.timeout)
                if resp.status_code >= 500:
                    raise BackendUnavailable(f"backend answered {resp.status_code}")
                resp.raise_for_status()
                body = resp.json()
            except BackendUnavailable:
                raise
            except Exception as exc:
                raise BackendUnavailable(f"image backend failed: {exc}") from exc
        return base64.b64decode(body["png_base64"])

    def txt2img(self, prompt: str, width: int, height: int, seed: int) -> bytes:
        return self._call(
            "/txt2img",
            {"prompt": prompt, "width": width, "height": height, "steps": 50, "seed": seed},
        )

    def edit(self, png: bytes, instruction: str) -> tuple[bytes, bool]:
        out = self._call(
            "/edit",
            {"png_base64": base64.b64encode(png).decode("ascii"), "instruction": instruction},
        )
        return out, False


class RemoteSegmentationBackend:
    """HTTP adapter for semantic point/line clipping (mask-applied PNG out)."""

    def __init__(self, endpoint: str | None = None, post=None, timeout: float = 60.0,
                 max_concurrency: int = 4):
        self.endpoint = (endpoint or os.environ.get("GM_SEG_ENDPOINT", "")).rstrip("/")
        self.timeout = timeout
        self._gate = threading.BoundedSemaphore(max_concurrency)
        if post is None:
            import requests

            post = requests.post
        self._post = post
        if not self.endpoint:
            raise SegmentationUnavailable("GM_SEG_ENDPOINT is not configured")

    def segment(self, png: bytes, selector: dict) -> bytes:
        with self._gate:
            try:
                resp = self._post(
                    f"{self.endpoint}/segment",
                    json={"png_base64": base64.b64encode(png).decode("ascii"), "selector": selector},
                    timeout=self.timeout,
                )
                resp.raise_for_status()
                return base64.b64decode(resp.json()["png_base64"])
            except Exception as exc:
                raise SegmentationUnavailable(f"segmentation backend failed: {exc}") from exc


class FallbackImageBackend:
    """Tries the primary backend, falling back (typically to the stub) when
    it is unavailable; lets deployments opt in to graceful degradation."""

    def __init__(self, primary, fallback: StubImageBackend | None = None):
        self.primary = primary
        self.fallback = fallback or StubImageBackend()

    def txt2img(self, prompt: str, width: int, height: int, seed: int) -> bytes:
        try:
            return self.primary.txt2img(prompt, width, height, seed)
        except BackendUnavailable:
            return self.fallback.txt2img(prompt, width, height, seed)

    def edit(self, png: bytes, instruction: str) -> tuple[bytes, bool]:
        try:
            return self.primary.edit(png, instruction)
        except BackendUnavailable:
            return self.fallback.edit(png, instruction)


def generate_image(
    req: ImageRequest,
    backend,
    canvas_size: tuple[int, int] = (1280, 720),
    resource_id: str = "r0",
) -> DesignResource:
    """Produce a pivot or background PNG resource via the given backend."""
    prompt = assemble_prompt(req)
    if req.kind == "pivot":
        width, height = PIVOT_SIZE
        task = "pivot_figure"
    else:
        width, height = canvas_size
        task = "background"
    png = backend.txt2img(prompt, width, height, req.seed)
    meta = {"prompt": prompt, "seed": req.seed, "width": width, "height": height}
    palette_fn = getattr(backend, "palette", None)
    if palette_fn is not None:
        meta["palette"] = palette_fn(prompt)
    return DesignResource(resource_id, task, "png", png, meta=meta)


def edit_image(png: bytes, instruction: str, backend, resource_id: str = "r0") -> DesignResource:
    """Edit an image by natural-language instruction through the backend."""
    if not instruction:
        raise ValueError("instruction must be non-empty")
    decode_png(png)  # precondition: input decodes
    out, warned = backend.edit(png, instruction)
    meta = {"instruction": instruction}
    if warned:
        meta["warning"] = "instruction not understood, image returned unchanged"
    return DesignResource(resource_id, "local_adjustment", "png", out, meta=meta)


def clip_image(
    png: bytes,
    selector: dict,
    backend=None,
    resource_id: str = "r0",
) -> DesignResource:
    """Extract a region: rectangle natively, point/line via segmentation.

    Rectangle selector: {"rectangle": Rect | {x,y,w,h}} in image pixel
    coordinates, which must lie within the image bounds.
    """
    img = decode_png(png)
    if "rectangle" in selector:
        rect = selector["rectangle"]
        if isinstance(rect, dict):
            rect = Rect(rect["x"], rect["y"], rect["w"], rect["h"])
        x0, y0 = int(round(rect.x)), int(round(rect.y))
        x1, y1 = int(round(rect.x + rect.w)), int(round(rect.y + rect.h))
        if x0 < 0 or y0 < 0 or x1 > img.width or y1 > img.height or x1 <= x0 or y1 <= y0:
            raise ValueError("rectangle selector exits the image bounds")
        out = img.convert("RGBA").crop((x0, y0, x1, y1))
        return DesignResource(
            resource_id,
            "local_adjustment",
            "png",
            encode_png(out),
            meta={"selector": "rectangle", "box": [x0, y0, x1, y1]},
        )
    if "point" in selector or "line" in selector:
        if backend is None:
            raise SegmentationUnavailable("point/line clipping requires a segmentation backend")
        out_png = backend.segment(png, selector)
        kind = "point" if "point" in selector else "line"
        return DesignResource(
            resource_id, "local_adjustment", "png", out_png, meta={"selector": kind}
        )
    raise ValueError("selector must contain one of rectangle/point/line")


def decode_png(png: bytes) -> Image.Image:
    img = Image.open(io.BytesIO(png))
    img.load()
    return img


def encode_png(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def png_size(png: bytes) -> tuple[int, int]:
    img = decode_png(png)
    return img.width, img.height


def _hex_rgb(color: str) -> tuple[int, int, int]:
    return tuple(int(color[i : i + 2], 16) for i in (1, 3, 5))  # type: ignore[return-value]
