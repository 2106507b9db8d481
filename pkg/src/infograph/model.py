"""Shared document, asset, resource, and conversation types.

Everything here is a plain value type. Coordinate system is SVG-like:
origin top-left, y grows downward, units are pixels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

__all__ = [
    "AssetKind",
    "CanvasSpec",
    "Conversation",
    "DesignAsset",
    "DesignResource",
    "InfographicDocument",
    "InvariantViolation",
    "Message",
    "Rect",
    "StyleProps",
    "TASK_MEDIA",
    "clamp_to_canvas",
    "intersection_area",
]

HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")

ASSET_KINDS = ("text", "icon", "image", "background")
TEXT_ALIGNS = ("left", "center", "right")

# Fixed pairing between design task and resource media.
TASK_MEDIA = {
    "information_collection": "text_bundle",
    "visual_element": "svg",
    "pivot_figure": "png",
    "background": "png",
    "layout": "layout_dsl",
    "local_adjustment": "png",
}

# z bands per asset kind; insertion bumps within the band.
Z_BASE = {"background": 0, "image": 100, "icon": 200, "text": 300}

AssetKind = str


class InvariantViolation(ValueError):
    """A mutation would break a document or asset invariant."""


def _check_color(value: str, name: str) -> None:
    if not HEX_COLOR.match(value):
        raise InvariantViolation(f"{name} must be #RRGGBB, got {value!r}")


@dataclass(frozen=True)
class CanvasSpec:
    width: int = 1280
    height: int = 720
    background_color: str = "#FFFFFF"

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvariantViolation("canvas dimensions must be >= 1")
        _check_color(self.background_color, "background_color")


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if self.w <= 0 or self.h <= 0:
            raise InvariantViolation(f"rect size must be positive, got {self.w}x{self.h}")

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h

    def area(self) -> float:
        return self.w * self.h


def intersection_area(a: Rect, b: Rect) -> float:
    """Overlap area of two rects; 0 when disjoint."""
    ox = min(a.x2, b.x2) - max(a.x, b.x)
    oy = min(a.y2, b.y2) - max(a.y, b.y)
    return max(0.0, ox) * max(0.0, oy)


def clamp_to_canvas(rect: Rect, canvas: CanvasSpec) -> Rect:
    """Return the rect moved (and if oversized, scaled) to lie inside the canvas.

    Oversized rects are scaled down preserving aspect ratio, then centered in
    the span they previously overflowed. Total function; idempotent.
    """
    w, h = rect.w, rect.h
    x, y = rect.x, rect.y
    if w > canvas.width or h > canvas.height:
        scale = min(canvas.width / w, canvas.height / h)
        # snap to the canvas edge: w * (width / w) can land an ulp past it
        w = min(w * scale, canvas.width)
        h = min(h * scale, canvas.height)
        x = (canvas.width - w) / 2
        y = (canvas.height - h) / 2
    else:
        x = min(max(x, 0.0), canvas.width - w)
        y = min(max(y, 0.0), canvas.height - h)
    return Rect(x, y, w, h)


@dataclass(frozen=True)
class StyleProps:
    fill_color: str = "#333333"
    edge_color: str = "#000000"
    edge_thickness: float = 1.0
    font_family: str = "sans-serif"
    font_size: float = 16.0
    bold: bool = False
    italic: bool = False
    text_align: str = "left"
    mask_color: str | None = None

    def __post_init__(self) -> None:
        _check_color(self.fill_color, "fill_color")
        _check_color(self.edge_color, "edge_color")
        if self.mask_color is not None:
            _check_color(self.mask_color, "mask_color")
        if self.edge_thickness < 0:
            raise InvariantViolation("edge_thickness must be >= 0")
        if self.font_size <= 0:
            raise InvariantViolation("font_size must be > 0")
        if self.text_align not in TEXT_ALIGNS:
            raise InvariantViolation(f"text_align must be one of {TEXT_ALIGNS}")


@dataclass
class DesignAsset:
    """One placeable item on the canvas.

    payload is kind-specific: text string for text assets, inline SVG markup
    for icons, raw PNG bytes for images and backgrounds.

    role/slot/pinned carry placement state: role is the slot type this asset
    fills (for layout re-flow), slot the path of its current slot, pinned is
    set on first manual move and exempts the asset from automatic re-flow.
    """

    id: str
    kind: AssetKind
    rect: Rect
    z: int
    style: StyleProps = field(default_factory=StyleProps)
    payload: str | bytes = ""
    role: str | None = None
    slot: str | None = None
    pinned: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ASSET_KINDS:
            raise InvariantViolation(f"unknown asset kind {self.kind!r}")
        if self.kind == "icon":
            _require_svg_with_viewbox(self.payload)


def _require_svg_with_viewbox(markup: object) -> None:
    import xml.etree.ElementTree as ET

    if not isinstance(markup, str):
        raise InvariantViolation("icon payload must be SVG markup text")
    try:
        root = ET.fromstring(markup)
    except ET.ParseError as exc:
        raise InvariantViolation(f"icon payload is not well-formed XML: {exc}") from exc
    if "viewBox" not in root.attrib:
        raise InvariantViolation("icon SVG must carry a viewBox attribute")


@dataclass(frozen=True)
class DesignResource:
    """A resource produced by a design tool and embedded in the conversation."""

    resource_id: str
    task: str
    media: str
    content: object
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        expected = TASK_MEDIA.get(self.task)
        if expected is None:
            raise InvariantViolation(f"unknown design task {self.task!r}")
        if self.media != expected:
            raise InvariantViolation(
                f"task {self.task} requires media {expected}, got {self.media}"
            )


@dataclass
class Message:
    role: str  # user | assistant | tool
    text: str
    resources: list[DesignResource] = field(default_factory=list)


@dataclass
class Conversation:
    """Append-only message log for one session."""

    session_id: str
    messages: list[Message] = field(default_factory=list)

    def append(self, message: Message) -> int:
        """Append and return the stable index of the new message."""
        self.messages.append(message)
        return len(self.messages) - 1

    def last_user_text(self) -> str | None:
        for msg in reversed(self.messages):
            if msg.role == "user":
                return msg.text
        return None


@dataclass
class InfographicDocument:
    canvas: CanvasSpec = field(default_factory=CanvasSpec)
    assets: list[DesignAsset] = field(default_factory=list)
    layout: object | None = None  # LayoutTree, kept loose to avoid an import cycle
    unplaced: list[str] = field(default_factory=list)
    accent_color: str | None = None
    seq: int = 0

    def next_id(self, prefix: str = "a") -> str:
        self.seq += 1
        return f"{prefix}{self.seq:04d}"

    def get(self, asset_id: str) -> DesignAsset | None:
        for asset in self.assets:
            if asset.id == asset_id:
                return asset
        return None

    def add(self, asset: DesignAsset) -> DesignAsset:
        """Insert an asset, assigning a banded z and clamping its rect."""
        if self.get(asset.id) is not None:
            raise InvariantViolation(f"duplicate asset id {asset.id!r}")
        band = Z_BASE[asset.kind]
        in_band = [a.z for a in self.assets if Z_BASE[a.kind] == band]
        asset.z = max(in_band, default=band - 1) + 1
        asset.rect = clamp_to_canvas(asset.rect, self.canvas)
        if asset.kind == "background":
            asset.z = 0
            asset.rect = Rect(0, 0, self.canvas.width, self.canvas.height)
        self.assets.append(asset)
        return asset

    def remove(self, asset_id: str) -> None:
        asset = self.get(asset_id)
        if asset is None:
            raise InvariantViolation(f"no asset {asset_id!r}")
        self.assets.remove(asset)
        if asset_id in self.unplaced:
            self.unplaced.remove(asset_id)

    def background(self) -> DesignAsset | None:
        for asset in self.assets:
            if asset.kind == "background":
                return asset
        return None

    def zsorted(self) -> list[DesignAsset]:
        """Assets in paint order: ascending z, ties broken by id."""
        return sorted(self.assets, key=lambda a: (a.z, a.id))

    def check_invariants(self) -> None:
        ids = [a.id for a in self.assets]
        if len(ids) != len(set(ids)):
            raise InvariantViolation("asset ids are not pairwise distinct")
        for asset in self.assets:
            clamped = clamp_to_canvas(asset.rect, self.canvas)
            if clamped != asset.rect:
                raise InvariantViolation(f"asset {asset.id} rect exits the canvas")
            if asset.kind == "background" and any(
                other.z < asset.z for other in self.assets if other is not asset
            ):
                raise InvariantViolation("background must hold the minimum z")


def copy_document(doc: InfographicDocument) -> InfographicDocument:
    """Deep-enough copy for transactional mutation (payload bytes are shared)."""
    return InfographicDocument(
        canvas=doc.canvas,
        assets=[replace(a) for a in doc.assets],
        layout=doc.layout,
        unplaced=list(doc.unplaced),
        accent_color=doc.accent_color,
        seq=doc.seq,
    )
