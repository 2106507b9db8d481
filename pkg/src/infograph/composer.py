"""Binds design resources to layout slots and renders documents to SVG.

Placement keeps a strict contract: a placed asset's rect equals its slot's
absolute rect (clamped to the canvas); assets without a matching slot stack
in a right-margin tray and are listed in document.unplaced.
"""

from __future__ import annotations

import base64
import re
from xml.sax.saxutils import escape

from .dsl import LayoutTree, PlacementTarget, draw_layout
from .model import (
    DesignAsset,
    DesignResource,
    InfographicDocument,
    Rect,
    StyleProps,
    clamp_to_canvas,
)

# Tray geometry: right-margin column, items at 80% of the column width.
TRAY_WIDTH_FRACTION = 0.10
TRAY_ITEM_FRACTION = 0.8
TRAY_GAP = 8.0

MIN_FONT_SIZE = 8.0
LINE_HEIGHT = 1.25
AVG_ADVANCE = 0.6  # average glyph advance as a fraction of font size

BULLET_SLOTS = ("icon", "headline", "content")

TITLE_STYLE = StyleProps(font_size=30.0, bold=True, text_align="center")
HEADLINE_STYLE = StyleProps(font_size=18.0, bold=True)
CONTENT_STYLE = StyleProps(font_size=13.0)
ICON_STYLE = StyleProps(edge_thickness=1.5)


class NoLayoutError(RuntimeError):
    """auto_place was called with no layout to place into."""


def _luminance(color: str) -> float:
    r, g, b = (int(color[i : i + 2], 16) for i in (1, 3, 5))
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


def _accent_from_palette(palette: list[str] | None) -> str | None:
    if not palette:
        return None
    return min(palette, key=_luminance)


def _icon_svg(icon) -> str:
    if isinstance(icon, str):
        return icon
    if isinstance(icon, dict):
        return icon["svg"]
    return icon.svg  # IconResult


def add_to_tray(doc: InfographicDocument, asset: DesignAsset) -> DesignAsset:
    """Stack an asset into the unplaced tray column."""
    canvas = doc.canvas
    tray_w = canvas.width * TRAY_WIDTH_FRACTION
    item = tray_w * TRAY_ITEM_FRACTION
    x = canvas.width - tray_w + (tray_w - item) / 2
    index = len(doc.unplaced)
    y = min(index * (item + TRAY_GAP), max(0.0, canvas.height - item))
    asset.rect = clamp_to_canvas(Rect(x, y, item, item), canvas)
    asset.slot = None
    if asset.id not in doc.unplaced:
        doc.unplaced.append(asset.id)
    return asset


def _retray(doc: InfographicDocument) -> None:
    """Recompute tray rects for the current unplaced list, in order."""
    ids = list(doc.unplaced)
    doc.unplaced = []
    for asset_id in ids:
        asset = doc.get(asset_id)
        if asset is not None:
            add_to_tray(doc, asset)


def set_background(doc: InfographicDocument, resource: DesignResource) -> DesignAsset:
    """Create or replace the full-canvas background from a PNG resource."""
    accent = _accent_from_palette(resource.meta.get("palette"))
    if accent:
        doc.accent_color = accent
    existing = doc.background()
    if existing is not None:
        existing.payload = resource.content
        existing.rect = Rect(0, 0, doc.canvas.width, doc.canvas.height)
        return existing
    asset = DesignAsset(
        id=doc.next_id(),
        kind="background",
        rect=Rect(0, 0, doc.canvas.width, doc.canvas.height),
        z=0,
        payload=resource.content,
        role="background",
    )
    return doc.add(asset)


def _make_text(doc: InfographicDocument, text: str, role: str, style: StyleProps) -> DesignAsset:
    return DesignAsset(
        id=doc.next_id(),
        kind="text",
        rect=Rect(0, 0, 10, 10),  # placeholder; assignment or tray sets it
        z=0,
        style=style,
        payload=text,
        role=role,
    )


def _make_icon(doc: InfographicDocument, svg: str) -> DesignAsset:
    style = ICON_STYLE
    if doc.accent_color:
        style = StyleProps(
            fill_color=doc.accent_color,
            edge_color=style.edge_color,
            edge_thickness=style.edge_thickness,
        )
    return DesignAsset(
        id=doc.next_id(),
        kind="icon",
        rect=Rect(0, 0, 64, 64),
        z=0,
        style=style,
        payload=svg,
        role="icon",
    )


def _make_image(doc: InfographicDocument, png: bytes) -> DesignAsset:
    return DesignAsset(
        id=doc.next_id(),
        kind="image",
        rect=Rect(0, 0, 256, 256),
        z=0,
        payload=png,
        role="image",
    )


def _assign(doc: InfographicDocument, asset: DesignAsset, target: PlacementTarget) -> None:
    asset.rect = clamp_to_canvas(target.abs_rect, doc.canvas)
    asset.slot = target.path
    if asset.id in doc.unplaced:
        doc.unplaced.remove(asset.id)


def _bullet_containers(targets: list[PlacementTarget]) -> list[list[PlacementTarget]]:
    """Group targets per container, keeping only bullet-bearing containers."""
    by_container: dict[str, list[PlacementTarget]] = {}
    order: list[str] = []
    for t in targets:
        if t.container_path not in by_container:
            by_container[t.container_path] = []
            order.append(t.container_path)
        by_container[t.container_path].append(t)
    groups = []
    for path in order:
        group = by_container[path]
        if any(t.slot_type in BULLET_SLOTS for t in group):
            groups.append(group)
    return groups


def auto_place(
    doc: InfographicDocument,
    bundle=None,
    icons: dict | None = None,
    images: list[DesignResource] | None = None,
    tree: LayoutTree | None = None,
) -> InfographicDocument:
    """Place new resources onto the document's layout.

    bundle: InfoBundle (title + bullets); icons: icon_keyword -> svg (or
    IconResult); images: PNG resources (backgrounds fill the canvas, the
    rest feed image slots in slot order). Surplus items land in the tray
    and document.unplaced; surplus slots stay empty.
    """
    tree = tree or doc.layout
    if tree is None:
        raise NoLayoutError("no layout available; generate or apply one first")
    if doc.layout is None:
        doc.layout = tree
    icons = icons or {}
    images = list(images or [])

    targets = draw_layout(tree, doc.canvas)
    occupied = {a.slot for a in doc.assets if a.slot}

    def free(target: PlacementTarget) -> bool:
        return target.path not in occupied

    for resource in [r for r in images if r.task == "background"]:
        set_background(doc, resource)

    if bundle is not None:
        title_target = next((t for t in targets if t.slot_type == "title" and free(t)), None)
        title_asset = doc.add(_make_text(doc, bundle.title, "title", TITLE_STYLE))
        if title_target is not None:
            _assign(doc, title_asset, title_target)
            occupied.add(title_target.path)
        else:
            add_to_tray(doc, title_asset)

        containers = [
            group
            for group in _bullet_containers(targets)
            if all(free(t) for t in group if t.slot_type in BULLET_SLOTS)
        ]
        for i, bullet in enumerate(bundle.bullet_points):
            group = containers[i] if i < len(containers) else []
            slot_map = {t.slot_type: t for t in group}
            pieces = [
                ("icon", _make_icon(doc, _icon_svg(icons[bullet.icon_keyword])))
                if bullet.icon_keyword in icons
                else None,
                ("headline", _make_text(doc, bullet.headline, "headline", HEADLINE_STYLE)),
                ("content", _make_text(doc, bullet.content, "content", CONTENT_STYLE)),
            ]
            for piece in pieces:
                if piece is None:
                    continue
                slot_type, asset = piece
                doc.add(asset)
                target = slot_map.get(slot_type)
                if target is not None and free(target):
                    _assign(doc, asset, target)
                    occupied.add(target.path)
                else:
                    add_to_tray(doc, asset)

    pivots = [r for r in images if r.task != "background"]
    image_targets = iter([t for t in targets if t.slot_type == "image" and free(t)])
    for resource in pivots:
        asset = doc.add(_make_image(doc, resource.content))
        target = next(image_targets, None)
        if target is not None:
            _assign(doc, asset, target)
            occupied.add(target.path)
        else:
            add_to_tray(doc, asset)

    doc.check_invariants()
    return doc


def _free_targets(doc: InfographicDocument, slot_type: str) -> list[PlacementTarget]:
    if doc.layout is None:
        return []
    occupied = {a.slot for a in doc.assets if a.slot}
    return [
        t
        for t in draw_layout(doc.layout, doc.canvas)
        if t.slot_type == slot_type and t.path not in occupied
    ]


def place_icon(doc: InfographicDocument, svg: str) -> DesignAsset:
    """New icon asset into the first free icon slot, else the tray."""
    asset = doc.add(_make_icon(doc, svg))
    targets = _free_targets(doc, "icon")
    if targets:
        _assign(doc, asset, targets[0])
    else:
        add_to_tray(doc, asset)
    return asset


def place_image(doc: InfographicDocument, png: bytes) -> DesignAsset:
    """New image asset into the first free image slot, else the tray."""
    asset = doc.add(_make_image(doc, png))
    targets = _free_targets(doc, "image")
    if targets:
        _assign(doc, asset, targets[0])
    else:
        add_to_tray(doc, asset)
    return asset


def tray_bundle(doc: InfographicDocument, bundle, icons: dict | None = None) -> list[DesignAsset]:
    """Create bundle assets with no layout available; everything stacks in the tray."""
    icons = icons or {}
    created = [doc.add(_make_text(doc, bundle.title, "title", TITLE_STYLE))]
    for bullet in bundle.bullet_points:
        if bullet.icon_keyword in icons:
            created.append(doc.add(_make_icon(doc, _icon_svg(icons[bullet.icon_keyword]))))
        created.append(doc.add(_make_text(doc, bullet.headline, "headline", HEADLINE_STYLE)))
        created.append(doc.add(_make_text(doc, bullet.content, "content", CONTENT_STYLE)))
    for asset in created:
        add_to_tray(doc, asset)
    return created


def apply_layout(doc: InfographicDocument, tree: LayoutTree) -> InfographicDocument:
    """Re-flow existing assets into a new layout.

    Assets keep their identity; each slot takes the first unassigned asset
    whose role matches, in document order. Pinned assets (manually moved)
    are left untouched; assets with no matching slot stack in the tray.
    """
    targets = draw_layout(tree, doc.canvas)
    movable = [a for a in doc.assets if not a.pinned and a.kind != "background"]
    for asset in movable:
        asset.slot = None
    for target in targets:
        candidate = next(
            (a for a in movable if a.slot is None and a.role == target.slot_type), None
        )
        if candidate is not None:
            _assign(doc, candidate, target)
    doc.unplaced = [a.id for a in movable if a.slot is None]
    _retray(doc)
    doc.layout = tree
    doc.check_invariants()
    return doc


# ---------------------------------------------------------------------------
# SVG export
# ---------------------------------------------------------------------------


def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return text if text else "0"


def wrap_text(text: str, rect: Rect, font_size: float) -> tuple[list[str], float, bool]:
    """Greedy wrap with an average-advance width model and a shrink-to-fit loop.

    Returns (lines, final font size, overflowed). Font size steps down by
    1pt to MIN_FONT_SIZE; past that the text is clipped to the lines that fit.
    """
    words = text.split()
    if not words:
        return [], font_size, False

    def layout(size: float) -> list[str]:
        max_chars = max(1, int(rect.w / (AVG_ADVANCE * size)))
        lines: list[str] = []
        current = ""
        for word in words:
            while len(word) > max_chars:  # hard-break words wider than the rect
                if current:
                    lines.append(current)
                    current = ""
                lines.append(word[:max_chars])
                word = word[max_chars:]
            joined = f"{current} {word}".strip()
            if len(joined) <= max_chars:
                current = joined
            else:
                if current:
                    lines.append(current)
                current = word
        if current:
            lines.append(current)
        return lines

    size = float(font_size)
    while True:
        lines = layout(size)
        fits_height = len(lines) * size * LINE_HEIGHT <= rect.h + 1e-6
        if fits_height:
            return lines, size, False
        if size - 1.0 < MIN_FONT_SIZE:
            max_lines = max(1, int(rect.h / (size * LINE_HEIGHT)))
            return lines[:max_lines], size, True
        size -= 1.0


_SVG_ROOT = re.compile(r"<svg\b[^>]*>", re.DOTALL)
_VIEWBOX = re.compile(r'viewBox="([^"]*)"')


def _embed_icon(asset: DesignAsset) -> str:
    """Inline an icon as a nested <svg> positioned at the asset rect.

    Recoloring flows through CSS currentColor (the color attribute is set to
    the style's fill color); icons that hardcode their paints keep them.
    """
    payload = asset.payload if isinstance(asset.payload, str) else ""
    m = _SVG_ROOT.search(payload)
    if not m:
        return ""
    root_tag = m.group(0)
    inner = payload[m.end() : payload.rfind("</svg>")]
    vb = _VIEWBOX.search(root_tag)
    viewbox = vb.group(1) if vb else "0 0 24 24"
    fill = "none" if 'fill="none"' in root_tag else asset.style.fill_color
    r = asset.rect
    return (
        f'<svg x="{_fmt(r.x)}" y="{_fmt(r.y)}" width="{_fmt(r.w)}" height="{_fmt(r.h)}" '
        f'viewBox="{escape(viewbox)}" fill="{fill}" color="{asset.style.fill_color}" '
        f'stroke-width="{_fmt(asset.style.edge_thickness)}" '
        f'stroke-linecap="round" stroke-linejoin="round">{inner}</svg>'
    )


def _render_text(asset: DesignAsset) -> str:
    style = asset.style
    rect = asset.rect
    text = asset.payload if isinstance(asset.payload, str) else ""
    lines, size, overflow = wrap_text(text, rect, style.font_size)
    if style.text_align == "center":
        x = rect.x + rect.w / 2
        anchor = "middle"
    elif style.text_align == "right":
        x = rect.x + rect.w
        anchor = "end"
    else:
        x = rect.x
        anchor = "start"
    parts = []
    if style.mask_color:
        parts.append(
            f'<rect x="{_fmt(rect.x)}" y="{_fmt(rect.y)}" width="{_fmt(rect.w)}" '
            f'height="{_fmt(rect.h)}" fill="{style.mask_color}"/>'
        )
    attrs = (
        f'x="{_fmt(x)}" y="{_fmt(rect.y + size)}" font-family="{escape(style.font_family)}" '
        f'font-size="{_fmt(size)}" fill="{style.fill_color}" text-anchor="{anchor}"'
    )
    if style.bold:
        attrs += ' font-weight="bold"'
    if style.italic:
        attrs += ' font-style="italic"'
    if overflow:
        attrs += ' data-overflow="true"'
    spans = []
    for i, line in enumerate(lines):
        dy = "0" if i == 0 else _fmt(size * LINE_HEIGHT)
        spans.append(f'<tspan x="{_fmt(x)}" dy="{dy}">{escape(line)}</tspan>')
    parts.append(f"<text {attrs}>{''.join(spans)}</text>")
    return "".join(parts)


def _render_image(asset: DesignAsset, asset_paths: dict[str, str] | None) -> str:
    rect = asset.rect
    if asset_paths and asset.id in asset_paths:
        href = asset_paths[asset.id]
    else:
        payload = asset.payload if isinstance(asset.payload, bytes) else b""
        href = "data:image/png;base64," + base64.b64encode(payload).decode("ascii")
    aspect = "xMidYMid slice" if asset.kind == "background" else "xMidYMid meet"
    return (
        f'<image x="{_fmt(rect.x)}" y="{_fmt(rect.y)}" width="{_fmt(rect.w)}" '
        f'height="{_fmt(rect.h)}" preserveAspectRatio="{aspect}" xlink:href="{href}"/>'
    )


def export_svg(doc: InfographicDocument, asset_paths: dict[str, str] | None = None) -> str:
    """Render the document to a standalone SVG 1.1 string.

    Byte-deterministic for a given document. Images embed as base64 data
    URIs unless asset_paths maps their asset id to a relative file path.
    """
    canvas = doc.canvas
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        '<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" '
        f'width="{canvas.width}" height="{canvas.height}" '
        f'viewBox="0 0 {canvas.width} {canvas.height}">\n',
        f'<rect x="0" y="0" width="{canvas.width}" height="{canvas.height}" '
        f'fill="{canvas.background_color}"/>\n',
    ]
    for asset in doc.zsorted():
        role = f' data-role="{escape(asset.role)}"' if asset.role else ""
        out.append(f'<g data-asset-id="{escape(asset.id)}" data-kind="{asset.kind}"{role}>')
        if asset.kind in ("image", "background"):
            out.append(_render_image(asset, asset_paths))
        elif asset.kind == "icon":
            out.append(_embed_icon(asset))
        else:
            out.append(_render_text(asset))
        out.append("</g>\n")
    out.append("</svg>\n")
    return "".join(out)
