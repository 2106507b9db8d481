"""JSON round-trip for documents, conversations, and resources.

One JSON object per document with a stable key order. Inline SVG is stored
as a string; PNG payloads go through a BlobStore as relative file paths
into the session's asset directory (base64 inline when no store is given).
"""

from __future__ import annotations

import base64
import hashlib
from pathlib import Path

from .dsl import LayoutTree, parse_layout, serialize_layout
from .model import (
    CanvasSpec,
    Conversation,
    DesignAsset,
    DesignResource,
    InfographicDocument,
    Message,
    Rect,
    StyleProps,
)


class BlobStore:
    """Content-addressed PNG files under a directory, referenced by relative path."""

    def __init__(self, root: Path):
        self.root = Path(root)

    def put(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()[:16]
        rel = f"assets/{digest}.png"
        path = self.root / rel
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(data)
            tmp.replace(path)
        return rel

    def get(self, rel: str) -> bytes:
        return (self.root / rel).read_bytes()


def _bytes_out(data: bytes, blobs: BlobStore | None) -> dict:
    if blobs is not None:
        return {"path": blobs.put(data)}
    return {"b64": base64.b64encode(data).decode("ascii")}


def _bytes_in(payload: dict, blobs: BlobStore | None) -> bytes:
    if "path" in payload:
        if blobs is None:
            raise ValueError("payload references a file but no blob store was given")
        return blobs.get(payload["path"])
    return base64.b64decode(payload["b64"])


def rect_to_json(rect: Rect) -> dict:
    return {"x": rect.x, "y": rect.y, "w": rect.w, "h": rect.h}


def rect_from_json(data: dict) -> Rect:
    return Rect(data["x"], data["y"], data["w"], data["h"])


def style_to_json(style: StyleProps) -> dict:
    return {
        "fill_color": style.fill_color,
        "edge_color": style.edge_color,
        "edge_thickness": style.edge_thickness,
        "font_family": style.font_family,
        "font_size": style.font_size,
        "bold": style.bold,
        "italic": style.italic,
        "text_align": style.text_align,
        "mask_color": style.mask_color,
    }


def style_from_json(data: dict) -> StyleProps:
    return StyleProps(**data)


def asset_to_json(asset: DesignAsset, blobs: BlobStore | None) -> dict:
    if asset.kind in ("image", "background"):
        payload = _bytes_out(asset.payload if isinstance(asset.payload, bytes) else b"", blobs)
    elif asset.kind == "icon":
        payload = {"svg": asset.payload}
    else:
        payload = {"text": asset.payload}
    return {
        "id": asset.id,
        "kind": asset.kind,
        "rect": rect_to_json(asset.rect),
        "z": asset.z,
        "style": style_to_json(asset.style),
        "payload": payload,
        "role": asset.role,
        "slot": asset.slot,
        "pinned": asset.pinned,
    }


def asset_from_json(data: dict, blobs: BlobStore | None) -> DesignAsset:
    raw = data["payload"]
    if data["kind"] in ("image", "background"):
        payload: str | bytes = _bytes_in(raw, blobs)
    elif data["kind"] == "icon":
        payload = raw["svg"]
    else:
        payload = raw["text"]
    return DesignAsset(
        id=data["id"],
        kind=data["kind"],
        rect=rect_from_json(data["rect"]),
        z=data["z"],
        style=style_from_json(data["style"]),
        payload=payload,
        role=data.get("role"),
        slot=data.get("slot"),
        pinned=data.get("pinned", False),
    )


def document_to_json(doc: InfographicDocument, blobs: BlobStore | None = None) -> dict:
    layout = doc.layout
    return {
        "canvas": {
            "width": doc.canvas.width,
            "height": doc.canvas.height,
            "background_color": doc.canvas.background_color,
        },
        "assets": [asset_to_json(a, blobs) for a in doc.assets],
        "layout": serialize_layout(layout) if isinstance(layout, LayoutTree) else None,
        "unplaced": list(doc.unplaced),
        "accent_color": doc.accent_color,
        "seq": doc.seq,
    }


def document_from_json(data: dict, blobs: BlobStore | None = None) -> InfographicDocument:
    canvas = CanvasSpec(**data["canvas"])
    doc = InfographicDocument(
        canvas=canvas,
        assets=[asset_from_json(a, blobs) for a in data["assets"]],
        layout=parse_layout(data["layout"]) if data.get("layout") else None,
        unplaced=list(data.get("unplaced", [])),
        accent_color=data.get("accent_color"),
        seq=data.get("seq", 0),
    )
    return doc


def resource_to_json(res: DesignResource, blobs: BlobStore | None = None) -> dict:
    if res.media == "png":
        content = _bytes_out(res.content if isinstance(res.content, bytes) else b"", blobs)
    else:
        content = res.content
    return {
        "resource_id": res.resource_id,
        "task": res.task,
        "media": res.media,
        "content": content,
        "meta": dict(res.meta),
    }


def resource_from_json(data: dict, blobs: BlobStore | None = None) -> DesignResource:
    content = data["content"]
    if data["media"] == "png":
        content = _bytes_in(content, blobs)
    return DesignResource(
        resource_id=data["resource_id"],
        task=data["task"],
        media=data["media"],
        content=content,
        meta=dict(data.get("meta", {})),
    )


def conversation_to_json(conv: Conversation, blobs: BlobStore | None = None) -> dict:
    return {
        "session_id": conv.session_id,
        "messages": [
            {
                "role": m.role,
                "text": m.text,
                "resources": [resource_to_json(r, blobs) for r in m.resources],
            }
            for m in conv.messages
        ],
    }


def conversation_from_json(data: dict, blobs: BlobStore | None = None) -> Conversation:
    return Conversation(
        session_id=data["session_id"],
        messages=[
            Message(
                role=m["role"],
                text=m["text"],
                resources=[resource_from_json(r, blobs) for r in m.get("resources", [])],
            )
            for m in data.get("messages", [])
        ],
    )
