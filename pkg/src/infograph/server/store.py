"""Session store: per-session conversation + document with disk persistence.

One directory per session (session.json plus an assets/ blob directory),
written temp-then-rename so a crash never leaves a half-written state.
Commands on one session are serialized through a per-session lock; distinct
sessions run concurrently.
"""

from __future__ import annotations

import base64
import hashlib
import json
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .. import composer
from ..agent import DecisionProvider, RuleBasedProvider, ToolRegistry, dispatch
from ..docio import (
    BlobStore,
    conversation_from_json,
    conversation_to_json,
    document_from_json,
    document_to_json,
)
from ..dsl import LayoutError, parse_layout, validate_layout
from ..model import (
    CanvasSpec,
    Conversation,
    DesignAsset,
    DesignResource,
    InfographicDocument,
    InvariantViolation,
    Message,
    Rect,
    clamp_to_canvas,
    copy_document,
)
from ..tools import ToolContext, build_registry, clip_image
from ..tools.images import png_size
from ..tools.info import InfoBundle, BulletPoint


class SessionNotFound(KeyError):
    pass


class UnknownAsset(KeyError):
    pass


class UnknownResource(KeyError):
    pass


class InvalidOp(ValueError):
    pass


class StorageError(OSError):
    pass


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class EngineConfig:
    """Backends and provider shared by every session of a store."""

    canvas: CanvasSpec = field(default_factory=CanvasSpec)
    seed: int = 0
    provider: DecisionProvider = field(default_factory=RuleBasedProvider)
    image_backend: object | None = None
    info_source: object | None = None
    layout_source: object | None = None
    icon_client: object | None = None
    segmentation_backend: object | None = None


@dataclass
class Session:
    id: str
    conversation: Conversation
    document: InfographicDocument
    created_at: str
    updated_at: str
    res_seq: int = 0
    events: list[dict] = field(default_factory=list)

    def next_resource_id(self) -> str:
        self.res_seq += 1
        return f"r{self.res_seq:04d}"

    def find_resource(self, resource_id: str | None) -> DesignResource | None:
        """Look up a resource by id; None id means the most recent PNG."""
        found = None
        for message in self.conversation.messages:
            for res in message.resources:
                if resource_id is None:
                    if res.media == "png":
                        found = res
                elif res.resource_id == resource_id:
                    found = res
        return found


def _fingerprint(asset: DesignAsset) -> str:
    payload = asset.payload
    if isinstance(payload, bytes):
        body = hashlib.sha256(payload).hexdigest()
    else:
        body = str(payload)
    key = json.dumps(
        [asset.kind, [asset.rect.x, asset.rect.y, asset.rect.w, asset.rect.h], asset.z,
         repr(asset.style), body, asset.role, asset.slot, asset.pinned]
    )
    return hashlib.sha256(key.encode()).hexdigest()


def document_diff(before: dict[str, str], doc: InfographicDocument) -> dict:
    after = {a.id: _fingerprint(a) for a in doc.assets}
    return {
        "added": sorted(set(after) - set(before)),
        "removed": sorted(set(before) - set(after)),
        "changed": sorted(k for k in after.keys() & before.keys() if after[k] != before[k]),
    }


class SessionStore:
    """Sessions in memory, optionally persisted under data_dir."""

    def __init__(self, data_dir: str | Path | None = None, config: EngineConfig | None = None):
        self.data_dir = Path(data_dir) if data_dir else None
        self.config = config or EngineConfig()
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._store_lock = threading.Lock()
        self._event_cond = threading.Condition()
        if self.data_dir:
            try:
                self.data_dir.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise StorageError(f"cannot create data dir: {exc}") from exc

    # -- session lifecycle -------------------------------------------------

    def create_session(self, session_id: str | None = None) -> Session:
        sid = session_id or uuid.uuid4().hex[:12]
        now = _now()
        session = Session(
            id=sid,
            conversation=Conversation(session_id=sid),
            document=InfographicDocument(canvas=self.config.canvas),
            created_at=now,
            updated_at=now,
        )
        with self._store_lock:
            if sid in self._sessions:
                raise StorageError(f"session {sid} already exists")
            self._sessions[sid] = session
            self._locks[sid] = threading.RLock()
        self._save(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._store_lock:
            session = self._sessions.get(session_id)
        if session is None:
            session = self._load(session_id)
            if session is None:
                raise SessionNotFound(session_id)
            with self._store_lock:
                self._sessions.setdefault(session_id, session)
                self._locks.setdefault(session_id, threading.RLock())
        return session

    def _lock(self, session_id: str) -> threading.RLock:
        with self._store_lock:
            lock = self._locks.get(session_id)
        if lock is None:
            raise SessionNotFound(session_id)
        return lock

    # -- persistence ---------------------------------------------------------

    def _session_dir(self, session_id: str) -> Path | None:
        return self.data_dir / session_id if self.data_dir else None

    def _save(self, session: Session) -> None:
        directory = self._session_dir(session.id)
        if directory is None:
            return
        try:
            directory.mkdir(parents=True, exist_ok=True)
            blobs = BlobStore(directory)
            payload = {
                "session_id": session.id,
                "created_at": session.created_at,
                "updated_at": session.updated_at,
                "res_seq": session.res_seq,
                "conversation": conversation_to_json(session.conversation, blobs),
                "document": document_to_json(session.document, blobs),
            }
            tmp = directory / "session.json.tmp"
            tmp.write_text(json.dumps(payload, indent=1), encoding="utf-8")
            tmp.replace(directory / "session.json")
        except OSError as exc:
            raise StorageError(f"cannot persist session {session.id}: {exc}") from exc

    def _load(self, session_id: str) -> Session | None:
        directory = self._session_dir(session_id)
        if directory is None:
            return None
        path = directory / "session.json"
        if not path.exists():
            return None
        blobs = BlobStore(directory)
        data = json.loads(path.read_text(encoding="utf-8"))
        return Session(
            id=data["session_id"],
            conversation=conversation_from_json(data["conversation"], blobs),
            document=document_from_json(data["document"], blobs),
            created_at=data["created_at"],
            updated_at=data["updated_at"],
            res_seq=data.get("res_seq", 0),
        )

    def _touch(self, session: Session) -> None:
        session.updated_at = max(_now(), session.created_at)
        self._save(session)

    # -- events ----------------------------------------------------------------

    def publish(self, session: Session, event: dict) -> None:
        with self._event_cond:
            session.events.append(event)
            self._event_cond.notify_all()

    def events_since(self, session_id: str, since: int, wait: float = 0.0) -> list[dict]:
        session = self.get(session_id)
        with self._event_cond:
            if wait > 0 and len(session.events) <= since:
                self._event_cond.wait(timeout=wait)
            return session.events[since:]

    # -- chat / dispatch ---------------------------------------------------------

    def _registry_for(self, session: Session) -> ToolRegistry:
        ctx = ToolContext(
            canvas=session.document.canvas,
            seed=self.config.seed,
            resolve_resource=session.find_resource,
            next_resource_id=session.next_resource_id,
        )
        if self.config.image_backend is not None:
            ctx.image_backend = self.config.image_backend
        if self.config.info_source is not None:
            ctx.info_source = self.config.info_source
        if self.config.layout_source is not None:
            ctx.layout_source = self.config.layout_source
        ctx.icon_client = self.config.icon_client
        ctx.segmentation_backend = self.config.segmentation_backend
        registry = build_registry(ctx)
        return self._with_progress_events(registry, session)

    def _with_progress_events(self, registry: ToolRegistry, session: Session) -> ToolRegistry:
        wrapped = ToolRegistry()
        for signature in registry.signatures():
            entry = registry.get(signature.name)

            def run(args: dict, _entry=entry, _name=signature.name) -> DesignResource:
                self.publish(session, {"event": "tool_started", "tool": _name})
                try:
                    resource = _entry.executor(args)
                except Exception:
                    self.publish(session, {"event": "tool_failed", "tool": _name})
                    raise
                self.publish(
                    session,
                    {"event": "tool_finished", "tool": _name, "resource_id": resource.resource_id},
                )
                return resource

            wrapped.register(signature, run)
        return wrapped

    def post_message(self, session_id: str, text: str) -> dict:
        """Run one dispatch turn and auto-place any produced resource."""
        session = self.get(session_id)
        with self._lock(session_id):
            before_count = len(session.conversation.messages)
            before = {a.id: _fingerprint(a) for a in session.document.assets}
            session.conversation.append(Message(role="user", text=text))
            registry = self._registry_for(session)
            outcome = dispatch(session.conversation, registry, self.config.provider)
            if outcome.resource is not None:
                self._auto_place(session, outcome.resource)
            session.document.check_invariants()
            self._touch(session)
            self.publish(session, {"event": "done"})
            new_messages = session.conversation.messages[before_count:]
            return {
                "messages": [
                    {
                        "role": m.role,
                        "text": m.text,
                        "resources": [_resource_summary(r) for r in m.resources],
                    }
                    for m in new_messages
                ],
                "outcome": {
                    "variant": outcome.decision.variant,
                    "tool": outcome.decision.call.tool_name if outcome.decision.call else None,
                    "resource_id": outcome.resource.resource_id if outcome.resource else None,
                    "error": (
                        {"code": outcome.error.code, "detail": outcome.error.detail}
                        if outcome.error
                        else None
                    ),
                },
                "diff": document_diff(before, session.document),
            }

    def _auto_place(self, session: Session, resource: DesignResource) -> None:
        """Automatic placement policy; layout resources wait for a click."""
        doc = session.document
        if resource.task == "layout":
            return
        if resource.task == "background":
            composer.set_background(doc, resource)
            return
        if resource.task == "information_collection":
            bundle = _bundle_from_content(resource.content)
            icons = resource.content.get("icons", {})
            if doc.layout is not None:
                composer.auto_place(doc, bundle=bundle, icons=icons)
            else:
                composer.tray_bundle(doc, bundle, icons)
            return
        if resource.task == "visual_element":
            composer.place_icon(doc, resource.content)
            return
        # pivot_figure / local_adjustment PNGs
        composer.place_image(doc, resource.content)

    # -- canvas ops -----------------------------------------------------------

    def canvas_op(self, session_id: str, op: str, payload: dict) -> dict:
        """Apply one canvas operation transactionally; returns a document diff."""
        session = self.get(session_id)
        with self._lock(session_id):
            before = {a.id: _fingerprint(a) for a in session.document.assets}
            work = copy_document(session.document)
            handler = getattr(self, f"_op_{op}", None)
            if handler is None:
                raise InvalidOp(f"unknown canvas op {op!r}")
            handler(session, work, payload)
            work.check_invariants()
            session.document = work
            self._touch(session)
            return document_diff(before, session.document)

    @staticmethod
    def _asset(doc: InfographicDocument, payload: dict) -> DesignAsset:
        asset = doc.get(payload.get("asset_id", ""))
        if asset is None:
            raise UnknownAsset(payload.get("asset_id", "<missing>"))
        return asset

    def _op_move(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        asset = self._asset(doc, payload)
        if asset.kind == "background":
            raise InvalidOp("the background cannot be moved")
        rect = Rect(float(payload["x"]), float(payload["y"]), asset.rect.w, asset.rect.h)
        asset.rect = clamp_to_canvas(rect, doc.canvas)
        asset.pinned = True
        asset.slot = None
        if asset.id in doc.unplaced:
            doc.unplaced.remove(asset.id)

    def _op_resize(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        asset = self._asset(doc, payload)
        if asset.kind == "background":
            raise InvalidOp("the background cannot be resized")
        w = float(payload["w"])
        h = float(payload["h"])
        if w <= 0 or h <= 0:
            raise InvariantViolation("size must be positive")
        x = float(payload.get("x", asset.rect.x))
        y = float(payload.get("y", asset.rect.y))
        asset.rect = clamp_to_canvas(Rect(x, y, w, h), doc.canvas)
        asset.pinned = True

    def _op_set_style(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        asset = self._asset(doc, payload)
        fields = payload.get("style", {})
        if not isinstance(fields, dict) or not fields:
            raise InvalidOp("set_style needs a non-empty style object")
        try:
            asset.style = replace(asset.style, **fields)
        except TypeError as exc:
            raise InvalidOp(f"unknown style field: {exc}") from exc

    def _op_delete(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        asset = self._asset(doc, payload)
        doc.remove(asset.id)

    def _op_place_resource(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        resource = session.find_resource(payload.get("resource_id"))
        if resource is None:
            raise UnknownResource(payload.get("resource_id", "<missing>"))
        x = float(payload.get("x", doc.canvas.width / 2))
        y = float(payload.get("y", doc.canvas.height / 2))
        if resource.media == "svg":
            w = h = 64.0
            asset = DesignAsset(
                id=doc.next_id(),
                kind="icon",
                rect=Rect(x - w / 2, y - h / 2, w, h),
                z=0,
                style=composer.ICON_STYLE,
                payload=resource.content,
                role="icon",
                pinned=True,
            )
        elif resource.media == "png":
            iw, ih = png_size(resource.content)
            scale = min(1.0, 256.0 / iw)
            w, h = iw * scale, ih * scale
            asset = DesignAsset(
                id=doc.next_id(),
                kind="image",
                rect=Rect(x - w / 2, y - h / 2, w, h),
                z=0,
                payload=resource.content,
                role="image",
                pinned=True,
            )
        else:
            raise InvalidOp(f"resource media {resource.media} cannot be dropped on the canvas")
        asset.rect = clamp_to_canvas(asset.rect, doc.canvas)
        doc.add(asset)

    def _op_apply_layout(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        resource = session.find_resource(payload.get("resource_id"))
        if resource is None or resource.task != "layout":
            raise UnknownResource(payload.get("resource_id", "<missing>"))
        try:
            tree = parse_layout(resource.content)
        except LayoutError as exc:
            raise InvalidOp(f"layout resource does not parse: {exc}") from exc
        report = validate_layout(tree)
        if not report.ok:
            raise InvalidOp(f"layout resource is invalid: {report.summary()}")
        composer.apply_layout(doc, tree)

    def _op_clip_rect(self, session: Session, doc: InfographicDocument, payload: dict) -> None:
        asset = self._asset(doc, payload)
        if asset.kind not in ("image", "background") or not isinstance(asset.payload, bytes):
            raise InvalidOp("clip_rect targets image assets")
        sel = payload.get("rect") or {}
        sel_rect = Rect(float(sel["x"]), float(sel["y"]), float(sel["w"]), float(sel["h"]))
        # Canvas-space selection mapped proportionally onto the source pixels.
        iw, ih = png_size(asset.payload)
        px = (sel_rect.x - asset.rect.x) / asset.rect.w * iw
        py = (sel_rect.y - asset.rect.y) / asset.rect.h * ih
        pw = sel_rect.w / asset.rect.w * iw
        ph = sel_rect.h / asset.rect.h * ih
        if px < 0 or py < 0 or px + pw > iw + 1e-6 or py + ph > ih + 1e-6:
            raise InvalidOp("clip rectangle exits the image")
        clipped = clip_image(
            asset.payload,
            {"rectangle": Rect(px, py, pw, ph)},
            resource_id=session.next_resource_id(),
        )
        duplicate = DesignAsset(
            id=doc.next_id(),
            kind="image",
            rect=clamp_to_canvas(sel_rect, doc.canvas),
            z=0,
            payload=clipped.content,
            role="image",
            pinned=True,
        )
        doc.add(duplicate)

    # -- layout apply + export ----------------------------------------------------

    def apply_layout_resource(self, session_id: str, resource_id: str) -> dict:
        return self.canvas_op(session_id, "apply_layout", {"resource_id": resource_id})

    def export_svg(self, session_id: str) -> str:
        session = self.get(session_id)
        with self._lock(session_id):
            return composer.export_svg(session.document)

    def session_json(self, session_id: str) -> dict:
        session = self.get(session_id)
        with self._lock(session_id):
            return {
                "session_id": session.id,
                "created_at": session.created_at,
                "updated_at": session.updated_at,
                "conversation": conversation_to_json(session.conversation),
                "document": document_to_json(session.document),
            }


def _bundle_from_content(content) -> InfoBundle:
    data = content.get("bundle", content) if isinstance(content, dict) else {}
    return InfoBundle(
        title=data["title"],
        bullet_points=tuple(
            BulletPoint(b["icon_keyword"], b["headline"], b["content"])
            for b in data["bullet_points"]
        ),
    )


def _resource_summary(res: DesignResource) -> dict:
    summary: dict = {"resource_id": res.resource_id, "task": res.task, "media": res.media}
    if res.media == "svg":
        summary["svg"] = res.content
    elif res.media == "layout_dsl":
        summary["layout"] = res.content
    elif res.media == "text_bundle":
        summary["bundle"] = res.content
    else:
        summary["png_b64"] = base64.b64encode(res.content).decode("ascii")
    if res.meta:
        summary["meta"] = {k: v for k, v in res.meta.items() if k != "alternatives"}
    return summary
