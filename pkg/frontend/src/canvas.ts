/**
 * Canvas pane: renders the document as absolutely positioned elements at a
 * display scale, with selection, drag-move, a resize handle, drop handling
 * for chat thumbnails, and a rectangle overlay for clip mode.
 *
 * All geometry sent to the server is in document coordinates; the display
 * scale is presentation only.
 */

import { SessionStore } from "./state.js";
import type { WireAsset } from "./types.js";

const HANDLE_SIZE = 10;

export class CanvasPane {
  readonly root: HTMLElement;
  readonly surface: HTMLElement;
  private scale = 0.5;
  private drag: { assetId: string; startX: number; startY: number; origX: number; origY: number } | null = null;
  private resize: { assetId: string; startX: number; startY: number; origW: number; origH: number } | null = null;
  private clipResourceTarget: string | null = null;
  private clipStart: { x: number; y: number } | null = null;
  private clipBox: HTMLElement | null = null;

  constructor(private readonly store: SessionStore, displayWidth = 640) {
    this.root = document.createElement("section");
    this.root.className = "canvas-pane";
    this.surface = document.createElement("div");
    this.surface.className = "canvas-surface";
    this.root.append(this.surface);
    this.scale = displayWidth / store.document.canvas.width;

    this.surface.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    this.surface.addEventListener("pointermove", (e) => this.onPointerMove(e));
    this.surface.addEventListener("pointerup", (e) => this.onPointerUp(e));
    this.surface.addEventListener("dragover", (e) => e.preventDefault());
    this.surface.addEventListener("drop", (e) => {
      e.preventDefault();
      const rid = e.dataTransfer?.getData("application/x-resource-id");
      if (rid) {
        const point = this.toDocument(e);
        void this.handleDrop(rid, point.x, point.y);
      }
    });

    store.subscribe(() => this.render());
    this.render();
  }

  /** Display pixels -> document coordinates. */
  private toDocument(event: { offsetX: number; offsetY: number }): { x: number; y: number } {
    return { x: event.offsetX / this.scale, y: event.offsetY / this.scale };
  }

  /** Drop a chat resource at a document-space point (drag-and-drop). */
  async handleDrop(resourceId: string, x: number, y: number): Promise<void> {
    await this.store.runOp("place_resource", { resource_id: resourceId, x, y });
  }

  /** Arm clip mode: the next rectangle drawn over an image asset clips it. */
  armClip(resourceId: string | null): void {
    this.clipResourceTarget = resourceId;
    this.surface.classList.toggle("clip-mode", resourceId !== null);
  }

  get clipArmed(): boolean {
    return this.clipResourceTarget !== null;
  }

  /** Issue the clip_rect op for a drawn rectangle (document coordinates). */
  async handleClipRect(assetId: string, x: number, y: number, w: number, h: number): Promise<void> {
    this.armClip(null);
    await this.store.runOp("clip_rect", { asset_id: assetId, rect: { x, y, w, h } });
  }

  /** Move via drag: optimistic position, server reconciles (and clamps). */
  async moveAsset(assetId: string, x: number, y: number): Promise<void> {
    await this.store.runOp("move", { asset_id: assetId, x, y }, (doc) => {
      const asset = doc.assets.find((a) => a.id === assetId);
      if (asset) {
        asset.rect.x = x;
        asset.rect.y = y;
      }
    });
  }

  async resizeAsset(assetId: string, w: number, h: number): Promise<void> {
    await this.store.runOp("resize", { asset_id: assetId, w, h }, (doc) => {
      const asset = doc.assets.find((a) => a.id === assetId);
      if (asset) {
        asset.rect.w = w;
        asset.rect.h = h;
      }
    });
  }

  private onPointerDown(event: PointerEvent): void {
    const target = event.target as HTMLElement;
    if (this.clipResourceTarget) {
      this.clipStart = this.toDocument(event);
      return;
    }
    const handleOwner = target.closest<HTMLElement>(".resize-handle");
    const element = target.closest<HTMLElement>(".asset");
    if (handleOwner?.dataset["assetId"]) {
      const asset = this.store.asset(handleOwner.dataset["assetId"]);
      if (asset) {
        this.resize = {
          assetId: asset.id,
          startX: event.clientX,
          startY: event.clientY,
          origW: asset.rect.w,
          origH: asset.rect.h,
        };
      }
      return;
    }
    if (element?.dataset["assetId"]) {
      const asset = this.store.asset(element.dataset["assetId"]);
      if (asset && asset.kind !== "background") {
        this.store.select(asset.id);
        this.drag = {
          assetId: asset.id,
          startX: event.clientX,
          startY: event.clientY,
          origX: asset.rect.x,
          origY: asset.rect.y,
        };
        return;
      }
    }
    this.store.select(null);
  }

  private onPointerMove(event: PointerEvent): void {
    if (this.clipStart && this.clipResourceTarget) {
      this.drawClipBox(event);
      return;
    }
    if (this.drag) {
      const dx = (event.clientX - this.drag.startX) / this.scale;
      const dy = (event.clientY - this.drag.startY) / this.scale;
      const asset = this.store.asset(this.drag.assetId);
      if (asset) {
        asset.rect.x = this.drag.origX + dx;
        asset.rect.y = this.drag.origY + dy;
        this.render();
      }
    }
  }

  private onPointerUp(event: PointerEvent): void {
    if (this.clipStart && this.clipResourceTarget) {
      const end = this.toDocument(event);
      const x = Math.min(this.clipStart.x, end.x);
      const y = Math.min(this.clipStart.y, end.y);
      const w = Math.abs(end.x - this.clipStart.x);
      const h = Math.abs(end.y - this.clipStart.y);
      this.clipStart = null;
      this.clipBox?.remove();
      this.clipBox = null;
      const asset = this.assetAt(x + w / 2, y + h / 2, "image");
      if (asset && w > 2 && h > 2) {
        void this.handleClipRect(asset.id, x, y, w, h);
      } else {
        this.armClip(null);
      }
      return;
    }
    if (this.drag) {
      const dx = (event.clientX - this.drag.startX) / this.scale;
      const dy = (event.clientY - this.drag.startY) / this.scale;
      const { assetId, origX, origY } = this.drag;
      this.drag = null;
      if (Math.abs(dx) > 0.5 || Math.abs(dy) > 0.5) {
        void this.moveAsset(assetId, origX + dx, origY + dy);
      }
    }
    if (this.resize) {
      const dw = (event.clientX - this.resize.startX) / this.scale;
      const dh = (event.clientY - this.resize.startY) / this.scale;
      const { assetId, origW, origH } = this.resize;
      this.resize = null;
      void this.resizeAsset(assetId, Math.max(4, origW + dw), Math.max(4, origH + dh));
    }
  }

  private drawClipBox(event: PointerEvent): void {
    if (!this.clipStart) return;
    if (!this.clipBox) {
      this.clipBox = document.createElement("div");
      this.clipBox.className = "clip-box";
      this.surface.append(this.clipBox);
    }
    const current = this.toDocument(event);
    const x = Math.min(this.clipStart.x, current.x) * this.scale;
    const y = Math.min(this.clipStart.y, current.y) * this.scale;
    const w = Math.abs(current.x - this.clipStart.x) * this.scale;
    const h = Math.abs(current.y - this.clipStart.y) * this.scale;
    Object.assign(this.clipBox.style, {
      left: `${x}px`,
      top: `${y}px`,
      width: `${w}px`,
      height: `${h}px`,
    });
  }

  assetAt(x: number, y: number, kind?: string): WireAsset | null {
    const hits = this.store.document.assets
      .filter((a) => (kind ? a.kind === kind : true))
      .filter((a) => x >= a.rect.x && x <= a.rect.x + a.rect.w && y >= a.rect.y && y <= a.rect.y + a.rect.h)
      .sort((a, b) => b.z - a.z || (b.id < a.id ? -1 : 1));
    return hits[0] ?? null;
  }

  render(): void {
    const doc = this.store.document;
    this.scale = (this.surface.clientWidth || 640) / doc.canvas.width;
    Object.assign(this.surface.style, {
      width: `${doc.canvas.width * this.scale}px`,
      height: `${doc.canvas.height * this.scale}px`,
      background: doc.canvas.background_color,
      position: "relative",
    });
    const ordered = [...doc.assets].sort((a, b) => a.z - b.z || (a.id < b.id ? -1 : 1));
    this.surface.replaceChildren(...ordered.map((a) => this.assetElement(a)));
    if (this.clipBox) this.surface.append(this.clipBox);
  }

  private assetElement(asset: WireAsset): HTMLElement {
    const el = document.createElement("div");
    el.className = `asset asset-${asset.kind}`;
    el.dataset["assetId"] = asset.id;
    el.dataset["kind"] = asset.kind;
    if (asset.role) el.dataset["role"] = asset.role;
    Object.assign(el.style, {
      position: "absolute",
      left: `${asset.rect.x * this.scale}px`,
      top: `${asset.rect.y * this.scale}px`,
      width: `${asset.rect.w * this.scale}px`,
      height: `${asset.rect.h * this.scale}px`,
    });
    if (asset.kind === "image" || asset.kind === "background") {
      const img = document.createElement("img");
      if (asset.payload.b64) img.src = `data:image/png;base64,${asset.payload.b64}`;
      img.style.width = "100%";
      img.style.height = "100%";
      img.draggable = false;
      el.append(img);
    } else if (asset.kind === "icon") {
      el.innerHTML = asset.payload.svg ?? "";
      const svg = el.querySelector("svg");
      if (svg) {
        svg.setAttribute("width", "100%");
        svg.setAttribute("height", "100%");
        svg.setAttribute("color", asset.style.fill_color);
      }
    } else {
      el.textContent = asset.payload.text ?? "";
      Object.assign(el.style, {
        color: asset.style.fill_color,
        fontFamily: asset.style.font_family,
        fontSize: `${asset.style.font_size * this.scale}px`,
        fontWeight: asset.style.bold ? "bold" : "normal",
        fontStyle: asset.style.italic ? "italic" : "normal",
        textAlign: asset.style.text_align,
        overflow: "hidden",
      });
      if (asset.style.mask_color) el.style.background = asset.style.mask_color;
    }
    if (asset.id === this.store.selectedAssetId) {
      el.classList.add("selected");
      const handle = document.createElement("div");
      handle.className = "resize-handle";
      handle.dataset["assetId"] = asset.id;
      Object.assign(handle.style, {
        position: "absolute",
        right: "0",
        bottom: "0",
        width: `${HANDLE_SIZE}px`,
        height: `${HANDLE_SIZE}px`,
      });
      el.append(handle);
    }
    return el;
  }
}
