/**
 * Chat pane: message history with embedded resource cards, plus the input
 * row. Images render as draggable thumbnails, layouts as clickable
 * wireframe cards, info bundles as title + bullet cards.
 */

import { SessionStore } from "./state.js";
import type { WireMessage, WireResource } from "./types.js";

export interface ChatCallbacks {
  /** A layout card was clicked: apply it to the canvas. */
  onApplyLayout: (resourceId: string) => void;
  /** The clip context action on an image resource was chosen. */
  onClipRequest: (resourceId: string) => void;
}

/** Display-only geometry for layout cards; canvas placement always comes
 * from the server, this never feeds an op. */
export function wireframeRects(
  layout: string,
): { x: number; y: number; w: number; h: number }[] {
  const rects: { x: number; y: number; w: number; h: number }[] = [];
  const frames: { x: number; y: number; w: number; h: number }[] = [
    { x: 0, y: 0, w: 1, h: 1 },
  ];
  const token = /\((C|G|title|image|icon|headline|content),([\d.]+),([\d.]+),([\d.]+),([\d.]+)/g;
  const closers = /\]\)/g;
  // walk opens and closes in source order to maintain the frame stack
  const events: { index: number; open?: RegExpExecArray }[] = [];
  for (let m = token.exec(layout); m; m = token.exec(layout)) {
    events.push({ index: m.index, open: m });
  }
  for (let m = closers.exec(layout); m; m = closers.exec(layout)) {
    events.push({ index: m.index });
  }
  events.sort((a, b) => a.index - b.index);
  for (const event of events) {
    if (!event.open) {
      if (frames.length > 1) frames.pop();
      continue;
    }
    const [, tag, xs, ys, ws, hs] = event.open;
    const frame = frames[frames.length - 1]!;
    const rel = {
      x: frame.x + Number(xs) * frame.w,
      y: frame.y + Number(ys) * frame.h,
      w: Number(ws) * frame.w,
      h: Number(hs) * frame.h,
    };
    if (tag === "C" || tag === "G") {
      frames.push(rel);
      if (tag === "G") rects.push(rel);
    } else {
      rects.push(rel);
    }
  }
  return rects;
}

function layoutCard(resource: WireResource, callbacks: ChatCallbacks): HTMLElement {
  const card = document.createElement("button");
  card.className = "resource-card layout-card";
  card.dataset["resourceId"] = resource.resource_id;
  card.title = "Click to apply this layout";
  const svgRects = wireframeRects(resource.layout ?? "")
    .map(
      (r) =>
        `<rect x="${(r.x * 100).toFixed(1)}" y="${(r.y * 60).toFixed(1)}" ` +
        `width="${(r.w * 100).toFixed(1)}" height="${(r.h * 60).toFixed(1)}" ` +
        `fill="none" stroke="#5577aa" stroke-width="1"/>`,
    )
    .join("");
  card.innerHTML =
    `<svg viewBox="0 0 100 60" width="120" height="72">${svgRects}</svg>` +
    `<span class="card-label">layout suggestion</span>`;
  card.addEventListener("click", () => callbacks.onApplyLayout(resource.resource_id));
  return card;
}

function imageCard(resource: WireResource, callbacks: ChatCallbacks): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "resource-card image-card";
  const img = document.createElement("img");
  img.className = "thumb";
  img.src = `data:image/png;base64,${resource.png_b64 ?? ""}`;
  img.draggable = true;
  img.dataset["resourceId"] = resource.resource_id;
  img.addEventListener("dragstart", (event) => {
    event.dataTransfer?.setData("application/x-resource-id", resource.resource_id);
  });
  const clip = document.createElement("button");
  clip.className = "clip-action";
  clip.textContent = "clip (rectangle)";
  clip.addEventListener("click", () => callbacks.onClipRequest(resource.resource_id));
  wrap.append(img, clip);
  return wrap;
}

function iconCard(resource: WireResource): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "resource-card icon-card";
  wrap.innerHTML = resource.svg ?? "";
  const holder = wrap.querySelector("svg");
  if (holder) {
    holder.setAttribute("width", "48");
    holder.setAttribute("height", "48");
  }
  wrap.draggable = true;
  wrap.dataset["resourceId"] = resource.resource_id;
  wrap.addEventListener("dragstart", (event) => {
    event.dataTransfer?.setData("application/x-resource-id", resource.resource_id);
  });
  return wrap;
}

function bundleCard(resource: WireResource): HTMLElement {
  const card = document.createElement("div");
  card.className = "resource-card bundle-card";
  const bundle = resource.bundle?.bundle;
  if (!bundle) return card;
  const title = document.createElement("h4");
  title.textContent = bundle.title;
  card.append(title);
  for (const bullet of bundle.bullet_points) {
    const row = document.createElement("div");
    row.className = "bundle-bullet";
    const icon = resource.bundle?.icons[bullet.icon_keyword]?.svg ?? "";
    row.innerHTML = `<span class="bullet-icon">${icon}</span>` +
      `<strong></strong><p></p>`;
    (row.querySelector("strong") as HTMLElement).textContent = bullet.headline;
    (row.querySelector("p") as HTMLElement).textContent = bullet.content;
    card.append(row);
  }
  return card;
}

export function resourceCard(resource: WireResource, callbacks: ChatCallbacks): HTMLElement {
  if (resource.media === "layout_dsl") return layoutCard(resource, callbacks);
  if (resource.media === "png") return imageCard(resource, callbacks);
  if (resource.media === "svg") return iconCard(resource);
  return bundleCard(resource);
}

export class ChatPane {
  readonly root: HTMLElement;
  private readonly log: HTMLElement;
  private readonly input: HTMLInputElement;
  private readonly status: HTMLElement;

  constructor(
    private readonly store: SessionStore,
    private readonly callbacks: ChatCallbacks,
  ) {
    this.root = document.createElement("section");
    this.root.className = "chat-pane";
    this.log = document.createElement("div");
    this.log.className = "chat-log";
    this.status = document.createElement("div");
    this.status.className = "chat-status";
    const form = document.createElement("form");
    form.className = "chat-input";
    this.input = document.createElement("input");
    this.input.placeholder = "Describe what you want to design...";
    const send = document.createElement("button");
    send.type = "submit";
    send.textContent = "Send";
    form.append(this.input, send);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.send();
    });
    this.root.append(this.log, this.status, form);
    store.subscribe(() => this.render());
    this.render();
  }

  async send(): Promise<void> {
    const text = this.input.value.trim();
    if (!text) return;
    this.input.value = "";
    this.status.textContent = "working...";
    try {
      await this.store.sendMessage(text);
      this.status.textContent = "";
    } catch (error) {
      this.status.textContent = `error: ${(error as Error).message}`;
    }
  }

  private render(): void {
    this.log.replaceChildren(...this.store.messages.map((m) => this.messageRow(m)));
  }

  private messageRow(message: WireMessage): HTMLElement {
    const row = document.createElement("div");
    row.className = `chat-message role-${message.role}`;
    const text = document.createElement("p");
    text.textContent = message.text;
    row.append(text);
    for (const resource of message.resources ?? []) {
      row.append(resourceCard(resource, this.callbacks));
    }
    return row;
  }
}
