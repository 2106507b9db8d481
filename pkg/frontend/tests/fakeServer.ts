/**
 * In-memory stand-in for the session server, speaking the same REST dialect
 * the UI consumes. Keeps tests hermetic while preserving the contract that
 * the server owns all geometry: ops mutate the fake's state and the client
 * only ever sees served documents.
 */

import type {
  WireAsset,
  WireDocument,
  WireMessage,
  WireResource,
  WireStyle,
} from "../src/types.js";
import type { FetchLike } from "../src/api.js";

const DEFAULT_STYLE: WireStyle = {
  fill_color: "#333333",
  edge_color: "#000000",
  edge_thickness: 1,
  font_family: "sans-serif",
  font_size: 16,
  bold: false,
  italic: false,
  text_align: "left",
  mask_color: null,
};

export const ICON_SVG =
  '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 24 24" fill="none" stroke="currentColor">' +
  '<path d="M12 3 L22 20 H2 Z"/></svg>';

export function emptyDocument(): WireDocument {
  return {
    canvas: { width: 1280, height: 720, background_color: "#FFFFFF" },
    assets: [],
    layout: null,
    unplaced: [],
    accent_color: null,
    seq: 0,
  };
}

export function textAsset(id: string, x: number, y: number, role: string | null = null): WireAsset {
  return {
    id,
    kind: "text",
    rect: { x, y, w: 200, h: 60 },
    z: 300,
    style: { ...DEFAULT_STYLE },
    payload: { text: `text ${id}` },
    role,
    slot: null,
    pinned: false,
  };
}

export interface FakeSession {
  document: WireDocument;
  messages: WireMessage[];
  seq: number;
}

/** Slot rects handed out when a layout is applied (the fake's "draw"). */
export const APPLIED_SLOTS: Record<string, { x: number; y: number; w: number; h: number }> = {
  title: { x: 64, y: 14, w: 1152, h: 80 },
  headline: { x: 100, y: 200, w: 400, h: 60 },
  content: { x: 100, y: 280, w: 400, h: 160 },
};

export class FakeServer {
  sessions = new Map<string, FakeSession>();
  requests: { method: string; path: string; body: unknown }[] = [];
  private counter = 0;

  addSession(id: string, document?: WireDocument, messages: WireMessage[] = []): FakeSession {
    const session: FakeSession = {
      document: document ?? emptyDocument(),
      messages: [...messages],
      seq: document?.assets.length ?? 0,
    };
    this.sessions.set(id, session);
    return session;
  }

  private sessionJson(id: string) {
    const session = this.sessions.get(id)!;
    return {
      session_id: id,
      created_at: "2025-01-01T00:00:00+00:00",
      updated_at: "2025-01-01T00:00:00+00:00",
      conversation: { session_id: id, messages: session.messages },
      document: session.document,
    };
  }

  private error(status: number, code: string, message: string): Response {
    return new Response(JSON.stringify({ code, message, detail: code }), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }

  private ok(body: unknown): Response {
    return new Response(JSON.stringify(body), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  }

  readonly fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://fake");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path: url.pathname, body });
    return this.route(method, url.pathname, body);
  };

  private route(method: string, path: string, body: any): Response {
    if (method === "POST" && path === "/sessions") {
      const id = `fake-${++this.counter}`;
      this.addSession(id);
      return this.ok(this.sessionJson(id));
    }
    const match = path.match(/^\/sessions\/([^/]+)(\/.*)?$/);
    if (!match) return this.error(404, "not_found", path);
    const [, id, rest = ""] = match;
    const session = this.sessions.get(id!);
    if (!session) return this.error(404, "session_not_found", `no session ${id}`);

    if (method === "GET" && !rest) return this.ok(this.sessionJson(id!));
    if (method === "POST" && rest === "/messages") return this.postMessage(session, body.text);
    if (method === "POST" && rest === "/layout/apply") {
      return this.applyLayout(session, body.resource_id);
    }
    if (method === "POST" && rest === "/canvas") {
      return this.canvasOp(session, body.op, body.payload ?? {});
    }
    return this.error(404, "not_found", `${method} ${path}`);
  }

  private postMessage(session: FakeSession, text: string): Response {
    const user: WireMessage = { role: "user", text };
    const assistant: WireMessage = { role: "assistant", text: `echo: ${text}` };
    session.messages.push(user, assistant);
    return this.ok({
      messages: [user, assistant],
      outcome: { variant: "chat", tool: null, resource_id: null, error: null },
      diff: { added: [], removed: [], changed: [] },
    });
  }

  /** Slot-aligns assets by role per APPLIED_SLOTS; the UI must mirror this. */
  private applyLayout(session: FakeSession, resourceId: string): Response {
    const known = session.messages
      .flatMap((m) => m.resources ?? [])
      .some((r) => r.resource_id === resourceId && r.media === "layout_dsl");
    if (!known) return this.error(404, "unknown_resource", resourceId);
    const changed: string[] = [];
    for (const asset of session.document.assets) {
      const slot = asset.role ? APPLIED_SLOTS[asset.role] : undefined;
      if (slot) {
        asset.rect = { ...slot };
        asset.slot = `/fake#${asset.role}`;
        changed.push(asset.id);
      }
    }
    session.document.layout = "(C,0,0,1,1,[(G,0,0,1,0.2,[(title,0,0,1,1)])])";
    return this.ok({
      diff: { added: [], removed: [], changed },
      document: session.document,
    });
  }

  private canvasOp(session: FakeSession, op: string, payload: any): Response {
    const doc = session.document;
    const find = (assetId: string) => doc.assets.find((a) => a.id === assetId);
    if (op === "move") {
      const asset = find(payload.asset_id);
      if (!asset) return this.error(404, "unknown_asset", payload.asset_id);
      asset.rect.x = Math.min(Math.max(payload.x, 0), doc.canvas.width - asset.rect.w);
      asset.rect.y = Math.min(Math.max(payload.y, 0), doc.canvas.height - asset.rect.h);
      asset.pinned = true;
      return this.ok({ diff: { added: [], removed: [], changed: [asset.id] }, document: doc });
    }
    if (op === "resize") {
      const asset = find(payload.asset_id);
      if (!asset) return this.error(404, "unknown_asset", payload.asset_id);
      if (payload.w <= 0 || payload.h <= 0) {
        return this.error(400, "invariant_violation", "size must be positive");
      }
      asset.rect.w = payload.w;
      asset.rect.h = payload.h;
      return this.ok({ diff: { added: [], removed: [], changed: [asset.id] }, document: doc });
    }
    if (op === "set_style") {
      const asset = find(payload.asset_id);
      if (!asset) return this.error(404, "unknown_asset", payload.asset_id);
      const patch = payload.style ?? {};
      if ("font_size" in patch && patch.font_size <= 0) {
        return this.error(400, "invariant_violation", "font_size must be > 0");
      }
      if ("fill_color" in patch && !/^#[0-9A-Fa-f]{6}$/.test(patch.fill_color)) {
        return this.error(400, "invariant_violation", "bad color");
      }
      Object.assign(asset.style, patch);
      return this.ok({ diff: { added: [], removed: [], changed: [asset.id] }, document: doc });
    }
    if (op === "place_resource") {
      const resource = session.messages
        .flatMap((m) => m.resources ?? [])
        .find((r) => r.resource_id === payload.resource_id);
      if (!resource) return this.error(404, "unknown_resource", payload.resource_id);
      const id = `a${++session.seq}`;
      const size = 64;
      const asset: WireAsset = {
        id,
        kind: resource.media === "svg" ? "icon" : "image",
        rect: { x: payload.x - size / 2, y: payload.y - size / 2, w: size, h: size },
        z: 200 + session.seq,
        style: { ...DEFAULT_STYLE },
        payload: resource.media === "svg" ? { svg: resource.svg! } : { b64: resource.png_b64! },
        role: resource.media === "svg" ? "icon" : "image",
        slot: null,
        pinned: true,
      };
      doc.assets.push(asset);
      return this.ok({ diff: { added: [id], removed: [], changed: [] }, document: doc });
    }
    if (op === "delete") {
      const asset = find(payload.asset_id);
      if (!asset) return this.error(404, "unknown_asset", payload.asset_id);
      doc.assets = doc.assets.filter((a) => a.id !== asset.id);
      return this.ok({ diff: { added: [], removed: [asset.id], changed: [] }, document: doc });
    }
    if (op === "clip_rect") {
      const asset = find(payload.asset_id);
      if (!asset) return this.error(404, "unknown_asset", payload.asset_id);
      const id = `a${++session.seq}`;
      doc.assets.push({
        ...asset,
        id,
        rect: { ...payload.rect },
        pinned: true,
        style: { ...asset.style },
        payload: { ...asset.payload },
      });
      return this.ok({ diff: { added: [id], removed: [], changed: [] }, document: doc });
    }
    return this.error(400, "invalid_op", op);
  }
}

export function layoutResource(id = "r0002"): WireResource {
  return {
    resource_id: id,
    task: "layout",
    media: "layout_dsl",
    layout:
      "(C,0,0,1,1,[(G,0,0,1,0.14,[(title,0.05,0.1,0.9,0.8)])," +
      "(C,0,0.16,1,0.84,[(G,0,0,1,0.48,[(headline,0.05,0.05,0.9,0.3)])," +
      "(G,0,0.5,1,0.5,[(content,0.05,0.05,0.9,0.9)])])])",
  };
}

export function imageResource(id = "r0001"): WireResource {
  // 1x1 red pixel
  const b64 =
    "iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR4nGP4z8DwHwAFAAH/q842iQAAAABJRU5ErkJggg==";
  return { resource_id: id, task: "pivot_figure", media: "png", png_b64: b64 };
}

export function iconResource(id = "r0003"): WireResource {
  return { resource_id: id, task: "visual_element", media: "svg", svg: ICON_SVG };
}
