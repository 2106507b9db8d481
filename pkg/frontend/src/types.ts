/** Wire types mirroring the session server's JSON. */

export interface WireRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface WireStyle {
  fill_color: string;
  edge_color: string;
  edge_thickness: number;
  font_family: string;
  font_size: number;
  bold: boolean;
  italic: boolean;
  text_align: "left" | "center" | "right";
  mask_color: string | null;
}

export type AssetKind = "text" | "icon" | "image" | "background";

export interface WireAsset {
  id: string;
  kind: AssetKind;
  rect: WireRect;
  z: number;
  style: WireStyle;
  payload: { text?: string; svg?: string; b64?: string; path?: string };
  role: string | null;
  slot: string | null;
  pinned: boolean;
}

export interface WireCanvas {
  width: number;
  height: number;
  background_color: string;
}

export interface WireDocument {
  canvas: WireCanvas;
  assets: WireAsset[];
  layout: string | null;
  unplaced: string[];
  accent_color: string | null;
  seq: number;
}

/** Resource summary as embedded in post_message responses. */
export interface WireResource {
  resource_id: string;
  task: string;
  media: string;
  png_b64?: string;
  svg?: string;
  layout?: string;
  bundle?: {
    bundle: {
      title: string;
      bullet_points: { icon_keyword: string; headline: string; content: string }[];
    };
    icons: Record<string, { svg: string; source: string }>;
  };
  meta?: Record<string, unknown>;
}

export interface WireMessage {
  role: "user" | "assistant" | "tool";
  text: string;
  resources?: WireResource[];
}

export interface DocumentDiff {
  added: string[];
  removed: string[];
  changed: string[];
}

export interface MessageResponse {
  messages: WireMessage[];
  outcome: {
    variant: "chat" | "tool_call";
    tool: string | null;
    resource_id: string | null;
    error: { code: string; detail: string } | null;
  };
  diff: DocumentDiff;
}

export interface SessionState {
  session_id: string;
  created_at: string;
  updated_at: string;
  conversation: { session_id: string; messages: WireMessage[] };
  document: WireDocument;
}

export interface OpResponse {
  diff: DocumentDiff;
  document: WireDocument;
}

export type CanvasOpName =
  | "move"
  | "resize"
  | "set_style"
  | "place_resource"
  | "apply_layout"
  | "delete"
  | "clip_rect";

export interface ApiError extends Error {
  code: string;
  status: number;
}
