/**
 * Session state with optimistic canvas ops.
 *
 * The server is the single source of truth: an op applies a local guess
 * immediately for responsiveness, then the document returned by the server
 * replaces it; on failure the last confirmed document is restored.
 */

import type { ApiClient } from "./api.js";
import type {
  CanvasOpName,
  MessageResponse,
  WireAsset,
  WireDocument,
  WireMessage,
} from "./types.js";

export type Listener = () => void;

function cloneDocument(doc: WireDocument): WireDocument {
  return JSON.parse(JSON.stringify(doc)) as WireDocument;
}

export class SessionStore {
  private confirmed: WireDocument;
  private view: WireDocument;
  private listeners = new Set<Listener>();
  readonly messages: WireMessage[] = [];
  selectedAssetId: string | null = null;
  lastError: string | null = null;

  constructor(
    readonly api: ApiClient,
    readonly sessionId: string,
    document: WireDocument,
    messages: WireMessage[] = [],
  ) {
    this.confirmed = cloneDocument(document);
    this.view = cloneDocument(document);
    this.messages.push(...messages);
  }

  static async open(api: ApiClient, sessionId?: string): Promise<SessionStore> {
    const state = sessionId ? await api.getSession(sessionId) : await api.createSession();
    return new SessionStore(api, state.session_id, state.document, state.conversation.messages);
  }

  get document(): WireDocument {
    return this.view;
  }

  asset(id: string): WireAsset | undefined {
    return this.view.assets.find((a) => a.id === id);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  select(assetId: string | null): void {
    this.selectedAssetId = assetId;
    this.emit();
  }

  /** Chat turn; new messages (and any document change) come from the server. */
  async sendMessage(text: string): Promise<MessageResponse> {
    this.messages.push({ role: "user", text });
    this.emit();
    try {
      const response = await this.api.postMessage(this.sessionId, text);
      // server echoes the user message; replace our local copy with its view
      this.messages.pop();
      this.messages.push(...response.messages);
      await this.refresh();
      return response;
    } catch (error) {
      this.lastError = (error as Error).message;
      this.emit();
      throw error;
    }
  }

  /**
   * Run a canvas op with an optimistic local mutation. The server response
   * document always wins; errors roll the view back to the confirmed state.
   */
  async runOp(
    op: CanvasOpName,
    payload: Record<string, unknown>,
    optimistic?: (doc: WireDocument) => void,
  ): Promise<void> {
    if (optimistic) {
      optimistic(this.view);
      this.emit();
    }
    try {
      const response =
        op === "apply_layout"
          ? await this.api.applyLayout(this.sessionId, String(payload["resource_id"]))
          : await this.api.canvasOp(this.sessionId, op, payload);
      this.confirmed = cloneDocument(response.document);
      this.view = cloneDocument(response.document);
      this.lastError = null;
    } catch (error) {
      this.view = cloneDocument(this.confirmed); // revert the optimistic guess
      this.lastError = (error as Error).message;
      this.emit();
      throw error;
    }
    this.emit();
  }

  /** Re-pull everything from the server (source of truth). */
  async refresh(): Promise<void> {
    const state = await this.api.getSession(this.sessionId);
    this.confirmed = cloneDocument(state.document);
    this.view = cloneDocument(state.document);
    this.messages.length = 0;
    this.messages.push(...state.conversation.messages);
    this.emit();
  }
}
