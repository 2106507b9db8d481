/**
 * Wires the two panes together over one session: chat on the left, canvas
 * plus toolbar on the right.
 */

import { ApiClient } from "./api.js";
import { CanvasPane } from "./canvas.js";
import { ChatPane } from "./chat.js";
import { SessionStore } from "./state.js";
import { Toolbar } from "./toolbar.js";

export class App {
  constructor(
    readonly store: SessionStore,
    readonly chat: ChatPane,
    readonly canvas: CanvasPane,
    readonly toolbar: Toolbar,
  ) {}
}

export async function createApp(
  root: HTMLElement,
  api: ApiClient,
  sessionId?: string,
): Promise<App> {
  const store = await SessionStore.open(api, sessionId);
  const canvas = new CanvasPane(store);
  const chat = new ChatPane(store, {
    onApplyLayout: (resourceId) => {
      void store.runOp("apply_layout", { resource_id: resourceId });
    },
    onClipRequest: (resourceId) => canvas.armClip(resourceId),
  });
  const toolbar = new Toolbar(store);

  const right = document.createElement("div");
  right.className = "right-pane";
  right.append(canvas.root, toolbar.root);

  const shell = document.createElement("div");
  shell.className = "app-shell";
  shell.append(chat.root, right);
  root.replaceChildren(shell);

  return new App(store, chat, canvas, toolbar);
}
