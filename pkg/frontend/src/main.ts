import { ApiClient } from "./api.js";
import { createApp } from "./app.js";

const SESSION_KEY = "infograph.session";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const api = new ApiClient("");
  const saved = window.sessionStorage.getItem(SESSION_KEY) ?? undefined;
  try {
    const app = await createApp(root, api, saved);
    window.sessionStorage.setItem(SESSION_KEY, app.store.sessionId);
  } catch {
    // saved session is gone; start a fresh one
    const app = await createApp(root, api);
    window.sessionStorage.setItem(SESSION_KEY, app.store.sessionId);
  }
}

void boot();
