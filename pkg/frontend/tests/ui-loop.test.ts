/**
 * End-to-end UI loop against the fake server: layout card click, thumbnail
 * drop, and toolbar style round-trip surviving a refresh.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createApp } from "../src/app.js";
import {
  APPLIED_SLOTS,
  FakeServer,
  iconResource,
  imageResource,
  layoutResource,
  textAsset,
} from "./fakeServer.js";

function withResources(server: FakeServer) {
  const session = server.addSession("s");
  session.document.assets.push(
    textAsset("t1", 1180, 10, "title"),
    textAsset("t2", 1180, 90, "headline"),
    textAsset("t3", 1180, 170, "content"),
  );
  session.messages.push(
    { role: "user", text: "make me an infographic" },
    {
      role: "tool",
      text: "resources",
      resources: [layoutResource("rlay"), imageResource("rimg"), iconResource("ricon")],
    },
  );
  return session;
}

describe("UI loop", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.append(root);
  });

  it("clicking a suggested layout card applies it and slot-aligns the canvas", async () => {
    const server = new FakeServer();
    withResources(server);
    const app = await createApp(root, new ApiClient("", server.fetch), "s");

    const card = root.querySelector<HTMLElement>(".layout-card");
    expect(card).not.toBeNull();
    expect(card!.querySelectorAll("svg rect").length).toBeGreaterThan(2); // wireframe preview

    card!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));

    const applied = server.requests.find((r) => r.path === "/sessions/s/layout/apply");
    expect(applied).toBeDefined();
    expect(applied!.body).toMatchObject({ resource_id: "rlay" });

    // the canvas view now mirrors the slot rects the server assigned
    const scale = 640 / 1280;
    const title = app.canvas.surface.querySelector<HTMLElement>('[data-asset-id="t1"]');
    expect(title).not.toBeNull();
    expect(title!.style.left).toBe(`${APPLIED_SLOTS["title"]!.x * scale}px`);
    expect(title!.style.top).toBe(`${APPLIED_SLOTS["title"]!.y * scale}px`);
    expect(app.store.asset("t2")!.rect).toMatchObject(APPLIED_SLOTS["headline"]!);
    expect(app.store.asset("t3")!.slot).toBe("/fake#content");
  });

  it("dropping a chat thumbnail creates an asset at the drop point", async () => {
    const server = new FakeServer();
    withResources(server);
    const app = await createApp(root, new ApiClient("", server.fetch), "s");

    const thumb = root.querySelector<HTMLImageElement>(".image-card .thumb");
    expect(thumb).not.toBeNull();
    expect(thumb!.draggable).toBe(true);

    await app.canvas.handleDrop("rimg", 400, 300);

    const placed = server.requests.find(
      (r) => r.path === "/sessions/s/canvas" && (r.body as any).op === "place_resource",
    );
    expect(placed).toBeDefined();
    expect((placed!.body as any).payload).toMatchObject({ resource_id: "rimg", x: 400, y: 300 });

    const added = app.store.document.assets.find((a) => a.kind === "image");
    expect(added).toBeDefined();
    // centered on the drop point
    expect(added!.rect.x + added!.rect.w / 2).toBe(400);
    expect(added!.rect.y + added!.rect.h / 2).toBe(300);
    const el = app.canvas.surface.querySelector(`[data-asset-id="${added!.id}"]`);
    expect(el).not.toBeNull();
  });

  it("a toolbar color change round-trips through set_style and survives refresh", async () => {
    const server = new FakeServer();
    withResources(server);
    const app = await createApp(root, new ApiClient("", server.fetch), "s");

    app.store.select("t1");
    const fill = app.toolbar.root.querySelector<HTMLInputElement>("input.fill-color");
    expect(fill).not.toBeNull();
    fill!.value = "#aa0000";
    fill!.dispatchEvent(new Event("change"));
    await new Promise((resolve) => setTimeout(resolve, 0));

    const styled = server.requests.find(
      (r) => r.path === "/sessions/s/canvas" && (r.body as any).op === "set_style",
    );
    expect(styled).toBeDefined();
    expect((styled!.body as any).payload.style).toMatchObject({ fill_color: "#AA0000" });
    expect(app.store.asset("t1")!.style.fill_color).toBe("#AA0000");

    // simulate a page refresh: a brand-new app instance over the same session
    const root2 = document.createElement("div");
    document.body.append(root2);
    const app2 = await createApp(root2, new ApiClient("", server.fetch), "s");
    expect(app2.store.asset("t1")!.style.fill_color).toBe("#AA0000");
    const rendered = app2.canvas.surface.querySelector<HTMLElement>('[data-asset-id="t1"]');
    const color = rendered!.style.color.toLowerCase().replace(/\s/g, "");
    expect(["#aa0000", "rgb(170,0,0)"]).toContain(color);
  });

  it("an invalid style change reverts the optimistic view", async () => {
    const server = new FakeServer();
    withResources(server);
    const app = await createApp(root, new ApiClient("", server.fetch), "s");
    app.store.select("t1");
    await expect(app.toolbar.setStyle({ font_size: 0 })).rejects.toThrow();
    expect(app.store.asset("t1")!.style.font_size).toBe(16);
  });

  it("chat send renders the echoed conversation", async () => {
    const server = new FakeServer();
    withResources(server);
    const app = await createApp(root, new ApiClient("", server.fetch), "s");
    const input = app.chat.root.querySelector("input")!;
    input.value = "hello";
    await app.chat.send();
    const texts = [...app.chat.root.querySelectorAll(".chat-message p")].map((p) => p.textContent);
    expect(texts).toContain("hello");
    expect(texts).toContain("echo: hello");
  });

  it("clip context action arms clip mode and the drawn rect issues clip_rect", async () => {
    const server = new FakeServer();
    const session = withResources(server);
    // an image asset to clip
    session.document.assets.push({
      ...textAsset("img1", 100, 100),
      kind: "image",
      payload: { b64: imageResource().png_b64! },
      role: "image",
    });
    const app = await createApp(root, new ApiClient("", server.fetch), "s");

    const clipButton = root.querySelector<HTMLButtonElement>(".clip-action");
    expect(clipButton).not.toBeNull();
    clipButton!.click();
    expect(app.canvas.clipArmed).toBe(true);

    await app.canvas.handleClipRect("img1", 120, 120, 80, 40);
    const clipped = server.requests.find(
      (r) => r.path === "/sessions/s/canvas" && (r.body as any).op === "clip_rect",
    );
    expect(clipped).toBeDefined();
    expect((clipped!.body as any).payload.rect).toMatchObject({ x: 120, y: 120, w: 80, h: 40 });
    expect(app.canvas.clipArmed).toBe(false);
    // the clip duplicated the source asset
    expect(app.store.document.assets.filter((a) => a.kind === "image").length).toBe(2);
  });
});
