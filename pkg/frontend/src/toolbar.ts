/**
 * Style toolbar for the selected asset: colors, edge thickness, font
 * controls, alignment, delete. Every control issues a set_style (or delete)
 * op; the server-confirmed document wins.
 */

import { SessionStore } from "./state.js";
import type { WireAsset, WireStyle } from "./types.js";

export class Toolbar {
  readonly root: HTMLElement;

  constructor(private readonly store: SessionStore) {
    this.root = document.createElement("div");
    this.root.className = "toolbar";
    store.subscribe(() => this.render());
    this.render();
  }

  private selected(): WireAsset | null {
    const id = this.store.selectedAssetId;
    return id ? (this.store.asset(id) ?? null) : null;
  }

  async setStyle(patch: Partial<WireStyle>): Promise<void> {
    const asset = this.selected();
    if (!asset) return;
    await this.store.runOp(
      "set_style",
      { asset_id: asset.id, style: patch },
      (doc) => {
        const local = doc.assets.find((a) => a.id === asset.id);
        if (local) Object.assign(local.style, patch);
      },
    );
  }

  async deleteSelected(): Promise<void> {
    const asset = this.selected();
    if (!asset) return;
    this.store.select(null);
    await this.store.runOp("delete", { asset_id: asset.id }, (doc) => {
      doc.assets = doc.assets.filter((a) => a.id !== asset.id);
    });
  }

  private control(label: string, input: HTMLElement): HTMLElement {
    const wrap = document.createElement("label");
    wrap.className = "tool";
    const span = document.createElement("span");
    span.textContent = label;
    wrap.append(span, input);
    return wrap;
  }

  private render(): void {
    const asset = this.selected();
    this.root.replaceChildren();
    if (!asset) {
      const hint = document.createElement("span");
      hint.className = "toolbar-hint";
      hint.textContent = "Select an asset to edit its style";
      this.root.append(hint);
      return;
    }

    const fill = document.createElement("input");
    fill.type = "color";
    fill.className = "fill-color";
    fill.value = asset.style.fill_color;
    fill.addEventListener("change", () => void this.setStyle({ fill_color: fill.value.toUpperCase() }));
    this.root.append(this.control("fill", fill));

    if (asset.kind === "icon") {
      const edge = document.createElement("input");
      edge.type = "color";
      edge.className = "edge-color";
      edge.value = asset.style.edge_color;
      edge.addEventListener("change", () => void this.setStyle({ edge_color: edge.value.toUpperCase() }));
      this.root.append(this.control("edge", edge));

      const thickness = document.createElement("input");
      thickness.type = "number";
      thickness.className = "edge-thickness";
      thickness.min = "0";
      thickness.step = "0.5";
      thickness.value = String(asset.style.edge_thickness);
      thickness.addEventListener("change", () =>
        void this.setStyle({ edge_thickness: Number(thickness.value) }),
      );
      this.root.append(this.control("thickness", thickness));
    }

    if (asset.kind === "text") {
      const size = document.createElement("input");
      size.type = "number";
      size.className = "font-size";
      size.min = "1";
      size.value = String(asset.style.font_size);
      size.addEventListener("change", () => void this.setStyle({ font_size: Number(size.value) }));
      this.root.append(this.control("size", size));

      const bold = document.createElement("button");
      bold.className = "toggle-bold";
      bold.textContent = "B";
      bold.classList.toggle("active", asset.style.bold);
      bold.addEventListener("click", () => void this.setStyle({ bold: !asset.style.bold }));
      this.root.append(bold);

      const italic = document.createElement("button");
      italic.className = "toggle-italic";
      italic.textContent = "I";
      italic.classList.toggle("active", asset.style.italic);
      italic.addEventListener("click", () => void this.setStyle({ italic: !asset.style.italic }));
      this.root.append(italic);

      const align = document.createElement("select");
      align.className = "text-align";
      for (const option of ["left", "center", "right"]) {
        const el = document.createElement("option");
        el.value = option;
        el.textContent = option;
        el.selected = asset.style.text_align === option;
        align.append(el);
      }
      align.addEventListener("change", () =>
        void this.setStyle({ text_align: align.value as WireStyle["text_align"] }),
      );
      this.root.append(this.control("align", align));
    }

    const del = document.createElement("button");
    del.className = "delete-asset";
    del.textContent = "Delete";
    del.addEventListener("click", () => void this.deleteSelected());
    this.root.append(del);
  }
}
