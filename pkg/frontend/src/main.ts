// Bootstrap: wire the toolbar, board, panels and gallery together.

import { ApiClient } from "./api.js";
import { BoardView } from "./board.js";
import { GalleryView } from "./gallery.js";
import { PanelsView } from "./panels.js";
import { ComposerSession } from "./state.js";
import {
  emptyMultiset,
  TILE_KINDS,
  type Multiset,
  type TileKindName,
  type VariantName,
} from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const api = new ApiClient("");
const session = new ComposerSession(api);

const picker = {
  current(): { kind: TileKindName; rotation: number } {
    return {
      kind: el<HTMLSelectElement>("tile-kind").value as TileKindName,
      rotation: Number(el<HTMLSelectElement>("tile-rotation").value),
    };
  },
};

new BoardView(el("board"), el("curves"), session, api, picker);
new PanelsView(el("panels"), session);
new GalleryView(el("gallery"), session, () => setMode("crossing"));

function setMode(mode: "crossing" | "puzzle" | "gallery"): void {
  session.mode = mode;
  document.body.dataset.mode = mode;
  if (mode === "gallery") {
    void session.browseGallery(el<HTMLSelectElement>("gallery-group").value, 0);
  } else {
    void session.refreshPanels();
  }
}

function currentInventory(): Multiset {
  const inventory = emptyMultiset();
  for (const kind of TILE_KINDS) {
    inventory[kind] = Number(el<HTMLInputElement>(`inv-${kind}`).value) || 0;
  }
  return inventory;
}

async function reload(): Promise<void> {
  const variant = el<HTMLSelectElement>("variant").value as VariantName;
  const k = Number(el<HTMLInputElement>("size-k").value);
  const l = Number(el<HTMLInputElement>("size-l").value);
  await session.loadTemplate({ variant, k, l });
}

el<HTMLButtonElement>("load-template").addEventListener("click", () => void reload());
el<HTMLButtonElement>("mode-crossing").addEventListener("click", () => setMode("crossing"));
el<HTMLButtonElement>("mode-puzzle").addEventListener("click", () => {
  setMode("puzzle");
  void session.startPuzzle(currentInventory());
});
el<HTMLButtonElement>("mode-gallery").addEventListener("click", () => setMode("gallery"));

el<HTMLSelectElement>("mirror-guide").addEventListener("change", (ev) => {
  const value = (ev.target as HTMLSelectElement).value;
  void session.setMirrorGuide(value === "none" ? null : value);
});

el<HTMLButtonElement>("gallery-prev").addEventListener("click", () => {
  const g = session.gallery;
  void session.browseGallery(g.group, Math.max(0, g.offset - 12));
});
el<HTMLButtonElement>("gallery-next").addEventListener("click", () => {
  const g = session.gallery;
  void session.browseGallery(g.group, g.offset + 12);
});

el<HTMLButtonElement>("export-board").addEventListener("click", () => {
  const payload =
    session.mode === "puzzle" ? session.exportPlacements() : session.exportKolamFile();
  el<HTMLTextAreaElement>("io-text").value = JSON.stringify(payload, null, 2);
});
el<HTMLButtonElement>("import-board").addEventListener("click", () => {
  try {
    const payload = JSON.parse(el<HTMLTextAreaElement>("io-text").value);
    void session.importAny(payload);
  } catch (err) {
    alert(`cannot import: ${err}`);
  }
});

void reload();
