// Gallery mode: page through the census of a symmetry class as rendered
// thumbnails; clicking one loads it into the composer.

import { ComposerSession } from "./state.js";

export class GalleryView {
  constructor(
    private readonly root: HTMLElement,
    private readonly session: ComposerSession,
    private readonly onPick: () => void,
  ) {
    session.onChange(() => this.draw());
  }

  draw(): void {
    if (this.session.mode !== "gallery") {
      this.root.replaceChildren();
      this.root.hidden = true;
      return;
    }
    this.root.hidden = false;
    const g = this.session.gallery;
    const header = document.createElement("div");
    header.className = "gallery-header";
    header.textContent = g.notice
      ? g.notice
      : `census ${g.total ?? "…"} with symmetry ${g.group}, from #${g.offset}`;
    this.root.replaceChildren(header);
    const grid = document.createElement("div");
    grid.className = "gallery-grid";
    for (const item of g.items) {
      const pane = document.createElement("figure");
      pane.className = "thumb";
      if (item.svg) pane.innerHTML = item.svg;
      const caption = document.createElement("figcaption");
      caption.textContent = `#${item.index} · ${item.stabilizer}`;
      pane.appendChild(caption);
      pane.addEventListener("click", () => {
        void this.session.loadFromGallery(item.index).then(this.onPick);
      });
      grid.appendChild(pane);
    }
    this.root.appendChild(grid);
  }
}
