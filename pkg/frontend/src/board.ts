// SVG board: tile outlines, dots, clickable edge midpoints, overlays for
// unmatched ends and mirror guides, plus the service-rendered curve layer.
// The toggled crossing mark appears immediately; the pretty curves arrive
// asynchronously from /api/render.

import type { KolamApi } from "./api.js";
import { ComposerSession } from "./state.js";
import type { TileKindName } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SCALE = 72;
const PAD = 28;

export interface TilePicker {
  current(): { kind: TileKindName; rotation: number };
}

export class BoardView {
  private renderSeq = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly curves: HTMLElement,
    private readonly session: ComposerSession,
    private readonly api: KolamApi,
    private readonly picker: TilePicker,
  ) {
    session.onChange(() => this.draw());
  }

  private toUser(p: [number, number]): [number, number] {
    const t = this.session.template!;
    const [minx, , , maxy] = t.bounds;
    return [PAD + (p[0] - minx) * SCALE, PAD + (maxy - p[1]) * SCALE];
  }

  draw(): void {
    const t = this.session.template;
    if (!t) return;
    const [minx, miny, maxx, maxy] = t.bounds;
    const width = (maxx - minx) * SCALE + 2 * PAD;
    const height = (maxy - miny) * SCALE + 2 * PAD;

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

    for (const cell of t.cells) {
      const poly = document.createElementNS(SVG_NS, "polygon");
      poly.setAttribute(
        "points",
        cell.corners.map((c) => this.toUser(c as [number, number]).join(",")).join(" "),
      );
      poly.setAttribute("class", "tile-outline");
      const constrained = this.session.constrainedCells()[cell.id];
      if (constrained) poly.classList.add("pinned");
      if (this.session.mode === "puzzle") {
        poly.classList.add("clickable");
        poly.addEventListener("click", () => this.onCellClick(cell.id));
      }
      svg.appendChild(poly);
      const [cx, cy] = this.toUser(cell.center);
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(cx));
      dot.setAttribute("cy", String(cy));
      dot.setAttribute("r", "4");
      dot.setAttribute("class", "dot");
      svg.appendChild(dot);
      const placed = this.session.placements.get(cell.id);
      if (placed) {
        const label = document.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String(cx));
        label.setAttribute("y", String(cy - 10));
        label.setAttribute("class", "tile-label");
        label.textContent = `${placed.kind[0].toUpperCase()}${placed.rotation}`;
        svg.appendChild(label);
      }
    }

    if (this.session.activeMirror) {
      // rotation-center marker: square for a 4-fold template, lozenge for 2-fold
      const [cx, cy] = this.toUser(t.center);
      const marker = document.createElementNS(SVG_NS, "rect");
      marker.setAttribute("x", String(cx - 5));
      marker.setAttribute("y", String(cy - 5));
      marker.setAttribute("width", "10");
      marker.setAttribute("height", "10");
      marker.setAttribute("class", "rotation-center");
      if (t.group !== "4mmd") marker.setAttribute("transform", `rotate(45 ${cx} ${cy})`);
      svg.appendChild(marker);
    }

    for (const guide of t.mirrors) {
      if (!this.guideActive(guide.op)) continue;
      const [a, b] = guide.line;
      const [x1, y1] = this.toUser(a);
      const [x2, y2] = this.toUser(b);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.setAttribute("class", "mirror-guide");
      svg.appendChild(line);
    }

    if (this.session.mode === "crossing") {
      for (const edge of t.edges) {
        const [mx, my] = this.toUser(edge.midpoint);
        const hit = document.createElementNS(SVG_NS, "circle");
        hit.setAttribute("cx", String(mx));
        hit.setAttribute("cy", String(my));
        hit.setAttribute("r", "11");
        hit.setAttribute("class", "edge-hit clickable");
        hit.addEventListener("click", () => void this.session.toggleCrossing(edge.index));
        svg.appendChild(hit);
        if (this.session.crossings[edge.index]) {
          svg.appendChild(this.cross(mx, my));
        }
      }
    }

    for (const [cellId, dir] of this.session.panels.unmatched) {
      const marker = this.endMarker(cellId, dir, "unmatched-end");
      if (marker) svg.appendChild(marker);
    }
    for (const [cellId, dir] of this.session.panels.boundary) {
      const marker = this.endMarker(cellId, dir, "boundary-end");
      if (marker) svg.appendChild(marker);
    }

    this.root.replaceChildren(svg);
    void this.refreshCurves();
  }

  private guideActive(op: string): boolean {
    const g = this.session.activeMirror;
    if (!g) return false;
    if (g === "m-k") return op === "mk";
    if (g === "m-l") return op === "ml";
    if (g === "md") return op === "md1";
    if (g === "2mm") return op === "mk" || op === "ml";
    if (g === "2mdmd") return op === "md1" || op === "md2";
    return op === "mk" || op === "ml" || op === "md1" || op === "md2"; // 4mmd
  }

  private cross(x: number, y: number): SVGElement {
    const g = document.createElementNS(SVG_NS, "g");
    g.setAttribute("class", "crossing-mark");
    for (const [dx, dy] of [
      [1, 1],
      [1, -1],
    ]) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x - 7 * dx));
      line.setAttribute("y1", String(y - 7 * dy));
      line.setAttribute("x2", String(x + 7 * dx));
      line.setAttribute("y2", String(y + 7 * dy));
      g.appendChild(line);
    }
    return g;
  }

  private endMarker(cellId: string, dir: string, cls: string): SVGElement | null {
    const t = this.session.template!;
    const cell = t.cells.find((c) => c.id === cellId);
    if (!cell) return null;
    const offsets: Record<string, [number, number]> =
      t.variant === "1r"
        ? { n: [0, 0.5], e: [0.5, 0], s: [0, -0.5], w: [-0.5, 0] }
        : { n: [0.25, 0.25], e: [0.25, -0.25], s: [-0.25, -0.25], w: [-0.25, 0.25] };
    const off = offsets[dir];
    if (!off) return null;
    const [x, y] = this.toUser([cell.center[0] + off[0], cell.center[1] + off[1]]);
    const marker = document.createElementNS(SVG_NS, "circle");
    marker.setAttribute("cx", String(x));
    marker.setAttribute("cy", String(y));
    marker.setAttribute("r", "6");
    marker.setAttribute("class", cls);
    return marker;
  }

  private onCellClick(cellId: string): void {
    if (this.session.placements.has(cellId)) {
      void this.session.removeTile(cellId);
    } else {
      const { kind, rotation } = this.picker.current();
      void this.session.placeTile(cellId, kind, rotation);
    }
  }

  private async refreshCurves(): Promise<void> {
    if (this.session.mode !== "crossing" || !this.session.template) {
      this.curves.replaceChildren();
      return;
    }
    const seq = ++this.renderSeq;
    try {
      const svg = await this.api.renderSvg(this.session.exportKolamFile());
      if (seq !== this.renderSeq) return;
      this.curves.innerHTML = svg;
    } catch {
      if (seq === this.renderSeq) this.curves.replaceChildren();
    }
  }
}
