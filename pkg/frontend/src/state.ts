// Session state for the composer. Holds the board, the puzzle inventory
// and the live panels, and talks to the service for every mathematical
// judgement (group, loops, multiset, feasibility, placements, mirror
// constraints). Panel refreshes are cancel-and-replace: a stale response
// never overwrites a newer one.

import { ApiError, type KolamApi } from "./api.js";
import {
  emptyMultiset,
  multisetTotal,
  TILE_KINDS,
  type KolamFile,
  type MirrorConstraintsResponse,
  type Multiset,
  type PlacementEntry,
  type PlacementPayload,
  type TemplatePayload,
  type TemplateRef,
  type TileKindName,
  type ValidateResponse,
} from "./types.js";

export type Mode = "crossing" | "puzzle" | "gallery";

export interface Panels {
  group: string | null;
  loopCount: number | null;
  multiset: Multiset;
  unmatched: [string, string][];
  conflicts: string[];
  boundary: [string, string][];
  completeValid: boolean;
  busy: boolean;
}

export interface GalleryState {
  group: string;
  offset: number;
  total: string | null;
  items: { index: number; crossings: string; stabilizer: string; svg: string | null }[];
  notice: string | null;
}

export interface PlacedTile {
  kind: TileKindName;
  rotation: number;
}

const GALLERY_PAGE = 12;

export class ComposerSession {
  template: TemplatePayload | null = null;
  mode: Mode = "crossing";
  crossings: boolean[] = [];
  placements = new Map<string, PlacedTile>();
  inventory: Multiset | null = null;
  panels: Panels = {
    group: null,
    loopCount: null,
    multiset: emptyMultiset(),
    unmatched: [],
    conflicts: [],
    boundary: [],
    completeValid: false,
    busy: false,
  };
  banner: string | null = null;      // service / rejection messages
  warning: string | null = null;     // mirror-constraint warnings
  completion: string | null = null;  // puzzle solved banner
  preflag: string | null = null;     // inventory known impossible before any move
  activeMirror: string | null = null;
  gallery: GalleryState = { group: "4mmd", offset: 0, total: null, items: [], notice: null };

  private refreshSeq = 0;
  private mirrorConstraints: MirrorConstraintsResponse | null = null;
  private listeners: (() => void)[] = [];

  constructor(private readonly api: KolamApi) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  // -- template ------------------------------------------------------------

  get templateRef(): TemplateRef {
    if (!this.template) throw new Error("no template loaded");
    return { variant: this.template.variant, k: this.template.k, l: this.template.l };
  }

  async loadTemplate(ref: TemplateRef): Promise<void> {
    this.template = await this.api.template(ref);
    this.crossings = new Array(this.template.edges.length).fill(false);
    this.placements.clear();
    this.inventory = null;
    this.completion = null;
    this.preflag = null;
    this.warning = null;
    this.activeMirror = null;
    this.mirrorConstraints = null;
    this.emit();
    await this.refreshPanels();
  }

  // -- serialization (always a valid service payload) ------------------------

  exportKolamFile(): KolamFile {
    return {
      version: 1,
      template: this.templateRef,
      crossings: this.crossings.map((c) => (c ? "1" : "0")).join(""),
    };
  }

  exportPlacements(): PlacementPayload {
    const placements: PlacementEntry[] = [...this.placements.entries()]
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([cell, tile]) => ({ cell, kind: tile.kind, rotation: tile.rotation }));
    return { template: this.templateRef, placements };
  }

  async importKolamFile(file: KolamFile): Promise<void> {
    await this.loadTemplate(file.template);
    if (file.crossings.length !== this.crossings.length) {
      throw new Error("crossings length does not match the template");
    }
    this.crossings = [...file.crossings].map((ch) => ch === "1");
    this.mode = "crossing";
    this.emit();
    await this.refreshPanels();
  }

  async importPlacements(payload: PlacementPayload): Promise<void> {
    await this.loadTemplate(payload.template);
    this.mode = "puzzle";
    this.inventory = emptyMultiset();
    this.placements = new Map(
      payload.placements.map((p) => [p.cell, { kind: p.kind, rotation: p.rotation }]),
    );
    this.emit();
    await this.refreshPanels();
  }

  /** Import either payload kind; the shape discriminates. */
  async importAny(payload: KolamFile | PlacementPayload): Promise<void> {
    if ("crossings" in payload) {
      await this.importKolamFile(payload);
    } else {
      await this.importPlacements(payload);
    }
  }

  // -- crossing mode ----------------------------------------------------------

  async toggleCrossing(edgeIndex: number): Promise<void> {
    if (!this.template || this.mode !== "crossing") return;
    this.crossings[edgeIndex] = !this.crossings[edgeIndex]; // optimistic flip
    this.emit();
    await this.refreshPanels();
  }

  async refreshPanels(): Promise<void> {
    if (!this.template) return;
    const seq = ++this.refreshSeq;
    this.panels.busy = true;
    this.emit();
    try {
      if (this.mode === "puzzle") {
        const report = await this.api.validatePlacement(this.exportPlacements());
        if (seq !== this.refreshSeq) return; // superseded; newest request wins
        this.applyValidation(report);
      } else {
        const file = this.exportKolamFile();
        const [classified, traced] = await Promise.all([
          this.api.classify(file),
          this.api.trace(file),
        ]);
        if (seq !== this.refreshSeq) return;
        this.panels.group = classified.group;
        this.panels.loopCount = traced.loop_count;
        this.panels.multiset = traced.multiset;
        this.panels.unmatched = [];
        this.panels.conflicts = [];
        this.panels.completeValid = true;
      }
      this.banner = null;
    } catch (err) {
      if (seq !== this.refreshSeq) return;
      // the board stays editable; only the panels go stale
      this.banner = err instanceof ApiError
        ? `service error: ${err.message}`
        : "service unreachable; panels are stale";
    } finally {
      if (seq === this.refreshSeq) {
        this.panels.busy = false;
        this.emit();
      }
    }
  }

  private applyValidation(report: ValidateResponse): void {
    this.panels.group = null;
    this.panels.loopCount = null;
    this.panels.multiset = report.multiset;
    this.panels.unmatched = report.unmatched;
    this.panels.conflicts = report.conflicts;
    this.panels.boundary = report.boundary_violations;
    this.panels.completeValid = report.complete_valid;
    this.completion =
      report.complete_valid && this.inventoryExhausted()
        ? "kolam complete: every loose end annihilated"
        : null;
  }

  // -- puzzle mode ---------------------------------------------------------------

  async startPuzzle(inventory: Multiset): Promise<void> {
    if (!this.template) return;
    this.mode = "puzzle";
    this.inventory = { ...inventory };
    this.placements.clear();
    this.completion = null;
    this.preflag = null;
    this.emit();
    try {
      const report = await this.api.feasibility(inventory, this.templateRef);
      if (report.verdict === "fail") {
        const reasons = report.failures.map((f) => f.id).join(", ");
        this.preflag = `impossible (${reasons})`;
      }
    } catch {
      this.banner = "service unreachable; feasibility not checked";
    }
    this.emit();
    await this.refreshPanels();
  }

  remaining(kind: TileKindName): number {
    return this.inventory ? this.inventory[kind] ?? 0 : 0;
  }

  private inventoryExhausted(): boolean {
    return this.inventory !== null && TILE_KINDS.every((kind) => this.inventory![kind] === 0);
  }

  async placeTile(cell: string, kind: TileKindName, rotation: number): Promise<boolean> {
    if (!this.template || this.mode !== "puzzle" || !this.inventory) return false;
    if (this.placements.has(cell)) {
      await this.removeTile(cell);
    }
    if (this.inventory[kind] <= 0) {
      this.banner = `no ${kind} tiles left in the inventory`;
      this.emit();
      return false;
    }
    this.inventory[kind] -= 1;
    this.placements.set(cell, { kind, rotation });
    this.updateMirrorWarning(cell, kind, rotation);
    this.emit();
    await this.refreshPanels();
    return true;
  }

  async removeTile(cell: string): Promise<void> {
    if (!this.inventory) return;
    const placed = this.placements.get(cell);
    if (!placed) return;
    this.placements.delete(cell);
    this.inventory[placed.kind] += 1;
    this.emit();
    await this.refreshPanels();
  }

  // -- mirror guides -----------------------------------------------------------

  async setMirrorGuide(group: string | null): Promise<void> {
    this.activeMirror = group;
    this.mirrorConstraints = null;
    this.warning = null;
    if (group && this.template) {
      try {
        this.mirrorConstraints = await this.api.mirrorConstraints(this.templateRef, group);
      } catch {
        this.banner = "service unreachable; mirror constraints unknown";
      }
    }
    this.emit();
  }

  /** Cells pinned by the active mirror, with their allowed tiles. */
  constrainedCells(): Record<string, { kind: TileKindName; rotation: number }[]> {
    return this.mirrorConstraints?.cells ?? {};
  }

  private updateMirrorWarning(cell: string, kind: TileKindName, rotation: number): void {
    this.warning = null;
    const allowed = this.mirrorConstraints?.cells[cell];
    if (!allowed) return;
    const ok = allowed.some((p) => p.kind === kind && p.rotation === rotation);
    if (!ok) {
      this.warning =
        `${kind} at ${cell} breaks the ${this.activeMirror} mirror: ` +
        `the tile is not mirror-symmetric on that line`;
    }
  }

  // -- gallery ---------------------------------------------------------------------

  async browseGallery(group: string, offset = 0): Promise<void> {
    if (!this.template) return;
    this.mode = "gallery";
    this.gallery = { group, offset, total: null, items: [], notice: null };
    this.emit();
    try {
      const page = await this.api.enumerate(this.templateRef, group, offset, GALLERY_PAGE);
      this.gallery.total = page.total;
      this.gallery.items = page.items.map((item) => ({ ...item, svg: null }));
      this.emit();
      await Promise.all(
        this.gallery.items.map(async (item) => {
          item.svg = await this.api.renderSvg({
            version: 1,
            template: this.templateRef,
            crossings: item.crossings,
          });
        }),
      );
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.gallery.notice = "no kolam with this symmetry on this template";
      } else if (err instanceof ApiError && err.status === 413) {
        this.gallery.notice = "census too large; narrow the query";
      } else {
        this.gallery.notice = "service unreachable";
      }
    }
    this.emit();
  }

  async loadFromGallery(index: number): Promise<void> {
    const item = this.gallery.items.find((it) => it.index === index);
    if (!item) return;
    this.mode = "crossing";
    this.crossings = [...item.crossings].map((ch) => ch === "1");
    this.emit();
    await this.refreshPanels();
  }
}
