// Live side panels: point group, loop count, tile multiset, unmatched
// ends, inventory, and the banner / warning / completion strips. Pure
// view over the session; every number shown is a service response.

import { ComposerSession } from "./state.js";
import { TILE_KINDS } from "./types.js";

export class PanelsView {
  constructor(
    private readonly root: HTMLElement,
    private readonly session: ComposerSession,
  ) {
    session.onChange(() => this.draw());
  }

  private strip(cls: string, text: string | null): string {
    return text ? `<div class="strip ${cls}">${text}</div>` : "";
  }

  draw(): void {
    const s = this.session;
    const p = s.panels;
    const rows = TILE_KINDS.map((kind) => {
      const inv = s.inventory ? ` <span class="inv">(left: ${s.remaining(kind)})</span>` : "";
      return `<tr><td>${kind}</td><td>${p.multiset[kind] ?? 0}${inv}</td></tr>`;
    }).join("");
    const unmatched = p.unmatched.length
      ? `<ul>${p.unmatched.map(([c, d]) => `<li>${c} · ${d}</li>`).join("")}</ul>`
      : "<p class=muted>none</p>";
    this.root.innerHTML = `
      ${this.strip("banner", s.banner)}
      ${this.strip("preflag", s.preflag)}
      ${this.strip("warning", s.warning)}
      ${this.strip("completion", s.completion)}
      <dl>
        <dt>point group</dt><dd id="panel-group">${p.group ?? "–"}</dd>
        <dt>loops</dt><dd id="panel-loops">${p.loopCount ?? "–"}</dd>
        <dt>state</dt><dd>${p.busy ? "refreshing…" : p.completeValid ? "consistent" : "open ends"}</dd>
      </dl>
      <h3>tiles</h3>
      <table class="multiset">${rows}</table>
      <h3>unmatched ends</h3>
      ${unmatched}
      ${p.conflicts.length ? `<h3>conflicts</h3><ul>${p.conflicts.map((c) => `<li>${c}</li>`).join("")}</ul>` : ""}
    `;
  }
}
