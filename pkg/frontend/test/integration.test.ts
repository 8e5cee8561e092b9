// End-to-end checks against the real service: spawns `python3 -m sikku
// serve` from the repository root and drives the session over HTTP. The
// suite self-skips when the service cannot be started (e.g. no python).

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ComposerSession } from "../src/state.js";
import { emptyMultiset } from "../src/types.js";

const PORT = 18731;
const BASE = `http://127.0.0.1:${PORT}`;

let proc: ChildProcess | null = null;
let up = false;

async function waitForService(): Promise<boolean> {
  for (let i = 0; i < 50; i++) {
    try {
      const resp = await fetch(`${BASE}/api/count?variant=1r&k=1&l=1&group=1`);
      if (resp.ok) return true;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
  }
  return false;
}

beforeAll(async () => {
  proc = spawn("python3", ["-m", "sikku", "serve", "--port", String(PORT)], {
    cwd: new URL("../..", import.meta.url).pathname,
    stdio: "ignore",
  });
  proc.on("error", () => {
    proc = null;
  });
  up = await waitForService();
}, 15000);

afterAll(() => {
  proc?.kill();
});

describe("against the live service", () => {
  it("refreshes the group and loop panels within 100ms per toggle on a 6x6 board", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 6, l: 6 });
    expect(session.panels.group).toBe("4mmd");

    const edgeCount = session.template!.edges.length;
    expect(edgeCount).toBe(60);
    const budgets: number[] = [];
    for (const edge of [0, 7, 31, 59, 31]) {
      const started = performance.now();
      await session.toggleCrossing(edge);
      budgets.push(performance.now() - started);
    }
    expect(Math.max(...budgets)).toBeLessThan(100);
    expect(session.panels.group).not.toBeNull();
    expect(session.panels.loopCount).not.toBeNull();
  });

  it("classifies a one-crossing board as a single mirror", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 2, l: 2 });
    expect(session.panels.group).toBe("4mmd");
    await session.toggleCrossing(0);
    expect(["m-k", "m-l"]).toContain(session.panels.group);
    await session.toggleCrossing(1);
    await session.toggleCrossing(2);
    await session.toggleCrossing(3);
    expect(session.panels.group).toBe("4mmd");
    expect(session.panels.loopCount).toBe(2);
    expect(session.panels.multiset.door).toBe(4);
  });

  it("plays the 1x2 two-drop puzzle to completion", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 1, l: 2 });
    await session.startPuzzle({ ...emptyMultiset(), drop: 2 });
    expect(session.preflag).toBeNull();
    await session.placeTile("a,0,0", "drop", 0);
    expect(session.panels.unmatched).toHaveLength(1);
    await session.placeTile("a,0,1", "drop", 2);
    expect(session.panels.completeValid).toBe(true);
    expect(session.completion).toMatch(/complete/);
  });

  it("pre-flags the infeasible worked inventory", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 1, l: 2 });
    await session.startPuzzle({
      ...emptyMultiset(),
      circle: 1, drop: 3, eye: 2, door: 4, fan: 2, diamond: 1,
    });
    expect(session.preflag).toMatch(/eq2-parity/);
  });

  it("warns on a door placed across an active mirror guide", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 3, l: 3 });
    await session.startPuzzle({ ...emptyMultiset(), door: 1, circle: 8 });
    await session.setMirrorGuide("m-k");
    await session.placeTile("a,1,1", "door", 0); // center cell sits on the mirror
    expect(session.warning).toMatch(/door at a,1,1 breaks the m-k mirror/);
  });

  it("browses the 4mmd gallery of the 4x4 board", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 4, l: 4 });
    await session.browseGallery("4mmd", 0);
    expect(session.gallery.total).toBe("16");
    expect(session.gallery.items.length).toBe(12); // first page
    expect(session.gallery.items.every((item) => item.svg?.includes("<svg"))).toBe(true);
    await session.browseGallery("4mmd", 12);
    expect(session.gallery.items.length).toBe(4);
  });

  it("reports no kolam for a diagonal mirror on a rectangle", async (ctx) => {
    if (!up) return ctx.skip();
    const session = new ComposerSession(new ApiClient(BASE));
    await session.loadTemplate({ variant: "1r", k: 2, l: 3 });
    await session.browseGallery("md", 0);
    expect(session.gallery.notice).toMatch(/no kolam/);
  });
});
