import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { ComposerSession } from "../src/state.js";
import { emptyMultiset, type Multiset } from "../src/types.js";
import { FakeApi, template1x2 } from "./fake.js";

function inventory(partial: Partial<Multiset>): Multiset {
  return { ...emptyMultiset(), ...partial };
}

async function freshSession(api: FakeApi): Promise<ComposerSession> {
  const session = new ComposerSession(api);
  await session.loadTemplate({ variant: "1r", k: 3, l: 3 });
  return session;
}

describe("crossing mode", () => {
  it("toggles exactly one edge optimistically and refreshes panels", async () => {
    const api = new FakeApi();
    api.latencyMs = 20;
    const session = await freshSession(api);
    api.classifyResponse = { group: "m-l", diagonal: null, order: 2 };
    api.traceResponse = {
      loop_count: 8,
      loops: [],
      multiset: { circle: 7, drop: 2, eye: 0, door: 0, fan: 0, diamond: 0 },
    };

    const before = [...session.crossings];
    const started = performance.now();
    await session.toggleCrossing(4);
    const elapsed = performance.now() - started;

    const flipped = session.crossings.map((c, i) => c !== before[i]);
    expect(flipped.filter(Boolean)).toHaveLength(1);
    expect(flipped[4]).toBe(true);
    expect(session.panels.group).toBe("m-l");
    expect(session.panels.loopCount).toBe(8);
    expect(session.panels.multiset.drop).toBe(2);
    expect(elapsed).toBeLessThan(100); // pinned latency budget at desk scale
  });

  it("keeps the newest refresh when responses race (cancel-and-replace)", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    // first toggle's trace stalls 60ms, second returns immediately
    api.traceLatencies = [60, 0];
    api.classifySequence = [
      { group: "m-k", diagonal: null, order: 2 },
      { group: "2mm", diagonal: null, order: 4 },
    ];
    api.traceResponse = { loop_count: 5, loops: [], multiset: emptyMultiset() };

    const first = session.toggleCrossing(0);
    const second = session.toggleCrossing(1);
    await Promise.all([first, second]);
    await new Promise((resolve) => setTimeout(resolve, 80)); // stale response lands

    expect(session.panels.group).toBe("2mm"); // newest request wins
    expect(session.crossings[0] && session.crossings[1]).toBe(true);
  });

  it("shows a banner but stays editable when the service is down", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    api.failNext = true;
    await session.toggleCrossing(2);
    expect(session.banner).toMatch(/unreachable/);
    expect(session.crossings[2]).toBe(true); // the board took the edit
    await session.toggleCrossing(2); // recovers on the next refresh
    expect(session.banner).toBeNull();
  });

  it("exports and reimports a kolam file losslessly", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.toggleCrossing(0);
    await session.toggleCrossing(7);
    const file = session.exportKolamFile();
    expect(file.version).toBe(1);
    expect(file.crossings).toHaveLength(12);

    const other = new ComposerSession(api);
    await other.importKolamFile(file);
    expect(other.exportKolamFile()).toEqual(file);
  });
});

describe("puzzle mode", () => {
  it("accepts the two-drop solution on the 1x2 template", async () => {
    const api = new FakeApi();
    api.templatePayload = template1x2();
    const session = new ComposerSession(api);
    await session.loadTemplate({ variant: "1r", k: 1, l: 2 });
    await session.startPuzzle(inventory({ drop: 2 }));
    expect(session.preflag).toBeNull();

    await session.placeTile("a,0,0", "drop", 0); // end toward the shared edge
    api.validateResponse = {
      unmatched: [],
      conflicts: [],
      boundary_violations: [],
      complete_valid: true,
      multiset: inventory({ drop: 2 }),
    };
    await session.placeTile("a,0,1", "drop", 2);

    expect(session.remaining("drop")).toBe(0);
    expect(session.panels.completeValid).toBe(true);
    expect(session.completion).toMatch(/complete/);
  });

  it("pre-flags an impossible inventory before any placement", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    api.feasibilityResponse = {
      verdict: "fail",
      failures: [{ id: "eq2-parity", message: "drop+fan is odd" }],
      tiles_total: 13,
      loose_ends: 25,
      pairs: null,
      shared_edges: 12,
      upper_bound_holds: true,
    };
    await session.startPuzzle(
      inventory({ circle: 1, drop: 3, eye: 2, door: 4, fan: 2, diamond: 1 }),
    );
    expect(session.preflag).toBe("impossible (eq2-parity)");
  });

  it("rejects placements from an empty inventory with a visible reason", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.startPuzzle(inventory({ circle: 1 }));
    expect(await session.placeTile("a,0,0", "circle", 0)).toBe(true);
    expect(await session.placeTile("a,1,1", "circle", 0)).toBe(false);
    expect(session.banner).toMatch(/no circle tiles left/);
    expect(session.placements.has("a,1,1")).toBe(false);
  });

  it("returns tiles to the inventory on removal", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.startPuzzle(inventory({ eye: 1 }));
    await session.placeTile("a,0,0", "eye", 1);
    expect(session.remaining("eye")).toBe(0);
    await session.removeTile("a,0,0");
    expect(session.remaining("eye")).toBe(1);
    expect(session.placements.size).toBe(0);
  });

  it("warns when a door lands on an active mirror guide", async () => {
    const api = new FakeApi();
    api.mirrorResponse = {
      cells: {
        "a,1,0": [
          { kind: "circle", rotation: 0 },
          { kind: "eye", rotation: 0 },
          { kind: "diamond", rotation: 0 },
        ],
      },
    };
    const session = await freshSession(api);
    await session.startPuzzle(inventory({ door: 2, circle: 7 }));
    await session.setMirrorGuide("m-k");
    expect(Object.keys(session.constrainedCells())).toContain("a,1,0");

    await session.placeTile("a,1,0", "door", 0);
    expect(session.warning).toMatch(/door at a,1,0 breaks the m-k mirror/);

    await session.placeTile("a,0,0", "door", 0); // off the mirror: no warning
    expect(session.warning).toBeNull();

    await session.placeTile("a,1,0", "circle", 0); // allowed tile: no warning
    expect(session.warning).toBeNull();
  });

  it("reimports an exported placement payload losslessly", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.startPuzzle(inventory({ drop: 1, fan: 1 }));
    await session.placeTile("a,0,0", "drop", 1);
    await session.placeTile("a,2,1", "fan", 3);
    const payload = session.exportPlacements();

    const other = new ComposerSession(api);
    await other.importAny(payload);
    expect(other.mode).toBe("puzzle");
    expect(other.exportPlacements()).toEqual(payload);
  });

  it("serializes the board as a placement payload", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.startPuzzle(inventory({ drop: 1, fan: 1 }));
    await session.placeTile("a,2,1", "fan", 3);
    await session.placeTile("a,0,0", "drop", 1);
    expect(session.exportPlacements()).toEqual({
      template: { variant: "1r", k: 3, l: 3 },
      placements: [
        { cell: "a,0,0", kind: "drop", rotation: 1 },
        { cell: "a,2,1", kind: "fan", rotation: 3 },
      ],
    });
  });
});

describe("gallery mode", () => {
  it("pages thumbnails and loads a pick into the composer", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    await session.browseGallery("4mmd", 0);
    expect(session.gallery.total).toBe("4");
    expect(session.gallery.items).toHaveLength(2);
    expect(session.gallery.items[0].svg).toContain("<svg");

    await session.loadFromGallery(1);
    expect(session.mode).toBe("crossing");
    expect(session.exportKolamFile().crossings).toBe("111111111111");
  });

  it("shows a no-kolam notice for inapplicable symmetry", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    api.enumerateResponse = new ApiError(422, "inapplicable-symmetry", "no kolam");
    await session.browseGallery("md", 0);
    expect(session.gallery.notice).toMatch(/no kolam/);
  });

  it("hints to narrow the query when the census exceeds the cap", async () => {
    const api = new FakeApi();
    const session = await freshSession(api);
    api.enumerateResponse = new ApiError(413, "cap-exceeded", "too big");
    await session.browseGallery("1", 0);
    expect(session.gallery.notice).toMatch(/narrow/);
  });
});
