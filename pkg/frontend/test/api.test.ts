import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("builds query urls and decodes payloads", async () => {
    const seen: string[] = [];
    const client = new ApiClient("http://svc", async (url) => {
      seen.push(url);
      return jsonResponse(200, { group: "md", es: 10, count: "1024", no_kolam: false });
    });
    const count = await client.count({ variant: "2r", k: 3, l: 3 }, "md");
    expect(seen).toEqual(["http://svc/api/count?variant=2r&k=3&l=3&group=md"]);
    expect(count.count).toBe("1024");
  });

  it("posts json bodies", async () => {
    let captured: RequestInit | undefined;
    const client = new ApiClient("", async (_url, init) => {
      captured = init;
      return jsonResponse(200, { group: "4mmd", diagonal: null, order: 8 });
    });
    const file = { version: 1 as const, template: { variant: "1r" as const, k: 2, l: 2 }, crossings: "0000" };
    await client.classify(file);
    expect(captured?.method).toBe("POST");
    expect(JSON.parse(String(captured?.body))).toEqual(file);
  });

  it("unwraps service errors into ApiError", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse(422, { error: { code: "inapplicable-symmetry", message: "needs a square" } }),
    );
    const err = await client
      .count({ variant: "1r", k: 2, l: 3 }, "4mmd")
      .then(() => null, (e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(422);
    expect((err as ApiError).code).toBe("inapplicable-symmetry");
  });

  it("returns svg text from the render endpoint", async () => {
    const client = new ApiClient("", async () =>
      new Response("<svg/>", { status: 200, headers: { "Content-Type": "image/svg+xml" } }),
    );
    const svg = await client.renderSvg({
      version: 1,
      template: { variant: "1r", k: 1, l: 1 },
      crossings: "",
    });
    expect(svg).toBe("<svg/>");
  });
});
