// Thin typed client for the kolam service. The fetch implementation is
// injectable so the state machine can be tested without a network.

import type {
  ClassifyResponse,
  CountResponse,
  EnumeratePage,
  FeasibilityResponse,
  KolamFile,
  MirrorConstraintsResponse,
  Multiset,
  PlacementPayload,
  TemplatePayload,
  TemplateRef,
  TraceResponse,
  ValidateResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  if (resp.ok) {
    return (await resp.json()) as T;
  }
  let code = "http-error";
  let message = `${resp.status}`;
  try {
    const body = (await resp.json()) as { error?: { code?: string; message?: string } };
    code = body.error?.code ?? code;
    message = body.error?.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, code, message);
}

function templateQuery(ref: TemplateRef): string {
  return `variant=${ref.variant}&k=${ref.k}&l=${ref.l}`;
}

/** The service surface the views and session depend on (fakeable in tests). */
export interface KolamApi {
  template(ref: TemplateRef): Promise<TemplatePayload>;
  count(ref: TemplateRef, group: string): Promise<CountResponse>;
  classify(file: KolamFile): Promise<ClassifyResponse>;
  trace(file: KolamFile): Promise<TraceResponse>;
  feasibility(multiset: Multiset, template?: TemplateRef): Promise<FeasibilityResponse>;
  validatePlacement(payload: PlacementPayload): Promise<ValidateResponse>;
  enumerate(ref: TemplateRef, group: string, offset: number, limit: number): Promise<EnumeratePage>;
  mirrorConstraints(ref: TemplateRef, group: string): Promise<MirrorConstraintsResponse>;
  renderSvg(file: KolamFile): Promise<string>;
}

export class ApiClient implements KolamApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private get(path: string): Promise<Response> {
    return this.fetchImpl(this.base + path);
  }

  private post(path: string, payload: unknown): Promise<Response> {
    return this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async template(ref: TemplateRef): Promise<TemplatePayload> {
    return unwrap(await this.get(`/api/template?${templateQuery(ref)}`));
  }

  async count(ref: TemplateRef, group: string): Promise<CountResponse> {
    return unwrap(await this.get(`/api/count?${templateQuery(ref)}&group=${group}`));
  }

  async classify(file: KolamFile): Promise<ClassifyResponse> {
    return unwrap(await this.post("/api/classify", file));
  }

  async trace(file: KolamFile): Promise<TraceResponse> {
    return unwrap(await this.post("/api/trace", file));
  }

  async feasibility(multiset: Multiset, template?: TemplateRef): Promise<FeasibilityResponse> {
    return unwrap(await this.post("/api/feasibility", { multiset, template }));
  }

  async validatePlacement(payload: PlacementPayload): Promise<ValidateResponse> {
    return unwrap(await this.post("/api/placement/validate", payload));
  }

  async enumerate(
    ref: TemplateRef,
    group: string,
    offset: number,
    limit: number,
  ): Promise<EnumeratePage> {
    return unwrap(
      await this.get(
        `/api/enumerate?${templateQuery(ref)}&group=${group}&offset=${offset}&limit=${limit}`,
      ),
    );
  }

  async mirrorConstraints(ref: TemplateRef, group: string): Promise<MirrorConstraintsResponse> {
    return unwrap(await this.get(`/api/mirror-constraints?${templateQuery(ref)}&group=${group}`));
  }

  async renderSvg(file: KolamFile): Promise<string> {
    const resp = await this.post("/api/render", { kolam: file });
    if (!resp.ok) {
      await unwrap(resp); // throws with the decoded error
    }
    return resp.text();
  }
}
