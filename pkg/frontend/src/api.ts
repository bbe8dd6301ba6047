// Typed client for the frpkit service. The fetch implementation is
// injectable so tests can intercept every request and assert that no
// displayed number was produced anywhere else.

import type {
  ApiErrorBody,
  ClassifyResponse,
  FiberRecordDto,
  FiberSelectionResponse,
  HealthResponse,
  LaminateSpecDto,
  PolymerRecordDto,
  RankedResponse,
  ReportDto,
  RequirementPayload,
  SweepResponse,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: string | null;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.detail = body.detail;
  }
}

async function parse<T>(response: Response): Promise<T> {
  if (response.ok) {
    return response.json() as Promise<T>;
  }
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { code: "http_error", message: response.statusText, detail: null };
  }
  throw new ApiError(response.status, body);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private get(path: string): Promise<Response> {
    return this.fetchImpl(`${this.baseUrl}${path}`);
  }

  private post(path: string, body: unknown, signal?: AbortSignal): Promise<Response> {
    return this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  async health(): Promise<HealthResponse> {
    return parse(await this.get("/healthz"));
  }

  async polymers(): Promise<PolymerRecordDto[]> {
    return parse(await this.get("/api/polymers"));
  }

  async fibers(): Promise<FiberRecordDto[]> {
    return parse(await this.get("/api/fibers"));
  }

  async selectMatrix(requirements: RequirementPayload, top?: number): Promise<RankedResponse> {
    const body: Record<string, unknown> = { requirements };
    if (top !== undefined) body.top = top;
    return parse(await this.post("/api/select/matrix", body));
  }

  async classifyFiber(params: {
    sigma_f: number; d: number; l: number; tau_c: number;
  }): Promise<ClassifyResponse> {
    return parse(await this.post("/api/fibers/classify", params));
  }

  async selectFiber(
    requirements: RequirementPayload,
    options: { matrix?: string; tau_c_override?: number } = {},
  ): Promise<FiberSelectionResponse> {
    return parse(await this.post("/api/select/fiber", { requirements, ...options }));
  }

  async analyze(spec: LaminateSpecDto, signal?: AbortSignal): Promise<ReportDto> {
    return parse(await this.post("/api/laminate/analyze", spec, signal));
  }

  async sweep(spec: LaminateSpecDto, thetas: number[]): Promise<SweepResponse> {
    return parse(await this.post("/api/laminate/sweep", { ...spec, thetas }));
  }
}

/**
 * Latest-wins guard: at most one analyze request in flight per scenario.
 * Starting a new run aborts the previous one; a superseded run resolves
 * to null so stale responses never reach the UI.
 */
export class LatestWins {
  private controller: AbortController | null = null;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      const result = await task(controller.signal);
      return this.controller === controller ? result : null;
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    }
  }
}
