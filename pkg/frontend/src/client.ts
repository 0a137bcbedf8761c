/** Thin typed client for the optlab service.
 *
 * The fetch implementation is injected so page code can use the browser's
 * fetch while tests substitute a recording fake and count network calls.
 */

import type {
  BenchmarkJobDoc,
  BenchmarkRequest,
  BenchmarkSubmitDoc,
  DefaultsDoc,
  FieldError,
  FunctionInfo,
  LineSearchInfo,
  MethodCatalog,
  SolveRequest,
  SolveResponse,
  StartPointDoc,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Non-2xx response carrying the server's field-level messages. */
export class ApiRequestError extends Error {
  readonly status: number;
  readonly errors: FieldError[];

  constructor(status: number, errors: FieldError[]) {
    const head = errors[0];
    super(head ? `${head.field}: ${head.message}` : `request failed with ${status}`);
    this.name = "ApiRequestError";
    this.status = status;
    this.errors = errors;
  }
}

async function parseErrors(response: Response): Promise<FieldError[]> {
  try {
    const body = (await response.json()) as { errors?: FieldError[] };
    if (Array.isArray(body.errors)) {
      return body.errors;
    }
  } catch {
    // non-JSON body; fall through to a generic error
  }
  return [{ field: "", message: `request failed with status ${response.status}` }];
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;
  private readonly base: string;

  constructor(fetchImpl?: FetchLike, base = "") {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    this.base = base;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.base + path);
    if (!response.ok) {
      throw new ApiRequestError(response.status, await parseErrors(response));
    }
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiRequestError(response.status, await parseErrors(response));
    }
    return (await response.json()) as T;
  }

  listFunctions(): Promise<FunctionInfo[]> {
    return this.get("/api/functions");
  }

  listMethods(): Promise<MethodCatalog> {
    return this.get("/api/methods");
  }

  listLineSearches(): Promise<LineSearchInfo[]> {
    return this.get("/api/linesearches");
  }

  defaults(method: string): Promise<DefaultsDoc> {
    const query = new URLSearchParams({ method });
    return this.get(`/api/defaults?${query}`);
  }

  startPoint(functionName: string, n: number): Promise<StartPointDoc> {
    const query = new URLSearchParams({ function: functionName, n: String(n) });
    return this.get(`/api/startpoint?${query}`);
  }

  solve(request: SolveRequest): Promise<SolveResponse> {
    return this.post("/api/solve", request);
  }

  submitBenchmark(request: BenchmarkRequest): Promise<BenchmarkSubmitDoc> {
    return this.post("/api/benchmark", request);
  }

  benchmarkStatus(jobId: string): Promise<BenchmarkJobDoc> {
    return this.get(`/api/benchmark/${encodeURIComponent(jobId)}`);
  }
}
