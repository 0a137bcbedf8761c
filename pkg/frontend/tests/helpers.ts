/** A recording fake of the optlab service for tests.
 *
 * Routes the same paths as the real server, returns the same JSON shapes, and
 * records every request so tests can assert exactly how much network traffic
 * an interaction produced.
 */

import type { FetchLike } from "../src/client.js";
import type {
  DefaultsDoc,
  FieldError,
  FunctionInfo,
  LineSearchDoc,
  LineSearchInfo,
  MethodCatalog,
  SolveRequest,
  SolveResponse,
  StoppingDoc,
} from "../src/types.js";

export const DEFAULT_STOPPING: StoppingDoc = {
  maxIterNum: 10000,
  epsilon: 1e-6,
  workPrec: 1e-16,
};

export const FUNCTIONS: FunctionInfo[] = [
  {
    name: "ExtRosenbrock",
    minDimension: 2,
    dimensionConstraint: "even",
    defaultDimension: 100,
    supports: ["value", "gradient", "hessian"],
  },
  {
    name: "ExtPowell",
    minDimension: 4,
    dimensionConstraint: "multiple-of-4",
    defaultDimension: 100,
    supports: ["value", "gradient", "hessian"],
  },
  {
    name: "Raydan2",
    minDimension: 1,
    dimensionConstraint: "any",
    defaultDimension: 100,
    supports: ["value", "gradient", "hessian"],
  },
];

export const METHODS: MethodCatalog = {
  "Gradient Descent": [
    { name: "GradientDescent", requiredDerivative: 1, usesLineSearch: true },
    { name: "BarzilaiBorwein", requiredDerivative: 1, usesLineSearch: true },
  ],
  "Conjugate Gradient": [
    { name: "FletcherReeves", requiredDerivative: 1, usesLineSearch: true },
    { name: "CG_DESCENT", requiredDerivative: 1, usesLineSearch: true },
  ],
  "Quasi Newton": [
    { name: "BFGS", requiredDerivative: 1, usesLineSearch: true },
    { name: "L-BFGS", requiredDerivative: 1, usesLineSearch: true },
  ],
  "Trust Region": [
    { name: "Dogleg", requiredDerivative: 2, usesLineSearch: false },
    { name: "DoglegSR1", requiredDerivative: 1, usesLineSearch: false },
  ],
};

export const LINE_SEARCHES: LineSearchInfo[] = [
  { name: "ApproxWolfe", parameters: ["rho", "sigma", "tInit"] },
  { name: "Backtracking", parameters: ["rho", "beta", "tInit"] },
  { name: "Goldstein", parameters: ["rho", "tInit"] },
  { name: "MoreThuente", parameters: ["rho", "sigma", "tInit"] },
  { name: "NonMonotone", parameters: ["rho", "beta", "tInit", "bigM"] },
  { name: "StrongWolfe", parameters: ["rho", "sigma", "tInit"] },
  { name: "Wolfe", parameters: ["rho", "sigma", "tInit"] },
];

function pairing(rule: string | null, extras: Record<string, number> = {}, over: Partial<LineSearchDoc> = {}): Omit<DefaultsDoc, "method"> {
  const lineSearch: LineSearchDoc | null = rule
    ? { rule, rho: 1e-4, sigma: 0.9, beta: 0.5, tInit: 1.0, bigM: 10, ...over }
    : null;
  return { lineSearch, extras, stopping: DEFAULT_STOPPING };
}

export const PAIRINGS: Record<string, Omit<DefaultsDoc, "method">> = {
  GradientDescent: pairing("Backtracking"),
  BarzilaiBorwein: pairing("NonMonotone"),
  FletcherReeves: pairing("StrongWolfe", {}, { sigma: 0.1 }),
  CG_DESCENT: pairing("ApproxWolfe", {}, { rho: 0.1 }),
  BFGS: pairing("StrongWolfe"),
  "L-BFGS": pairing("MoreThuente", { lbfgsMemory: 10 }),
  Dogleg: pairing(null, { trustRadius0: 1.0, trustRadiusMax: 100.0, eta: 1e-3 }),
  DoglegSR1: pairing(null, { trustRadius0: 1.0, trustRadiusMax: 100.0, eta: 1e-3 }),
};

function admissible(info: FunctionInfo, n: number): boolean {
  if (!Number.isInteger(n) || n < info.minDimension) {
    return false;
  }
  if (info.dimensionConstraint === "even") {
    return n % 2 === 0;
  }
  if (info.dimensionConstraint === "multiple-of-4") {
    return n % 4 === 0;
  }
  return true;
}

function range(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i);
}

/** Deterministic successful response derived from the request. */
export function makeSolveResponse(req: SolveRequest, traceLength = 6): SolveResponse {
  const functionValue = range(traceLength).map((i) => 10 / (i + 1));
  const gradientNorm = range(traceLength).map((i) => 5 * Math.pow(10, -i));
  const pinned = PAIRINGS[req.methodName];
  const lineSearch =
    req.defaultMode && pinned?.lineSearch
      ? pinned.lineSearch
      : req.lineSearch ?? {
          rule: "Backtracking",
          rho: 1e-4,
          sigma: 0.9,
          beta: 0.5,
          tInit: 1.0,
          bigM: 10,
        };
  return {
    report: {
      fmin: functionValue[traceLength - 1],
      xmin: range(req.dimension).map((i) => 1 + i * 1e-9),
      gradientNorm: gradientNorm[traceLength - 1],
      iterations: traceLength - 1,
      cpuSeconds: 0.0123,
      counters: { nValue: 17, nGradient: 9, nHessian: 0 },
      trace: { functionValue, gradientNorm },
      terminationReason: "GradientTolerance",
    },
    effectiveConfig: {
      functionName: req.functionName,
      dimension: req.dimension,
      x0: range(req.dimension).map(() => 0.5),
      methodGroup: req.methodGroup ?? null,
      methodName: req.methodName,
      defaultMode: req.defaultMode ?? false,
      lineSearch,
      stopping: req.stopping ?? DEFAULT_STOPPING,
      extras: req.extras ?? {},
    },
  };
}

export interface RecordedCall {
  method: string;
  path: string;
  query: URLSearchParams;
  body: unknown;
}

type SolveHandler = (req: SolveRequest) => SolveResponse | { status: number; errors: FieldError[] };

export class FakeServer {
  calls: RecordedCall[] = [];
  solveHandler: SolveHandler = (req) => makeSolveResponse(req);
  /** When set, the solve route waits on this before responding. */
  solveGate: Promise<void> | null = null;

  readonly fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://fake");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.calls.push({ method, path: url.pathname, query: url.searchParams, body });
    return this.route(url, method, body);
  };

  count(pathPrefix?: string): number {
    if (!pathPrefix) {
      return this.calls.length;
    }
    return this.calls.filter((c) => c.path.startsWith(pathPrefix)).length;
  }

  lastBody(): unknown {
    for (let i = this.calls.length - 1; i >= 0; i--) {
      if (this.calls[i].body !== undefined) {
        return this.calls[i].body;
      }
    }
    return undefined;
  }

  private async route(url: URL, method: string, body: unknown): Promise<Response> {
    const path = url.pathname;
    if (path === "/api/functions") {
      return json(FUNCTIONS);
    }
    if (path === "/api/methods") {
      return json(METHODS);
    }
    if (path === "/api/linesearches") {
      return json(LINE_SEARCHES);
    }
    if (path === "/api/defaults") {
      const name = url.searchParams.get("method") ?? "";
      const doc = PAIRINGS[name];
      if (!doc) {
        return fail(404, "method", `no default pairing for method '${name}'`);
      }
      return json({ method: name, ...doc });
    }
    if (path === "/api/startpoint") {
      const name = url.searchParams.get("function") ?? "";
      const n = Number(url.searchParams.get("n"));
      const info = FUNCTIONS.find((f) => f.name === name);
      if (!info) {
        return fail(400, "function", `unknown function '${name}'`);
      }
      if (!admissible(info, n)) {
        return fail(400, "n", `dimension ${n} is not admissible for ${name}`);
      }
      return json({ function: name, n, x0: range(n).map((i) => (i % 2 === 0 ? -1.2 : 1.0)) });
    }
    if (path === "/api/solve" && method === "POST") {
      if (this.solveGate) {
        await this.solveGate;
      }
      const result = this.solveHandler(body as SolveRequest);
      if ("status" in result) {
        return new Response(JSON.stringify({ errors: result.errors }), {
          status: result.status,
          headers: { "Content-Type": "application/json" },
        });
      }
      return json(result);
    }
    if (path === "/api/benchmark" && method === "POST") {
      return json({ jobId: "job-1", status: "running" });
    }
    if (path.startsWith("/api/benchmark/")) {
      const jobId = path.slice("/api/benchmark/".length);
      if (jobId !== "job-1") {
        return fail(404, "jobId", `no benchmark job '${jobId}'`);
      }
      return json({
        status: "done",
        records: [
          {
            solver: "BFGS",
            problem: "ExtRosenbrock",
            n: 4,
            iterations: 30,
            cpuSeconds: 0.01,
            nValue: 80,
            nGradient: 40,
            nHessian: 0,
            solved: true,
            reason: "GradientTolerance",
          },
        ],
        profiles: {
          iterations: { measure: "iterations", taus: [1.0], curves: { BFGS: [1.0] } },
          cpu: { measure: "cpu", taus: [1.0], curves: { BFGS: [1.0] } },
          evaluations: { measure: "evaluations", taus: [1.0], curves: { BFGS: [1.0] } },
        },
      });
    }
    return fail(404, "", `no route for ${method} ${path}`);
  }
}

function json(data: unknown): Response {
  return new Response(JSON.stringify(data), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}

function fail(status: number, field: string, message: string): Response {
  return new Response(JSON.stringify({ errors: [{ field, message }] }), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
