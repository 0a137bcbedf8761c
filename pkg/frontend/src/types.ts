/** Wire types for the optlab HTTP API. Field names match the JSON bodies
 * exactly; everything the UI renders comes from these shapes. */

export interface FunctionInfo {
  name: string;
  minDimension: number;
  dimensionConstraint: "any" | "even" | "multiple-of-4";
  defaultDimension: number;
  supports: string[];
}

export interface MethodInfo {
  name: string;
  requiredDerivative: number;
  usesLineSearch: boolean;
}

/** Group name -> methods, in the server's canonical group order. */
export type MethodCatalog = Record<string, MethodInfo[]>;

export interface LineSearchInfo {
  name: string;
  parameters: string[];
}

export interface LineSearchDoc {
  rule: string;
  rho: number;
  sigma: number;
  beta: number;
  tInit: number;
  bigM: number;
}

export interface StoppingDoc {
  maxIterNum: number;
  epsilon: number;
  workPrec: number;
}

export interface DefaultsDoc {
  method: string;
  lineSearch: LineSearchDoc | null;
  extras: Record<string, number>;
  stopping: StoppingDoc;
}

export interface StartPointDoc {
  function: string;
  n: number;
  x0: number[];
}

export interface SolveRequest {
  functionName: string;
  dimension: number;
  x0?: number[];
  methodGroup?: string;
  methodName: string;
  defaultMode?: boolean;
  lineSearch?: LineSearchDoc;
  stopping?: StoppingDoc;
  extras?: Record<string, number>;
}

export interface EvalCountersDoc {
  nValue: number;
  nGradient: number;
  nHessian: number;
}

export interface TraceDoc {
  functionValue: number[];
  gradientNorm: number[];
}

export type TerminationReason =
  | "MaxIterations"
  | "GradientTolerance"
  | "WorkPrecision"
  | "LineSearchFailure"
  | "NumericalFailure";

export interface ReportDoc {
  fmin: number;
  xmin: number[];
  gradientNorm: number;
  iterations: number;
  cpuSeconds: number;
  counters: EvalCountersDoc;
  trace: TraceDoc;
  terminationReason: TerminationReason;
}

export interface EffectiveConfigDoc {
  functionName: string;
  dimension: number;
  x0: number[];
  methodGroup: string | null;
  methodName: string;
  defaultMode: boolean;
  lineSearch: LineSearchDoc;
  stopping: StoppingDoc;
  extras: Record<string, number>;
}

export interface SolveResponse {
  report: ReportDoc;
  effectiveConfig: EffectiveConfigDoc;
}

export interface FieldError {
  field: string;
  message: string;
}

export interface BenchmarkRequest {
  solvers: string[];
  problems: { function: string; n: number }[];
  stopping?: Partial<StoppingDoc>;
  parallelism?: number;
}

export interface BenchmarkSubmitDoc {
  jobId: string;
  status: "running";
}

export interface RunRecordDoc {
  solver: string;
  problem: string;
  n: number;
  iterations: number;
  cpuSeconds: number;
  nValue: number;
  nGradient: number;
  nHessian: number;
  solved: boolean;
  reason: string;
}

export interface ProfileDoc {
  measure: string;
  taus: number[];
  curves: Record<string, number[]>;
}

export interface BenchmarkJobDoc {
  status: "running" | "done" | "failed";
  records?: RunRecordDoc[];
  profiles?: Record<string, ProfileDoc>;
  error?: string;
}
