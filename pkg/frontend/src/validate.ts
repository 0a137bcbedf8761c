/** Client-side validation mirroring the server's published bounds, so the UI
 * never submits a request the service is known to reject with a 400. */

import type { FieldError, FunctionInfo, LineSearchDoc, StoppingDoc } from "./types.js";

/** Synchronous solves are capped server-side; mirror the cap here. */
export const MAX_SOLVE_ITERATIONS = 10_000;

export function dimensionAdmissible(info: FunctionInfo, n: number): boolean {
  if (!Number.isInteger(n) || n < info.minDimension) {
    return false;
  }
  switch (info.dimensionConstraint) {
    case "any":
      return true;
    case "even":
      return n % 2 === 0;
    case "multiple-of-4":
      return n % 4 === 0;
  }
}

/** Smallest admissible dimension >= n for the function. */
export function nearestAdmissible(info: FunctionInfo, n: number): number {
  let m = Math.max(Math.floor(n), info.minDimension);
  while (!dimensionAdmissible(info, m)) {
    m += 1;
  }
  return m;
}

export function constraintHint(info: FunctionInfo): string {
  const base = `n >= ${info.minDimension}`;
  switch (info.dimensionConstraint) {
    case "any":
      return base;
    case "even":
      return `${base}, even`;
    case "multiple-of-4":
      return `${base}, multiple of 4`;
  }
}

/** Parse a comma- or whitespace-separated coordinate list. Returns null when
 * any token fails to parse as a finite number. */
export function parseX0(text: string): number[] | null {
  const tokens = text
    .split(/[,\s]+/)
    .map((t) => t.trim())
    .filter((t) => t.length > 0);
  if (tokens.length === 0) {
    return null;
  }
  const values: number[] = [];
  for (const token of tokens) {
    const value = Number(token);
    if (!Number.isFinite(value)) {
      return null;
    }
    values.push(value);
  }
  return values;
}

export interface SolveDraft {
  functionInfo: FunctionInfo | null;
  dimensionText: string;
  x0Custom: boolean;
  x0Text: string;
  usesLineSearch: boolean;
  defaultMode: boolean;
  lineSearch: LineSearchDoc;
  stopping: StoppingDoc;
}

function pushIssue(issues: FieldError[], field: string, message: string): void {
  issues.push({ field, message });
}

/** Every violation of a published bound, keyed by the offending control's
 * field name (the same names the server uses in its 400 bodies). */
export function validateDraft(draft: SolveDraft): FieldError[] {
  const issues: FieldError[] = [];

  if (draft.functionInfo === null) {
    pushIssue(issues, "functionName", "choose a function");
  }
  const n = Number(draft.dimensionText);
  if (!Number.isInteger(n) || n < 1) {
    pushIssue(issues, "dimension", "must be a positive integer");
  } else if (draft.functionInfo && !dimensionAdmissible(draft.functionInfo, n)) {
    pushIssue(issues, "dimension", `requires ${constraintHint(draft.functionInfo)}`);
  }

  if (draft.x0Custom) {
    const x0 = parseX0(draft.x0Text);
    if (x0 === null) {
      pushIssue(issues, "x0", "must be a list of numbers");
    } else if (Number.isInteger(n) && n >= 1 && x0.length !== n) {
      pushIssue(issues, "x0", `expected ${n} coordinates, got ${x0.length}`);
    }
  }

  // Default mode sends the server's own pairing back, so only user-editable
  // line-search fields need checking.
  if (draft.usesLineSearch && !draft.defaultMode) {
    const ls = draft.lineSearch;
    if (!(ls.rho > 0 && ls.rho < 0.5)) {
      pushIssue(issues, "rho", "must lie in (0, 0.5)");
    }
    if (!(ls.sigma > ls.rho && ls.sigma < 1)) {
      pushIssue(issues, "sigma", "must lie in (rho, 1)");
    }
    if (!(ls.beta > 0 && ls.beta < 1)) {
      pushIssue(issues, "beta", "must lie in (0, 1)");
    }
    if (!(Number.isFinite(ls.tInit) && ls.tInit > 0)) {
      pushIssue(issues, "tInit", "must be a finite positive real");
    }
    if (!Number.isInteger(ls.bigM) || ls.bigM < 1) {
      pushIssue(issues, "bigM", "must be an integer >= 1");
    }
  }

  const stopping = draft.stopping;
  if (!Number.isInteger(stopping.maxIterNum) || stopping.maxIterNum < 1) {
    pushIssue(issues, "maxIterNum", "must be an integer >= 1");
  } else if (stopping.maxIterNum > MAX_SOLVE_ITERATIONS) {
    pushIssue(
      issues,
      "maxIterNum",
      `interactive solves are capped at ${MAX_SOLVE_ITERATIONS} iterations`
    );
  }
  if (!(Number.isFinite(stopping.epsilon) && stopping.epsilon > 0)) {
    pushIssue(issues, "epsilon", "must be a finite positive real");
  }
  if (!(Number.isFinite(stopping.workPrec) && stopping.workPrec >= 0)) {
    pushIssue(issues, "workPrec", "must be a finite nonnegative real");
  }

  return issues;
}
