/** Pure presentation helpers: plot windowing, log scaling, and report
 * formatting. Nothing here touches the network; toggling log scale or moving
 * the iteration slider only re-runs these functions on data already held. */

import type { ReportDoc, SolveResponse } from "./types.js";

/** Values at or below zero are clamped here before log10 so failed steps
 * (negative f) and exact zeros still plot. */
export const LOG_FLOOR = 1e-300;

export interface PlotPoint {
  x: number;
  y: number;
}

/** Inclusive slider bounds for a trace: indices 0 .. length-1. */
export function sliderBounds(traceLength: number): [number, number] {
  return [0, Math.max(0, traceLength - 1)];
}

/** Clamp a requested [lo, hi] window to valid, ordered trace indices. */
export function clampWindow(
  length: number,
  lo: number,
  hi: number
): [number, number] {
  const last = Math.max(0, length - 1);
  let a = Math.min(Math.max(Math.floor(lo), 0), last);
  let b = Math.min(Math.max(Math.floor(hi), 0), last);
  if (a > b) {
    [a, b] = [b, a];
  }
  return [a, b];
}

/** Points (iteration, value) for the window, optionally log10-scaled. */
export function plotSeries(
  values: number[],
  lo: number,
  hi: number,
  logScale: boolean
): PlotPoint[] {
  if (values.length === 0) {
    return [];
  }
  const [a, b] = clampWindow(values.length, lo, hi);
  const points: PlotPoint[] = [];
  for (let i = a; i <= b; i++) {
    const v = values[i];
    points.push({ x: i, y: logScale ? Math.log10(Math.max(v, LOG_FLOOR)) : v });
  }
  return points;
}

const COMPACT_LIMIT = 1e5;

/** Fixed-ish notation for mid-range magnitudes, scientific otherwise. */
export function formatNumber(value: number): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1e-4 && magnitude < COMPACT_LIMIT) {
    return String(parseFloat(value.toPrecision(8)));
  }
  return value.toExponential(6);
}

export interface XminView {
  shown: string[];
  hiddenCount: number;
  full: string[];
}

/** First `limit` coordinates for the collapsed view; the rest expand on
 * demand. */
export function formatXmin(xmin: number[], limit = 10): XminView {
  const full = xmin.map(formatNumber);
  return {
    shown: full.slice(0, limit),
    hiddenCount: Math.max(0, full.length - limit),
    full,
  };
}

/** One results-panel entry per report field, values taken verbatim. */
export interface ResultsView {
  fmin: number;
  xmin: XminView;
  gradientNorm: number;
  iterations: number;
  cpuSeconds: number;
  nValue: number;
  nGradient: number;
  nHessian: number;
  terminationReason: string;
}

export function buildResultsView(report: ReportDoc): ResultsView {
  return {
    fmin: report.fmin,
    xmin: formatXmin(report.xmin),
    gradientNorm: report.gradientNorm,
    iterations: report.iterations,
    cpuSeconds: report.cpuSeconds,
    nValue: report.counters.nValue,
    nGradient: report.counters.nGradient,
    nHessian: report.counters.nHessian,
    terminationReason: report.terminationReason,
  };
}

const SUCCESS_REASONS = new Set(["GradientTolerance", "WorkPrecision"]);

export function isSuccess(reason: string): boolean {
  return SUCCESS_REASONS.has(reason);
}

/** Legend label for an overlaid run: method plus the line search it actually
 * used, or just the method for rules-free solvers. */
export function runLabel(response: SolveResponse, usesLineSearch: boolean): string {
  const cfg = response.effectiveConfig;
  return usesLineSearch
    ? `${cfg.methodName} / ${cfg.lineSearch.rule}`
    : cfg.methodName;
}
