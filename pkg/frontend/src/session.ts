/** UI state for the solve page.
 *
 * Holds everything the controls bind to: problem selection, method and
 * line-search setup, stopping thresholds, the default-mode flag, display
 * options (log scale, iteration window), the last solve response, and the
 * comparison overlays. All server traffic goes through the injected client;
 * display-only changes (log toggle, slider moves) never touch it.
 */

import { ApiClient, ApiRequestError } from "./client.js";
import {
  buildResultsView,
  clampWindow,
  isSuccess,
  plotSeries,
  runLabel,
  sliderBounds,
  type PlotPoint,
  type ResultsView,
} from "./transforms.js";
import { parseX0, validateDraft } from "./validate.js";
import type {
  FieldError,
  FunctionInfo,
  LineSearchDoc,
  LineSearchInfo,
  MethodCatalog,
  MethodInfo,
  SolveRequest,
  SolveResponse,
  StoppingDoc,
} from "./types.js";

export const MAX_OVERLAYS = 4;

export interface RunOverlay {
  label: string;
  response: SolveResponse;
}

export interface OverlaySeries {
  label: string;
  points: PlotPoint[];
}

const INITIAL_LINE_SEARCH: LineSearchDoc = {
  rule: "Backtracking",
  rho: 1e-4,
  sigma: 0.9,
  beta: 0.5,
  tInit: 1.0,
  bigM: 10,
};

const INITIAL_STOPPING: StoppingDoc = {
  maxIterNum: 10000,
  epsilon: 1e-6,
  workPrec: 1e-16,
};

/** Startpoint lookups report server-side field names; translate them to the
 * controls they belong to on this page. */
const START_POINT_FIELDS: Record<string, string> = {
  function: "functionName",
  n: "dimension",
};

export class UiSession {
  private readonly client: ApiClient;

  // catalogs
  functions: FunctionInfo[] = [];
  methods: MethodCatalog = {};
  lineSearches: LineSearchInfo[] = [];

  // problem controls
  functionName = "";
  dimensionText = "";
  x0Text = "";
  x0Custom = false;

  // method controls
  group = "";
  method = "";
  lineSearch: LineSearchDoc = { ...INITIAL_LINE_SEARCH };
  extras: Record<string, number> = {};
  stopping: StoppingDoc = { ...INITIAL_STOPPING };
  defaultMode = false;

  // display state
  logScale = false;
  windowLo = 0;
  windowHi = 0;
  pending = false;
  banner = "";
  fieldErrors: Record<string, string> = {};
  lastResponse: SolveResponse | null = null;
  overlays: RunOverlay[] = [];

  // user values parked while default mode pins the server pairing
  private savedLineSearch: LineSearchDoc | null = null;
  private savedExtras: Record<string, number> | null = null;
  private savedForMethod = "";

  constructor(client: ApiClient) {
    this.client = client;
  }

  // ---- catalog lookups ------------------------------------------------

  get functionInfo(): FunctionInfo | null {
    return this.functions.find((f) => f.name === this.functionName) ?? null;
  }

  get groupNames(): string[] {
    return Object.keys(this.methods);
  }

  get groupMethods(): MethodInfo[] {
    return this.methods[this.group] ?? [];
  }

  get methodInfo(): MethodInfo | null {
    return this.findMethod(this.method);
  }

  private findMethod(name: string): MethodInfo | null {
    for (const infos of Object.values(this.methods)) {
      const hit = infos.find((m) => m.name === name);
      if (hit) {
        return hit;
      }
    }
    return null;
  }

  // ---- derived control state ------------------------------------------

  /** Rule-free methods (the trust-region group) hide the panel entirely. */
  get lineSearchVisible(): boolean {
    return this.methodInfo?.usesLineSearch ?? true;
  }

  /** Default mode pins the panel to the server pairing. */
  get lineSearchDisabled(): boolean {
    return this.defaultMode;
  }

  /** One solve in flight at a time. */
  get findDisabled(): boolean {
    return this.pending;
  }

  // ---- initialization --------------------------------------------------

  async init(): Promise<void> {
    const [functions, methods, lineSearches] = await Promise.all([
      this.client.listFunctions(),
      this.client.listMethods(),
      this.client.listLineSearches(),
    ]);
    this.functions = functions;
    this.methods = methods;
    this.lineSearches = lineSearches;
    if (functions.length > 0) {
      await this.selectFunction(functions[0].name);
    }
    const groups = this.groupNames;
    if (groups.length > 0) {
      await this.selectGroup(groups[0]);
    }
  }

  // ---- problem controls ------------------------------------------------

  async selectFunction(name: string): Promise<void> {
    this.functionName = name;
    delete this.fieldErrors.functionName;
    delete this.fieldErrors.x0;
    const info = this.functionInfo;
    if (info) {
      this.dimensionText = String(info.defaultDimension);
    }
    this.x0Custom = false;
    await this.refreshStartPoint();
  }

  /** Changing n refetches the rule start point and refreshes the editor;
   * inadmissible dimensions are flagged locally and never sent. */
  async setDimension(text: string): Promise<void> {
    this.dimensionText = text;
    this.x0Custom = false;
    await this.refreshStartPoint();
  }

  private async refreshStartPoint(): Promise<void> {
    const info = this.functionInfo;
    const issues = validateDraft({ ...this.draft(), x0Custom: false });
    const blocked = issues.find((i) => i.field === "dimension");
    if (!info || blocked) {
      if (blocked) {
        this.fieldErrors.dimension = blocked.message;
      }
      return;
    }
    delete this.fieldErrors.dimension;
    try {
      const doc = await this.client.startPoint(info.name, Number(this.dimensionText));
      this.x0Text = doc.x0.join(", ");
    } catch (err) {
      if (err instanceof ApiRequestError) {
        this.applyFieldErrors(err.errors, START_POINT_FIELDS);
      } else {
        this.banner = String(err);
      }
    }
  }

  editX0(text: string): void {
    this.x0Text = text;
    this.x0Custom = true;
    delete this.fieldErrors.x0;
  }

  async resetX0ToRule(): Promise<void> {
    this.x0Custom = false;
    delete this.fieldErrors.x0;
    await this.refreshStartPoint();
  }

  // ---- method controls -------------------------------------------------

  async selectGroup(name: string): Promise<void> {
    this.group = name;
    const first = this.groupMethods[0];
    if (first) {
      await this.selectMethod(first.name);
    } else {
      this.method = "";
    }
  }

  /** Selecting a method prefills its tunables from the server's pairing
   * document; under default mode the line-search fields are pinned to it. */
  async selectMethod(name: string): Promise<void> {
    this.method = name;
    delete this.fieldErrors.methodName;
    try {
      const doc = await this.client.defaults(name);
      this.extras = { ...doc.extras };
      if (this.defaultMode && doc.lineSearch) {
        this.lineSearch = { ...doc.lineSearch };
      }
    } catch (err) {
      if (!(err instanceof ApiRequestError)) {
        throw err;
      }
      this.applyFieldErrors(err.errors, { method: "methodName" });
    }
  }

  /** Toggle default mode. Turning it on parks the user's line-search setup
   * and displays the server pairing; turning it off restores the parked
   * values exactly as they were. */
  async setDefaultMode(on: boolean): Promise<void> {
    if (on === this.defaultMode) {
      return;
    }
    if (on) {
      this.savedLineSearch = { ...this.lineSearch };
      this.savedExtras = { ...this.extras };
      this.savedForMethod = this.method;
      this.defaultMode = true;
      await this.selectMethod(this.method);
      return;
    }
    this.defaultMode = false;
    if (this.savedLineSearch) {
      this.lineSearch = { ...this.savedLineSearch };
    }
    if (this.savedExtras && this.method === this.savedForMethod) {
      this.extras = { ...this.savedExtras };
    }
    this.savedLineSearch = null;
    this.savedExtras = null;
    this.savedForMethod = "";
  }

  setRule(rule: string): void {
    this.lineSearch = { ...this.lineSearch, rule };
  }

  setLineSearchField(field: "rho" | "sigma" | "beta" | "tInit" | "bigM", value: number): void {
    this.lineSearch = { ...this.lineSearch, [field]: value };
    delete this.fieldErrors[field];
  }

  setExtra(key: string, value: number): void {
    this.extras = { ...this.extras, [key]: value };
  }

  setStoppingField(field: "maxIterNum" | "epsilon" | "workPrec", value: number): void {
    this.stopping = { ...this.stopping, [field]: value };
    delete this.fieldErrors[field];
  }

  // ---- display-only state (no network) ----------------------------------

  setLogScale(on: boolean): void {
    this.logScale = on;
  }

  setWindow(lo: number, hi: number): void {
    const length = this.traceLength();
    [this.windowLo, this.windowHi] = clampWindow(Math.max(length, 1), lo, hi);
  }

  // ---- solving -----------------------------------------------------------

  validate(): FieldError[] {
    return validateDraft(this.draft());
  }

  private draft() {
    return {
      functionInfo: this.functionInfo,
      dimensionText: this.dimensionText,
      x0Custom: this.x0Custom,
      x0Text: this.x0Text,
      usesLineSearch: this.lineSearchVisible,
      defaultMode: this.defaultMode,
      lineSearch: this.lineSearch,
      stopping: this.stopping,
    };
  }

  buildRequest(): SolveRequest {
    const request: SolveRequest = {
      functionName: this.functionName,
      dimension: Number(this.dimensionText),
      methodName: this.method,
      defaultMode: this.defaultMode,
      stopping: { ...this.stopping },
    };
    if (this.group) {
      request.methodGroup = this.group;
    }
    if (this.x0Custom) {
      const x0 = parseX0(this.x0Text);
      if (x0) {
        request.x0 = x0;
      }
    }
    if (!this.defaultMode) {
      if (this.lineSearchVisible) {
        request.lineSearch = { ...this.lineSearch };
      }
      if (Object.keys(this.extras).length > 0) {
        request.extras = { ...this.extras };
      }
    }
    return request;
  }

  /** Run the solve. Returns null without any network traffic when a solve is
   * already pending or a published bound is violated. */
  async findMinimum(): Promise<SolveResponse | null> {
    if (this.pending) {
      return null;
    }
    this.fieldErrors = {};
    const issues = this.validate();
    if (issues.length > 0) {
      this.applyFieldErrors(issues);
      return null;
    }
    const request = this.buildRequest();
    this.pending = true;
    this.banner = "";
    try {
      const response = await this.client.solve(request);
      this.lastResponse = response;
      [this.windowLo, this.windowHi] = sliderBounds(
        response.report.trace.functionValue.length
      );
      this.pushOverlay(response);
      if (!isSuccess(response.report.terminationReason)) {
        this.banner = `Solve stopped: ${response.report.terminationReason}`;
      }
      return response;
    } catch (err) {
      if (err instanceof ApiRequestError) {
        this.applyFieldErrors(err.errors);
        if (err.errors.every((e) => e.field === "")) {
          this.banner = err.message;
        }
      } else {
        this.banner = String(err);
      }
      return null;
    } finally {
      this.pending = false;
    }
  }

  private applyFieldErrors(
    errors: FieldError[],
    rename: Record<string, string> = {}
  ): void {
    for (const { field, message } of errors) {
      const key = rename[field] ?? field;
      if (key && !(key in this.fieldErrors)) {
        this.fieldErrors[key] = message;
      }
    }
  }

  // ---- results and charts -------------------------------------------------

  resultsView(): ResultsView | null {
    return this.lastResponse ? buildResultsView(this.lastResponse.report) : null;
  }

  private traceLength(): number {
    return this.lastResponse?.report.trace.functionValue.length ?? 0;
  }

  sliderRange(): [number, number] {
    return sliderBounds(this.traceLength());
  }

  gradientSeries(): PlotPoint[] {
    const trace = this.lastResponse?.report.trace;
    return trace
      ? plotSeries(trace.gradientNorm, this.windowLo, this.windowHi, this.logScale)
      : [];
  }

  valueSeries(): PlotPoint[] {
    const trace = this.lastResponse?.report.trace;
    return trace
      ? plotSeries(trace.functionValue, this.windowLo, this.windowHi, this.logScale)
      : [];
  }

  // ---- comparison overlays --------------------------------------------------

  private pushOverlay(response: SolveResponse): void {
    const uses =
      this.findMethod(response.effectiveConfig.methodName)?.usesLineSearch ?? true;
    this.overlays.push({ label: runLabel(response, uses), response });
    if (this.overlays.length > MAX_OVERLAYS) {
      this.overlays.shift();
    }
  }

  /** Drop everything but the most recent run. */
  clearOverlays(): void {
    const latest = this.overlays[this.overlays.length - 1];
    this.overlays = latest ? [latest] : [];
  }

  /** Full traces for the drawer; the log toggle applies to every overlay. */
  overlaySeries(kind: "gradient" | "value"): OverlaySeries[] {
    return this.overlays.map(({ label, response }) => {
      const trace = response.report.trace;
      const values = kind === "gradient" ? trace.gradientNorm : trace.functionValue;
      return {
        label,
        points: plotSeries(values, 0, Math.max(0, values.length - 1), this.logScale),
      };
    });
  }
}
