/** Page wiring: binds the session store to the DOM. All state lives in the
 * store; this module only reads events and re-renders. */

import { ApiClient } from "./client.js";
import { renderChart, type ChartSeries } from "./charts.js";
import { formatNumber } from "./transforms.js";
import { UiSession } from "./session.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

function fillSelect(select: HTMLSelectElement, names: string[], value: string): void {
  select.innerHTML = "";
  for (const name of names) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    select.append(option);
  }
  select.value = value;
}

/** Refresh an input without fighting the user's cursor. */
function setValue(input: HTMLInputElement, value: string): void {
  if (document.activeElement !== input) {
    input.value = value;
  }
}

export function startApp(): void {
  const session = new UiSession(new ApiClient());
  let xminExpanded = false;

  const fnSelect = byId<HTMLSelectElement>("fn-select");
  const dimInput = byId<HTMLInputElement>("dim-input");
  const x0Input = byId<HTMLInputElement>("x0-input");
  const x0RuleBtn = byId<HTMLButtonElement>("x0-rule-btn");
  const groupSelect = byId<HTMLSelectElement>("group-select");
  const methodSelect = byId<HTMLSelectElement>("method-select");
  const defaultModeBox = byId<HTMLInputElement>("default-mode");
  const lsPanel = byId<HTMLFieldSetElement>("ls-panel");
  const ruleSelect = byId<HTMLSelectElement>("rule-select");
  const lsInputs = {
    rho: byId<HTMLInputElement>("rho-input"),
    sigma: byId<HTMLInputElement>("sigma-input"),
    beta: byId<HTMLInputElement>("beta-input"),
    tInit: byId<HTMLInputElement>("tinit-input"),
    bigM: byId<HTMLInputElement>("bigm-input"),
  } as const;
  const extrasPanel = byId<HTMLDivElement>("extras-panel");
  const stopInputs = {
    maxIterNum: byId<HTMLInputElement>("maxiter-input"),
    epsilon: byId<HTMLInputElement>("epsilon-input"),
    workPrec: byId<HTMLInputElement>("workprec-input"),
  } as const;
  const findBtn = byId<HTMLButtonElement>("find-btn");
  const banner = byId<HTMLDivElement>("banner");
  const resultsPanel = byId<HTMLDivElement>("results-panel");
  const chartGnorm = byId<HTMLDivElement>("chart-gnorm");
  const chartFval = byId<HTMLDivElement>("chart-fval");
  const logScaleBox = byId<HTMLInputElement>("log-scale");
  const winLo = byId<HTMLInputElement>("win-lo");
  const winHi = byId<HTMLInputElement>("win-hi");
  const winLabel = byId<HTMLSpanElement>("win-label");
  const overlayGnorm = byId<HTMLDivElement>("overlay-gnorm");
  const overlayFval = byId<HTMLDivElement>("overlay-fval");
  const clearOverlaysBtn = byId<HTMLButtonElement>("clear-overlays");

  function renderErrors(): void {
    for (const span of document.querySelectorAll<HTMLElement>("[data-err]")) {
      const field = span.dataset.err ?? "";
      span.textContent = session.fieldErrors[field] ?? "";
    }
  }

  function renderExtras(): void {
    const keys = Object.keys(session.extras);
    const existing = Array.from(
      extrasPanel.querySelectorAll<HTMLInputElement>("input[data-extra]")
    );
    const sameKeys =
      existing.length === keys.length &&
      existing.every((input, i) => input.dataset.extra === keys[i]);
    if (!sameKeys) {
      extrasPanel.innerHTML = "";
      for (const key of keys) {
        const label = document.createElement("label");
        label.textContent = key;
        const input = document.createElement("input");
        input.type = "number";
        input.step = "any";
        input.dataset.extra = key;
        input.addEventListener("change", () => {
          session.setExtra(key, Number(input.value));
        });
        label.append(input);
        extrasPanel.append(label);
      }
    }
    for (const input of extrasPanel.querySelectorAll<HTMLInputElement>(
      "input[data-extra]"
    )) {
      const key = input.dataset.extra ?? "";
      setValue(input, String(session.extras[key] ?? ""));
      input.disabled = session.defaultMode;
    }
    extrasPanel.hidden = keys.length === 0;
  }

  function renderResults(): void {
    const view = session.resultsView();
    if (!view) {
      resultsPanel.hidden = true;
      return;
    }
    resultsPanel.hidden = false;
    byId<HTMLElement>("res-fmin").textContent = formatNumber(view.fmin);
    byId<HTMLElement>("res-gnorm").textContent = formatNumber(view.gradientNorm);
    byId<HTMLElement>("res-iters").textContent = String(view.iterations);
    byId<HTMLElement>("res-cpu").textContent = `${formatNumber(view.cpuSeconds)} s`;
    byId<HTMLElement>("res-nvalue").textContent = String(view.nValue);
    byId<HTMLElement>("res-ngradient").textContent = String(view.nGradient);
    byId<HTMLElement>("res-nhessian").textContent = String(view.nHessian);
    byId<HTMLElement>("res-reason").textContent = view.terminationReason;

    const coords = xminExpanded ? view.xmin.full : view.xmin.shown;
    byId<HTMLElement>("res-xmin").textContent = `[${coords.join(", ")}]`;
    const moreBtn = byId<HTMLButtonElement>("xmin-more-btn");
    moreBtn.hidden = view.xmin.hiddenCount === 0;
    moreBtn.textContent = xminExpanded
      ? "show fewer"
      : `show ${view.xmin.hiddenCount} more`;
  }

  function renderCharts(): void {
    const gnorm: ChartSeries[] = [
      { label: "gradient norm", points: session.gradientSeries() },
    ];
    const fval: ChartSeries[] = [
      { label: "function value", points: session.valueSeries() },
    ];
    chartGnorm.innerHTML = renderChart(gnorm, { title: "Gradient norm" });
    chartFval.innerHTML = renderChart(fval, { title: "Function value" });

    overlayGnorm.innerHTML = renderChart(session.overlaySeries("gradient"), {
      title: "Gradient norm (comparison)",
    });
    overlayFval.innerHTML = renderChart(session.overlaySeries("value"), {
      title: "Function value (comparison)",
    });
  }

  function renderWindowControls(): void {
    const [lo, hi] = session.sliderRange();
    for (const slider of [winLo, winHi]) {
      slider.min = String(lo);
      slider.max = String(hi);
      slider.disabled = session.lastResponse === null;
    }
    setValue(winLo, String(session.windowLo));
    setValue(winHi, String(session.windowHi));
    winLabel.textContent = `iterations ${session.windowLo} .. ${session.windowHi}`;
  }

  function render(): void {
    fillSelect(fnSelect, session.functions.map((f) => f.name), session.functionName);
    setValue(dimInput, session.dimensionText);
    setValue(x0Input, session.x0Text);
    x0RuleBtn.disabled = !session.x0Custom;

    fillSelect(groupSelect, session.groupNames, session.group);
    fillSelect(methodSelect, session.groupMethods.map((m) => m.name), session.method);
    defaultModeBox.checked = session.defaultMode;

    lsPanel.hidden = !session.lineSearchVisible;
    ruleSelect.disabled = session.lineSearchDisabled;
    fillSelect(ruleSelect, session.lineSearches.map((l) => l.name), session.lineSearch.rule);
    setValue(lsInputs.rho, String(session.lineSearch.rho));
    setValue(lsInputs.sigma, String(session.lineSearch.sigma));
    setValue(lsInputs.beta, String(session.lineSearch.beta));
    setValue(lsInputs.tInit, String(session.lineSearch.tInit));
    setValue(lsInputs.bigM, String(session.lineSearch.bigM));
    for (const input of Object.values(lsInputs)) {
      input.disabled = session.lineSearchDisabled;
    }

    setValue(stopInputs.maxIterNum, String(session.stopping.maxIterNum));
    setValue(stopInputs.epsilon, String(session.stopping.epsilon));
    setValue(stopInputs.workPrec, String(session.stopping.workPrec));

    findBtn.disabled = session.findDisabled;
    logScaleBox.checked = session.logScale;
    banner.textContent = session.banner;
    banner.hidden = session.banner === "";

    renderExtras();
    renderErrors();
    renderResults();
    renderCharts();
    renderWindowControls();
  }

  function bind(action: () => Promise<unknown> | void): () => void {
    return () => {
      const result = action();
      render();
      if (result instanceof Promise) {
        void result.then(render);
      }
    };
  }

  fnSelect.addEventListener("change", bind(() => session.selectFunction(fnSelect.value)));
  dimInput.addEventListener("change", bind(() => session.setDimension(dimInput.value)));
  x0Input.addEventListener("change", bind(() => session.editX0(x0Input.value)));
  x0RuleBtn.addEventListener("click", bind(() => session.resetX0ToRule()));
  groupSelect.addEventListener("change", bind(() => session.selectGroup(groupSelect.value)));
  methodSelect.addEventListener("change", bind(() => session.selectMethod(methodSelect.value)));
  defaultModeBox.addEventListener(
    "change",
    bind(() => session.setDefaultMode(defaultModeBox.checked))
  );
  ruleSelect.addEventListener("change", bind(() => session.setRule(ruleSelect.value)));
  for (const [field, input] of Object.entries(lsInputs)) {
    input.addEventListener(
      "change",
      bind(() =>
        session.setLineSearchField(
          field as keyof typeof lsInputs,
          Number(input.value)
        )
      )
    );
  }
  for (const [field, input] of Object.entries(stopInputs)) {
    input.addEventListener(
      "change",
      bind(() =>
        session.setStoppingField(field as keyof typeof stopInputs, Number(input.value))
      )
    );
  }
  findBtn.addEventListener("click", bind(() => session.findMinimum()));
  logScaleBox.addEventListener("change", bind(() => session.setLogScale(logScaleBox.checked)));
  const onWindowInput = bind(() =>
    session.setWindow(Number(winLo.value), Number(winHi.value))
  );
  winLo.addEventListener("input", onWindowInput);
  winHi.addEventListener("input", onWindowInput);
  clearOverlaysBtn.addEventListener("click", bind(() => session.clearOverlays()));
  byId<HTMLButtonElement>("xmin-more-btn").addEventListener(
    "click",
    bind(() => {
      xminExpanded = !xminExpanded;
    })
  );

  void session.init().then(render);
}

startApp();
