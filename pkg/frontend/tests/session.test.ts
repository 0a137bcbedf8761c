import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/client.js";
import { UiSession, MAX_OVERLAYS } from "../src/session.js";
import { FakeServer, makeSolveResponse } from "./helpers.js";

async function makeSession(): Promise<{ session: UiSession; server: FakeServer }> {
  const server = new FakeServer();
  const session = new UiSession(new ApiClient(server.fetch));
  await session.init();
  return { session, server };
}

describe("initialization", () => {
  it("loads catalogs and selects the first function, group, and method", async () => {
    const { session } = await makeSession();
    expect(session.functionName).toBe("ExtRosenbrock");
    expect(session.dimensionText).toBe("100");
    expect(session.x0Text.split(",")).toHaveLength(100);
    expect(session.group).toBe("Gradient Descent");
    expect(session.method).toBe("GradientDescent");
    expect(session.lineSearchVisible).toBe(true);
  });

  it("repopulates the method popup when the group changes", async () => {
    const { session } = await makeSession();
    await session.selectGroup("Conjugate Gradient");
    expect(session.groupMethods.map((m) => m.name)).toEqual([
      "FletcherReeves",
      "CG_DESCENT",
    ]);
    expect(session.method).toBe("FletcherReeves");
  });
});

describe("default mode", () => {
  it("fetches and displays the server pairing for CG_DESCENT", async () => {
    const { session, server } = await makeSession();
    await session.selectGroup("Conjugate Gradient");
    await session.selectMethod("CG_DESCENT");
    const before = server.count("/api/defaults");

    await session.setDefaultMode(true);

    expect(server.count("/api/defaults")).toBe(before + 1);
    expect(session.lineSearch.rule).toBe("ApproxWolfe");
    expect(session.lineSearch.rho).toBe(0.1);
    expect(session.lineSearchDisabled).toBe(true);
  });

  it("follows method changes while pinned: L-BFGS shows MoreThuente", async () => {
    const { session } = await makeSession();
    await session.setDefaultMode(true);
    await session.selectGroup("Quasi Newton");
    expect(session.lineSearch.rule).toBe("StrongWolfe"); // BFGS pairing

    await session.selectMethod("L-BFGS");
    expect(session.lineSearch.rule).toBe("MoreThuente");
    expect(session.extras).toEqual({ lbfgsMemory: 10 });
    expect(session.lineSearchDisabled).toBe(true);
  });

  it("re-enables the controls with the user's prior values intact", async () => {
    const { session } = await makeSession();
    session.setRule("Goldstein");
    session.setLineSearchField("rho", 0.2);
    session.setLineSearchField("sigma", 0.8);
    const parked = { ...session.lineSearch };

    await session.setDefaultMode(true);
    expect(session.lineSearch.rule).toBe("Backtracking"); // GradientDescent pairing
    expect(session.lineSearchDisabled).toBe(true);

    await session.setDefaultMode(false);
    expect(session.lineSearch).toEqual(parked);
    expect(session.lineSearchDisabled).toBe(false);
  });

  it("sends neither line search nor extras while pinned", async () => {
    const { session } = await makeSession();
    await session.setDefaultMode(true);
    const request = session.buildRequest();
    expect(request.defaultMode).toBe(true);
    expect(request.lineSearch).toBeUndefined();
    expect(request.extras).toBeUndefined();
  });
});

describe("trust-region methods", () => {
  it("hides the line-search panel and omits it from requests", async () => {
    const { session } = await makeSession();
    await session.selectGroup("Trust Region");
    expect(session.method).toBe("Dogleg");
    expect(session.lineSearchVisible).toBe(false);
    expect(session.extras).toMatchObject({ trustRadius0: 1.0, eta: 1e-3 });

    const request = session.buildRequest();
    expect(request.lineSearch).toBeUndefined();
    expect(request.extras).toMatchObject({ trustRadiusMax: 100.0 });
  });

  it("shows the panel again for line-search methods", async () => {
    const { session } = await makeSession();
    await session.selectGroup("Trust Region");
    await session.selectGroup("Quasi Newton");
    expect(session.lineSearchVisible).toBe(true);
  });
});

describe("problem controls", () => {
  it("refetches the rule start point when the dimension changes", async () => {
    const { session, server } = await makeSession();
    const before = server.count("/api/startpoint");
    await session.setDimension("6");
    expect(server.count("/api/startpoint")).toBe(before + 1);
    expect(session.x0Text.split(",")).toHaveLength(6);
    expect(session.x0Custom).toBe(false);
  });

  it("flags inadmissible dimensions locally and never queries them", async () => {
    const { session, server } = await makeSession();
    await session.setDimension("3"); // ExtRosenbrock needs even n
    expect(session.fieldErrors.dimension).toBeTruthy();
    const startCalls = server.calls.filter((c) => c.path === "/api/startpoint");
    expect(startCalls.every((c) => c.query.get("n") !== "3")).toBe(true);

    const solves = server.count("/api/solve");
    expect(await session.findMinimum()).toBeNull();
    expect(server.count("/api/solve")).toBe(solves);
  });

  it("switches to a custom start point on edit and sends it", async () => {
    const { session } = await makeSession();
    await session.setDimension("4");
    session.editX0("1, 2, 0.5, -1");
    expect(session.x0Custom).toBe(true);
    expect(session.buildRequest().x0).toEqual([1, 2, 0.5, -1]);
  });

  it("omits x0 in rule mode so the server fills it", async () => {
    const { session } = await makeSession();
    expect(session.buildRequest().x0).toBeUndefined();
  });
});

describe("solving", () => {
  it("binds the results panel 1:1 to the solve response", async () => {
    const { session } = await makeSession();
    const response = await session.findMinimum();
    expect(response).not.toBeNull();

    const view = session.resultsView();
    expect(view).not.toBeNull();
    const report = response!.report;
    expect(view!.fmin).toBe(report.fmin);
    expect(view!.gradientNorm).toBe(report.gradientNorm);
    expect(view!.iterations).toBe(report.iterations);
    expect(view!.cpuSeconds).toBe(report.cpuSeconds);
    expect(view!.nValue).toBe(report.counters.nValue);
    expect(view!.nGradient).toBe(report.counters.nGradient);
    expect(view!.nHessian).toBe(report.counters.nHessian);
    expect(view!.terminationReason).toBe(report.terminationReason);
    expect(view!.xmin.full).toHaveLength(report.xmin.length);
    expect(session.banner).toBe("");
  });

  it("resets the iteration window to the full trace", async () => {
    const { session, server } = await makeSession();
    server.solveHandler = (req) => makeSolveResponse(req, 51);
    await session.findMinimum();
    expect(session.sliderRange()).toEqual([0, 50]);
    expect([session.windowLo, session.windowHi]).toEqual([0, 50]);
  });

  it("blocks requests that violate published bounds, then submits once fixed", async () => {
    const { session, server } = await makeSession();
    session.setLineSearchField("rho", 0.7);
    const solves = server.count("/api/solve");

    expect(await session.findMinimum()).toBeNull();
    expect(server.count("/api/solve")).toBe(solves);
    expect(session.fieldErrors.rho).toContain("(0, 0.5)");

    session.setLineSearchField("rho", 1e-4);
    expect(await session.findMinimum()).not.toBeNull();
    expect(server.count("/api/solve")).toBe(solves + 1);
  });

  it("keeps a single solve in flight", async () => {
    const { session, server } = await makeSession();
    let release!: () => void;
    server.solveGate = new Promise<void>((resolve) => {
      release = resolve;
    });

    const first = session.findMinimum();
    expect(session.pending).toBe(true);
    expect(session.findDisabled).toBe(true);

    expect(await session.findMinimum()).toBeNull(); // ignored while pending
    expect(server.count("/api/solve")).toBe(1);

    release();
    expect(await first).not.toBeNull();
    expect(session.pending).toBe(false);
    expect(session.findDisabled).toBe(false);
  });

  it("shows server field messages inline next to the offending control", async () => {
    const { session, server } = await makeSession();
    server.solveHandler = () => ({
      status: 400,
      errors: [{ field: "maxIterNum", message: "capped at 10000 iterations" }],
    });
    expect(await session.findMinimum()).toBeNull();
    expect(session.fieldErrors.maxIterNum).toContain("capped");
    expect(session.lastResponse).toBeNull();
  });

  it("banners a failed solve and still plots its partial trace", async () => {
    const { session, server } = await makeSession();
    server.solveHandler = (req) => {
      const response = makeSolveResponse(req, 4);
      response.report.terminationReason = "LineSearchFailure";
      return response;
    };
    await session.findMinimum();
    expect(session.banner).toContain("LineSearchFailure");
    expect(session.lastResponse).not.toBeNull();
    expect(session.valueSeries()).toHaveLength(4);
    expect(session.resultsView()).not.toBeNull();
  });
});

describe("display transforms", () => {
  it("never touches the network for log toggles or slider moves", async () => {
    const { session, server } = await makeSession();
    await session.findMinimum();
    const traffic = server.count();

    session.setLogScale(true);
    session.setWindow(1, 3);
    session.gradientSeries();
    session.valueSeries();
    session.overlaySeries("gradient");
    session.setLogScale(false);
    session.setWindow(0, 5);
    session.gradientSeries();

    expect(server.count()).toBe(traffic);
  });

  it("applies the window and the log transform to the plotted series", async () => {
    const { session } = await makeSession();
    await session.findMinimum(); // gradient trace: 5 * 10^-i, i = 0..5

    session.setLogScale(true);
    session.setWindow(1, 3);
    const points = session.gradientSeries();
    expect(points.map((p) => p.x)).toEqual([1, 2, 3]);
    expect(points[0].y).toBeCloseTo(Math.log10(0.5), 12);
    expect(points[2].y).toBeCloseTo(Math.log10(5e-3), 12);
  });
});

describe("comparison overlays", () => {
  it("collects runs with method / line-search legend labels", async () => {
    const { session } = await makeSession();
    await session.findMinimum();
    session.setRule("Wolfe");
    await session.selectGroup("Quasi Newton");
    await session.findMinimum();

    expect(session.overlays.map((o) => o.label)).toEqual([
      "GradientDescent / Backtracking",
      "BFGS / Wolfe",
    ]);
    expect(session.overlaySeries("value")).toHaveLength(2);
  });

  it("labels rule-free runs by method alone", async () => {
    const { session } = await makeSession();
    await session.selectGroup("Trust Region");
    await session.findMinimum();
    expect(session.overlays.at(-1)?.label).toBe("Dogleg");
  });

  it("keeps at most four traces, dropping the oldest", async () => {
    const { session } = await makeSession();
    for (let i = 0; i < MAX_OVERLAYS + 2; i++) {
      await session.findMinimum();
    }
    expect(session.overlays).toHaveLength(MAX_OVERLAYS);
  });

  it("clearing resets to the latest run only", async () => {
    const { session } = await makeSession();
    await session.findMinimum();
    await session.selectGroup("Quasi Newton");
    await session.findMinimum();
    session.clearOverlays();
    expect(session.overlays).toHaveLength(1);
    expect(session.overlays[0].label).toContain("BFGS");
  });

  it("applies the log toggle to every overlay uniformly", async () => {
    const { session } = await makeSession();
    await session.findMinimum();
    await session.selectGroup("Quasi Newton");
    await session.findMinimum();

    session.setLogScale(true);
    for (const overlay of session.overlaySeries("gradient")) {
      expect(overlay.points[0].y).toBeCloseTo(Math.log10(5), 12);
      expect(overlay.points.at(-1)?.y).toBeCloseTo(Math.log10(5e-5), 12);
    }
  });
});
