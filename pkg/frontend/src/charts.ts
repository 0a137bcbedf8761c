/** Minimal SVG line charts. Rendering to markup strings keeps this module
 * free of DOM dependencies; the page assigns the output to innerHTML. */

import type { PlotPoint } from "./transforms.js";

export interface ChartSeries {
  label: string;
  points: PlotPoint[];
}

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
}

const PALETTE = ["#2563eb", "#dc2626", "#16a34a", "#9333ea", "#ea580c"];
const MARGIN = { top: 28, right: 16, bottom: 24, left: 56 };

interface Extent {
  min: number;
  max: number;
}

function extent(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      min = Math.min(min, v);
      max = Math.max(max, v);
    }
  }
  if (min > max) {
    return { min: 0, max: 1 };
  }
  if (min === max) {
    // flat series: pad so the line sits mid-chart
    return { min: min - 1, max: max + 1 };
  }
  return { min, max };
}

function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function tickLabel(value: number): string {
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1e-3 && magnitude < 1e5) {
    return String(parseFloat(value.toPrecision(4)));
  }
  return value.toExponential(1);
}

/** Render one or more series as an SVG chart with axis extents and a legend.
 * An empty chart (no points anywhere) renders a placeholder message. */
export function renderChart(series: ChartSeries[], options: ChartOptions = {}): string {
  const width = options.width ?? 560;
  const height = options.height ?? 280;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const allPoints = series.flatMap((s) => s.points);
  const parts: string[] = [
    `<svg viewBox="0 0 ${width} ${height}" class="chart" role="img">`,
  ];
  if (options.title) {
    parts.push(
      `<text x="${MARGIN.left}" y="16" class="chart-title">${escapeText(options.title)}</text>`
    );
  }

  if (allPoints.length === 0) {
    parts.push(
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" class="chart-empty">no data</text>`,
      "</svg>"
    );
    return parts.join("");
  }

  const xs = extent(allPoints.map((p) => p.x));
  const ys = extent(allPoints.map((p) => p.y));
  const sx = (x: number) =>
    MARGIN.left + ((x - xs.min) / (xs.max - xs.min)) * plotW;
  const sy = (y: number) =>
    MARGIN.top + plotH - ((y - ys.min) / (ys.max - ys.min)) * plotH;

  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" class="chart-frame"/>`
  );

  series.forEach((s, index) => {
    if (s.points.length === 0) {
      return;
    }
    const color = PALETTE[index % PALETTE.length];
    const path = s.points
      .map((p) => `${sx(p.x).toFixed(1)},${sy(p.y).toFixed(1)}`)
      .join(" ");
    if (s.points.length === 1) {
      const p = s.points[0];
      parts.push(
        `<circle cx="${sx(p.x).toFixed(1)}" cy="${sy(p.y).toFixed(1)}" r="3" fill="${color}"/>`
      );
    } else {
      parts.push(
        `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`
      );
    }
  });

  // axis extents
  parts.push(
    `<text x="${MARGIN.left - 6}" y="${MARGIN.top + 10}" text-anchor="end" class="chart-tick">${tickLabel(ys.max)}</text>`,
    `<text x="${MARGIN.left - 6}" y="${MARGIN.top + plotH}" text-anchor="end" class="chart-tick">${tickLabel(ys.min)}</text>`,
    `<text x="${MARGIN.left}" y="${height - 6}" class="chart-tick">${tickLabel(xs.min)}</text>`,
    `<text x="${MARGIN.left + plotW}" y="${height - 6}" text-anchor="end" class="chart-tick">${tickLabel(xs.max)}</text>`
  );

  // legend, one entry per series
  series.forEach((s, index) => {
    const color = PALETTE[index % PALETTE.length];
    const y = MARGIN.top + 14 * index + 4;
    parts.push(
      `<rect x="${width - MARGIN.right - 150}" y="${y - 8}" width="10" height="3" fill="${color}" class="legend-swatch"/>`,
      `<text x="${width - MARGIN.right - 136}" y="${y - 3}" class="chart-legend">${escapeText(s.label)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("");
}
