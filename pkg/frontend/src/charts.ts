import { escapeHtml, percentWhole } from "./format";

/** Inline-SVG chart builders. Pure string -> easy to test, no dependencies. */

const BAR_W = 320;
const ROW_H = 22;

export function barChart(
  entries: [string, number][],
  opts: { maxValue?: number; unit?: "count" | "percent" } = {},
): string {
  if (entries.length === 0) return `<p class="zero-state">No data yet</p>`;
  const unit = opts.unit ?? "count";
  const max = opts.maxValue ?? Math.max(...entries.map(([, v]) => v), 1e-9);
  const rows = entries.map(([label, value], i) => {
    const w = max > 0 ? (value / max) * (BAR_W - 130) : 0;
    const text = unit === "percent" ? percentWhole(value) : String(value);
    const y = i * ROW_H;
    return (
      `<text x="0" y="${y + 15}" class="bar-label">${escapeHtml(label)}</text>` +
      `<rect x="110" y="${y + 4}" width="${w.toFixed(1)}" height="14" class="bar"></rect>` +
      `<text x="${115 + w}" y="${y + 15}" class="bar-value">${text}</text>`
    );
  });
  const height = entries.length * ROW_H;
  return `<svg viewBox="0 0 ${BAR_W} ${height}" role="img" class="chart">${rows.join("")}</svg>`;
}

/** Two-segment split (the dashboard's gender panel). Values are fractions. */
export function splitBar(entries: [string, number][]): string {
  if (entries.length === 0 || entries.every(([, v]) => v === 0)) {
    return `<p class="zero-state">No data yet</p>`;
  }
  let x = 0;
  const parts: string[] = [];
  entries.forEach(([label, fraction], i) => {
    const w = fraction * BAR_W;
    parts.push(
      `<rect x="${x.toFixed(1)}" y="0" width="${w.toFixed(1)}" height="22" class="seg seg-${i}"></rect>`,
    );
    if (w > 34) {
      parts.push(
        `<text x="${(x + w / 2).toFixed(1)}" y="15" text-anchor="middle" class="seg-label">` +
          `${escapeHtml(label)} ${percentWhole(fraction)}</text>`,
      );
    }
    x += w;
  });
  return `<svg viewBox="0 0 ${BAR_W} 22" role="img" class="chart">${parts.join("")}</svg>`;
}

/**
 * Equirectangular scatter of case coordinates. A real tile layer needs the
 * network, so this stays offline-friendly; the caption lists the coordinates
 * as a fallback for screen readers.
 */
export function geoMap(points: [number, number, boolean][]): string {
  const w = 360;
  const h = 180;
  const dots = points
    .map(([lat, lon, infected]) => {
      const x = ((lon + 180) / 360) * w;
      const y = ((90 - lat) / 180) * h;
      const cls = infected ? "dot infected" : "dot";
      return `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="3" class="${cls}"></circle>`;
    })
    .join("");
  const frame = `<rect x="0" y="0" width="${w}" height="${h}" class="map-frame"></rect>`;
  const coords = points
    .map(([lat, lon]) => `${lat.toFixed(2)}, ${lon.toFixed(2)}`)
    .join("; ");
  return (
    `<svg viewBox="0 0 ${w} ${h}" role="img" aria-label="case map" class="chart map">` +
    `${frame}${dots}</svg>` +
    `<p class="map-coords">${points.length === 0 ? "No located cases" : escapeHtml(coords)}</p>`
  );
}
