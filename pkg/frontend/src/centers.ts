import { escapeHtml, kilometres } from "./format";
import type { HealthCenterEntry } from "./types";

/** The service returns centers distance-sorted; render them in that order. */
export function renderCenterList(entries: HealthCenterEntry[]): string {
  if (entries.length === 0) return `<p class="zero-state">No health centers registered</p>`;
  const items = entries
    .map(
      (e) => `
      <li class="center">
        <strong>${escapeHtml(e.center.name)}</strong>
        <span class="distance">${kilometres(e.distance_km)}</span>
        ${e.center.contact ? `<span class="contact">${escapeHtml(e.center.contact)}</span>` : ""}
      </li>`,
    )
    .join("");
  return `<ol class="centers">${items}</ol>`;
}

export function renderCentersScreen(): string {
  return `
    <section class="centers-screen">
      <h2>Nearest health centers</h2>
      <div id="center-status">Locating you…</div>
      <form id="manual-coords" hidden>
        <p>Location access was denied. Enter coordinates instead:</p>
        <label class="field">Latitude <input type="number" id="lat-input" step="any" min="-90" max="90"></label>
        <label class="field">Longitude <input type="number" id="lon-input" step="any" min="-180" max="180"></label>
        <button type="submit">Find centers</button>
      </form>
      <div id="center-list"></div>
      <p><a href="#/result">Back to result</a></p>
    </section>`;
}

export function requestPosition(): Promise<{ lat: number; lon: number }> {
  return new Promise((resolve, reject) => {
    if (!("geolocation" in navigator)) {
      reject(new Error("geolocation unavailable"));
      return;
    }
    navigator.geolocation.getCurrentPosition(
      (pos) => resolve({ lat: pos.coords.latitude, lon: pos.coords.longitude }),
      (err) => reject(err),
      { timeout: 10_000 },
    );
  });
}
