import { barChart, geoMap, splitBar } from "./charts";
import { escapeHtml, percentOneDecimal, percentWhole } from "./format";
import type { CaseListing, DashboardSummary } from "./types";

/** Tiles show service-provided figures verbatim (formatted, never derived). */
export function renderTiles(summary: DashboardSummary): string {
  return `
    <div class="tiles">
      <div class="tile"><span class="tile-value">${summary.total_cases}</span>
        <span class="tile-label">Total cases</span></div>
      <div class="tile"><span class="tile-value">${summary.infected_count}</span>
        <span class="tile-label">Infected</span></div>
      <div class="tile"><span class="tile-value" id="infection-rate">${percentWhole(
        summary.infection_rate,
      )}</span>
        <span class="tile-label">Infection rate</span></div>
    </div>`;
}

export function renderCharts(summary: DashboardSummary): string {
  const genders = Object.entries(summary.gender_breakdown) as [string, number][];
  const ages = Object.entries(summary.age_histogram) as [string, number][];
  const symptoms = (Object.entries(summary.symptom_prevalence) as [string, number][]).sort(
    (a, b) => b[1] - a[1],
  );
  return `
    <div class="panels">
      <section class="panel"><h3>Gender of infected cases</h3>${splitBar(genders)}</section>
      <section class="panel"><h3>Age of infected cases</h3>${barChart(ages)}</section>
      <section class="panel"><h3>Symptom prevalence</h3>${barChart(symptoms, {
        unit: "percent",
        maxValue: 1,
      })}</section>
      <section class="panel"><h3>Case map</h3>${geoMap(summary.geo_points)}</section>
    </div>`;
}

export function renderCaseTable(listing: CaseListing): string {
  if (listing.total === 0) {
    return `<p class="zero-state">No cases recorded</p>`;
  }
  const rows = listing.cases
    .map(
      (c) => `
      <tr>
        <td>${escapeHtml(c.case_id.slice(0, 8))}</td>
        <td>${escapeHtml(c.submitted_at.slice(0, 16).replace("T", " "))}</td>
        <td>${escapeHtml(c.prediction)}</td>
        <td>${percentOneDecimal(c.confidence)}</td>
        <td>${c.age ?? ""}</td>
        <td>${escapeHtml(c.gender ?? "")}</td>
        <td>${escapeHtml(c.symptoms.join(", "))}</td>
      </tr>`,
    )
    .join("");
  const page = Math.floor(listing.offset / listing.limit) + 1;
  const pages = Math.max(1, Math.ceil(listing.total / listing.limit));
  return `
    <table class="cases">
      <thead><tr><th>Case</th><th>Submitted</th><th>Prediction</th><th>Confidence</th>
        <th>Age</th><th>Gender</th><th>Symptoms</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <nav class="pager" aria-label="case pages">
      <button id="page-prev" ${listing.offset === 0 ? "disabled" : ""}>Previous</button>
      <span>Page ${page} of ${pages}</span>
      <button id="page-next" ${
        listing.offset + listing.limit >= listing.total ? "disabled" : ""
      }>Next</button>
    </nav>`;
}

export function renderDashboard(summary: DashboardSummary, listing: CaseListing): string {
  return `
    <section class="dashboard">
      <header class="dash-header">
        <h2>Monitoring dashboard</h2>
        <span class="stamp">Updated ${escapeHtml(summary.generated_at.slice(0, 19))}</span>
        <button id="logout">Log out</button>
      </header>
      ${renderTiles(summary)}
      ${renderCharts(summary)}
      <section class="panel"><h3>Cases</h3><div id="case-table">${renderCaseTable(
        listing,
      )}</div></section>
    </section>`;
}
