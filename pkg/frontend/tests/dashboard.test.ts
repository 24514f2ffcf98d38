import { describe, expect, it } from "vitest";
import { barChart, geoMap, splitBar } from "../src/charts";
import { renderCaseTable, renderCharts, renderDashboard, renderTiles } from "../src/dashboard";
import { kilometres, percentOneDecimal, percentWhole } from "../src/format";
import type { CaseListing, CaseRecord, DashboardSummary } from "../src/types";
import { scenarioSummary } from "./stub";

const emptySummary: DashboardSummary = {
  total_cases: 0,
  infected_count: 0,
  infection_rate: 0,
  gender_breakdown: {},
  age_histogram: {},
  symptom_prevalence: {},
  geo_points: [],
  generated_at: "2026-03-01T12:00:00+00:00",
};

function record(n: number): CaseRecord {
  return {
    case_id: `case-${String(n).padStart(4, "0")}`,
    submitted_at: "2026-03-01T09:30:00+00:00",
    prediction: n % 2 === 0 ? "Monkeypox" : "Other",
    confidence: 0.9,
    model_version: "stub-1",
    image_ref: null,
    symptoms: ["fever"],
    age: 30 + n,
    gender: n % 2 === 0 ? "male" : "female",
    location: null,
    dashboard_opt_out: false,
  };
}

function listing(total: number, limit: number, offset: number): CaseListing {
  const cases = [];
  for (let i = offset; i < Math.min(offset + limit, total); i++) cases.push(record(i + 1));
  return { cases, total, limit, offset };
}

describe("formatting", () => {
  it("renders service fractions as display percentages", () => {
    expect(percentWhole(4 / 7)).toBe("57%");
    expect(percentWhole(0.75)).toBe("75%");
    expect(percentOneDecimal(0.9345)).toBe("93.5%");
    expect(kilometres(0.94)).toBe("0.9 km");
    expect(kilometres(12.6)).toBe("13 km");
  });
});

describe("dashboard tiles", () => {
  it("shows the service infection rate verbatim as 57% for the 4-of-7 summary", () => {
    const html = renderTiles(scenarioSummary);
    expect(html).toContain('id="infection-rate">57%<');
    expect(html).toContain(">7</span>");
    expect(html).toContain(">4</span>");
  });

  it("shows zeros for an empty summary", () => {
    const html = renderTiles(emptySummary);
    expect(html).toContain('id="infection-rate">0%<');
  });
});

describe("dashboard charts", () => {
  it("labels the male segment 75% for the 3-of-4-male summary", () => {
    const html = renderCharts(scenarioSummary);
    expect(html).toContain("male 75%");
    expect(html).toContain("female 25%");
  });

  it("plots one dot per geo point and marks infected ones", () => {
    const html = geoMap(scenarioSummary.geo_points);
    expect(html.match(/<circle/g)).toHaveLength(3);
    expect(html.match(/dot infected/g)).toHaveLength(2);
  });

  it("shows zero states rather than empty charts", () => {
    expect(barChart([])).toContain("No data yet");
    expect(splitBar([])).toContain("No data yet");
    expect(geoMap([])).toContain("No located cases");
  });

  it("scales symptom bars as percentages", () => {
    const html = barChart(
      [
        ["fever", 0.75],
        ["rash", 0.5],
      ],
      { unit: "percent", maxValue: 1 },
    );
    expect(html).toContain(">75%<");
    expect(html).toContain(">50%<");
  });
});

describe("case table", () => {
  it("shows a zero state when no cases exist", () => {
    expect(renderCaseTable(listing(0, 10, 0))).toContain("No cases recorded");
  });

  it("renders one row per case with prediction and confidence", () => {
    const html = renderCaseTable(listing(3, 10, 0));
    const body = html.slice(html.indexOf("<tbody>"), html.indexOf("</tbody>"));
    expect(body.match(/<tr>/g)).toHaveLength(3);
    expect(html).toContain("Monkeypox");
    expect(html).toContain("90.0%");
  });

  it("pages through long listings", () => {
    const middle = renderCaseTable(listing(25, 10, 10));
    expect(middle).toContain("Page 2 of 3");
    expect(middle).not.toContain('id="page-prev" disabled');
    expect(middle).not.toContain('id="page-next" disabled');

    const first = renderCaseTable(listing(25, 10, 0));
    expect(first).toContain("Page 1 of 3");
    expect(first).toContain('id="page-prev" disabled');

    const last = renderCaseTable(listing(25, 10, 20));
    expect(last).toContain("Page 3 of 3");
    expect(last).toContain('id="page-next" disabled');
  });
});

describe("full dashboard", () => {
  it("combines tiles, charts, table, and the update stamp", () => {
    const html = renderDashboard(scenarioSummary, listing(7, 10, 0));
    expect(html).toContain('id="infection-rate">57%<');
    expect(html).toContain("male 75%");
    expect(html).toContain('id="logout"');
    expect(html).toContain("2026-03-01T12:00:00");
  });
});
