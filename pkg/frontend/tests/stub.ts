import { createServer, IncomingMessage, ServerResponse } from "node:http";
import type { AddressInfo } from "node:net";
import type {
  CaseRecord,
  ClassifyResponse,
  DashboardSummary,
  ServiceConfig,
} from "../src/types";

/** In-process stand-in for the case service, speaking the same JSON. */

export const TOKEN = "stub-token";

export const stubConfig: ServiceConfig = {
  positive_class: "Monkeypox",
  class_names: ["Other", "Monkeypox"],
  task: "binary",
  threshold: 0.5,
  symptom_catalog: ["fever", "headache", "rash", "swollen_lymph_nodes"],
  guidance: {
    infected: "Isolate and contact a health center for confirmatory testing.",
    uninfected: "No signs detected. Monitor the lesion and re-check if it changes.",
  },
};

/* 7 cases, 4 infected; 3 of the 4 infected are male. */
export const scenarioSummary: DashboardSummary = {
  total_cases: 7,
  infected_count: 4,
  infection_rate: 4 / 7,
  gender_breakdown: { male: 0.75, female: 0.25 },
  age_histogram: { "20-29": 1, "30-39": 2, "40-49": 1 },
  symptom_prevalence: { fever: 0.75, rash: 0.5, headache: 0.25 },
  geo_points: [
    [24.71, 46.68, true],
    [24.65, 46.71, true],
    [21.49, 39.19, false],
  ],
  generated_at: "2026-03-01T12:00:00+00:00",
};

export const infectedClassify: ClassifyResponse = {
  prediction: "Monkeypox",
  confidence: 0.93,
  per_class: { Other: 0.07, Monkeypox: 0.93 },
  model_version: "stub-1",
};

export const uninfectedClassify: ClassifyResponse = {
  prediction: "Other",
  confidence: 0.88,
  per_class: { Other: 0.88, Monkeypox: 0.12 },
  model_version: "stub-1",
};

export interface SeenRequest {
  method: string;
  path: string;
  auth: string | null;
  contentType: string | null;
  body: Buffer;
}

export interface StubState {
  classify: ClassifyResponse;
  classifyError: { status: number; detail: string } | null;
  summary: DashboardSummary;
  records: CaseRecord[];
  seen: SeenRequest[];
}

export interface Stub {
  url: string;
  state: StubState;
  close(): Promise<void>;
}

function readBody(req: IncomingMessage): Promise<Buffer> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    req.on("data", (c: Buffer) => chunks.push(c));
    req.on("end", () => resolve(Buffer.concat(chunks)));
    req.on("error", reject);
  });
}

function send(res: ServerResponse, status: number, body: unknown, headers: Record<string, string> = {}) {
  res.writeHead(status, { "content-type": "application/json", ...headers });
  res.end(JSON.stringify(body));
}

const CENTERS = [
  { center: { center_id: "hc1", name: "King Fahd Clinic", lat: 24.7, lon: 46.7, contact: "011-555-0101" }, distance_km: 0.9 },
  { center: { center_id: "hc2", name: "Al Olaya Center", lat: 24.69, lon: 46.69, contact: "011-555-0102" }, distance_km: 2.4 },
  { center: { center_id: "hc3", name: "Diriyah Hospital", lat: 24.74, lon: 46.58, contact: "" }, distance_km: 12.6 },
];

async function handle(state: StubState, req: IncomingMessage, res: ServerResponse) {
  const url = new URL(req.url ?? "/", "http://stub");
  const path = url.pathname;
  const body = await readBody(req);
  state.seen.push({
    method: req.method ?? "GET",
    path: path + url.search,
    auth: req.headers.authorization ?? null,
    contentType: req.headers["content-type"] ?? null,
    body,
  });

  const authed = req.headers.authorization === `Bearer ${TOKEN}`;
  const deny = () =>
    send(res, 401, { detail: "missing or invalid token" }, { "www-authenticate": "Bearer" });

  if (req.method === "GET" && path === "/api/v1/config") {
    return send(res, 200, stubConfig);
  }
  if (req.method === "GET" && path === "/api/v1/healthz") {
    return send(res, 200, { status: "ok", model_version: "stub-1" });
  }
  if (req.method === "POST" && path === "/api/v1/classify") {
    if (state.classifyError) {
      return send(res, state.classifyError.status, { detail: state.classifyError.detail });
    }
    return send(res, 200, state.classify);
  }
  if (req.method === "POST" && path === "/api/v1/cases") {
    const sub = JSON.parse(body.toString("utf-8"));
    const record: CaseRecord = {
      case_id: `case-${String(state.records.length + 1).padStart(4, "0")}`,
      submitted_at: new Date().toISOString().replace("Z", "+00:00"),
      prediction: sub.prediction,
      confidence: sub.confidence,
      model_version: "stub-1",
      image_ref: null,
      symptoms: sub.symptoms ?? [],
      age: sub.age ?? null,
      gender: sub.gender ?? null,
      location: sub.location ? [sub.location.lat, sub.location.lon] : null,
      dashboard_opt_out: sub.dashboard_opt_out ?? false,
    };
    state.records.push(record);
    return send(res, 201, { case_id: record.case_id, submitted_at: record.submitted_at });
  }
  if (req.method === "GET" && path === "/api/v1/cases") {
    if (!authed) return deny();
    const limit = Number(url.searchParams.get("limit") ?? "50");
    const offset = Number(url.searchParams.get("offset") ?? "0");
    return send(res, 200, {
      cases: state.records.slice(offset, offset + limit),
      total: state.records.length,
      limit,
      offset,
    });
  }
  if (req.method === "GET" && path === "/api/v1/health-centers") {
    if (!url.searchParams.has("lat") || !url.searchParams.has("lon")) {
      return send(res, 422, { detail: "lat and lon are required" });
    }
    const limit = Number(url.searchParams.get("limit") ?? "5");
    return send(res, 200, CENTERS.slice(0, limit));
  }
  if (req.method === "GET" && path === "/api/v1/dashboard/summary") {
    if (!authed) return deny();
    return send(res, 200, state.summary);
  }
  return send(res, 404, { detail: `no route for ${req.method} ${path}` });
}

export async function startStub(): Promise<Stub> {
  const state: StubState = {
    classify: infectedClassify,
    classifyError: null,
    summary: scenarioSummary,
    records: [],
    seen: [],
  };
  const server = createServer((req, res) => {
    void handle(state, req, res).catch((err) => send(res, 500, { detail: String(err) }));
  });
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const { port } = server.address() as AddressInfo;
  return {
    url: `http://127.0.0.1:${port}`,
    state,
    close: () =>
      new Promise<void>((resolve, reject) => server.close((e) => (e ? reject(e) : resolve()))),
  };
}
