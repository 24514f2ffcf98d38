import type {
  CaseListing,
  CaseSubmission,
  ClassifyResponse,
  DashboardSummary,
  HealthCenterEntry,
  ServiceConfig,
} from "./types";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export interface ListParams {
  from?: string;
  to?: string;
  infected?: boolean;
  limit?: number;
  offset?: number;
}

function query(params: Record<string, unknown>): string {
  const pairs = Object.entries(params).filter(([, v]) => v !== undefined && v !== null);
  if (pairs.length === 0) return "";
  const qs = new URLSearchParams(pairs.map(([k, v]) => [k, String(v)]));
  return `?${qs.toString()}`;
}

/**
 * Thin typed client over the service API. `baseUrl` is empty in the browser
 * (same origin); tests point it at a stub server.
 */
export function createApi(baseUrl = "", fetchFn: typeof fetch = (...a) => fetch(...a)) {
  async function request<T>(path: string, init: RequestInit = {}, token?: string): Promise<T> {
    const headers = new Headers(init.headers);
    if (token) headers.set("authorization", `Bearer ${token}`);
    const res = await fetchFn(baseUrl + path, { ...init, headers });
    if (!res.ok) {
      let detail = res.statusText;
      try {
        const body = await res.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  return {
    config: () => request<ServiceConfig>("/api/v1/config"),

    healthz: () => request<{ status: string; model_version: string | null }>("/api/v1/healthz"),

    classify(image: Blob, symptoms?: string[]): Promise<ClassifyResponse> {
      const form = new FormData();
      form.append("image", image, "lesion.png");
      if (symptoms && symptoms.length) form.append("symptoms", JSON.stringify(symptoms));
      return request("/api/v1/classify", { method: "POST", body: form });
    },

    submitCase(body: CaseSubmission): Promise<{ case_id: string; submitted_at: string }> {
      return request("/api/v1/cases", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    },

    listCases: (token: string, params: ListParams = {}) =>
      request<CaseListing>(`/api/v1/cases${query({ ...params })}`, {}, token),

    healthCenters: (lat: number, lon: number, limit = 5) =>
      request<HealthCenterEntry[]>(`/api/v1/health-centers${query({ lat, lon, limit })}`),

    dashboard: (token: string, range: { from?: string; to?: string } = {}) =>
      request<DashboardSummary>(`/api/v1/dashboard/summary${query({ ...range })}`, {}, token),
  };
}

export type Api = ReturnType<typeof createApi>;
