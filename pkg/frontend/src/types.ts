/** Shapes of the case-service /api/v1 payloads. */

export interface ServiceConfig {
  positive_class: string;
  class_names: string[];
  task: string;
  threshold: number;
  symptom_catalog: string[];
  guidance: { infected: string; uninfected: string };
}

export interface ClassifyResponse {
  prediction: string;
  confidence: number;
  per_class: Record<string, number>;
  model_version: string | null;
}

export interface CaseSubmission {
  prediction: string;
  confidence: number;
  symptoms?: string[];
  age?: number | null;
  gender?: string | null;
  location?: { lat: number; lon: number } | null;
  dashboard_opt_out?: boolean;
}

export interface CaseRecord {
  case_id: string;
  submitted_at: string;
  prediction: string;
  confidence: number;
  model_version: string | null;
  image_ref: string | null;
  symptoms: string[];
  age: number | null;
  gender: string | null;
  location: [number, number] | null;
  dashboard_opt_out: boolean;
}

export interface CaseListing {
  cases: CaseRecord[];
  total: number;
  limit: number;
  offset: number;
}

export interface HealthCenterEntry {
  center: {
    center_id: string;
    name: string;
    lat: number;
    lon: number;
    contact: string;
  };
  distance_km: number;
}

export interface DashboardSummary {
  total_cases: number;
  infected_count: number;
  infection_rate: number;
  gender_breakdown: Record<string, number>;
  age_histogram: Record<string, number>;
  symptom_prevalence: Record<string, number>;
  geo_points: [number, number, boolean][];
  generated_at: string;
}
