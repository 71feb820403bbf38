/**
 * Typed client for the /v1 HTTP API. The console never computes analytics
 * itself; every number on screen comes from these calls.
 */

export interface ScenarioNone {
  kind: null;
}

export interface StageTransferDelay {
  kind: "stage_transfer_delay";
  supplier_id: string;
  stage: string;
  multiplier: number | null;
  added_delay: number | null;
}

export interface DegradedForklift {
  kind: "degraded_forklift";
  forklift_id: string;
  slowdown_factor: number;
}

export interface SupplierProcessingDelay {
  kind: "supplier_processing_delay";
  supplier_id: string;
  handling_multiplier: number;
  misallocation_flag: boolean;
}

export type ScenarioSpec = StageTransferDelay | DegradedForklift | SupplierProcessingDelay | null;

export interface RunRecord {
  run_id: string;
  status: "created" | "simulated" | "graphed";
  created_at: number;
  config: Record<string, unknown>;
}

export interface ResultTableJson {
  columns: string[];
  rows: unknown[][];
}

export interface EvidenceJson {
  sub_question: string;
  plan: string;
  query_text: string;
  result: ResultTableJson | null;
  summary: string;
  attempt_count: number;
  error: string | null;
}

export interface VerdictJson {
  subject: string | null;
  subject_kind: string | null;
  stage: string | null;
  stage_ratio: number | null;
  min_utilization_subject: string | null;
  utilization: Record<string, number | null>;
}

export interface TraceJson {
  main_question: string;
  evidence: EvidenceJson[];
  final_summary: string;
  verdict: VerdictJson;
  budget_used: number;
}

export interface OperationalAnswer {
  class: "operational";
  answer: string;
  structured: unknown;
  evidence: EvidenceJson[];
}

export interface InvestigativeAnswer {
  class: "investigative";
  trace_id: string;
  answer: string;
  verdict: VerdictJson;
  trace: TraceJson;
}

export type AskResponse = OperationalAnswer | InvestigativeAnswer;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(detail);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(`${base}${path}`, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const text = await response.text();
  let body: unknown = null;
  try {
    body = text ? JSON.parse(text) : null;
  } catch {
    body = null;
  }
  if (!response.ok) {
    const err = (body ?? {}) as { error?: string; detail?: string };
    throw new ApiError(response.status, err.error ?? "HTTP_ERROR", err.detail ?? response.statusText);
  }
  return body as T;
}

export class WareflowClient {
  constructor(public baseUrl: string = "") {}

  health(): Promise<{ status: string; version: string }> {
    return request(this.baseUrl, "/v1/health");
  }

  configDefaults(): Promise<Record<string, unknown>> {
    return request(this.baseUrl, "/v1/config/defaults");
  }

  createRun(config: Record<string, unknown>): Promise<RunRecord> {
    return request(this.baseUrl, "/v1/runs", { method: "POST", body: JSON.stringify({ config }) });
  }

  simulate(runId: string, force = false): Promise<RunRecord & { packages: number }> {
    return request(this.baseUrl, `/v1/runs/${runId}/simulate`, { method: "POST", body: JSON.stringify({ force }) });
  }

  buildGraph(runId: string): Promise<RunRecord & { nodes: number; edges: number }> {
    return request(this.baseUrl, `/v1/runs/${runId}/graph`, { method: "POST", body: JSON.stringify({}) });
  }

  getRun(runId: string): Promise<RunRecord> {
    return request(this.baseUrl, `/v1/runs/${runId}`);
  }

  ask(runId: string, question: string, provider = "rule"): Promise<AskResponse> {
    return request(this.baseUrl, `/v1/runs/${runId}/ask`, {
      method: "POST",
      body: JSON.stringify({ question, provider }),
    });
  }

  getTrace(runId: string, traceId: string): Promise<TraceJson> {
    return request(this.baseUrl, `/v1/runs/${runId}/investigations/${traceId}`);
  }
}
