/**
 * Client-side mirror of the server's scenario validation rules, so the
 * form can flag mistakes inline before any request goes out.
 */

import type { ScenarioSpec } from "./api.js";

export interface ScenarioFormState {
  kind: "none" | "stage_transfer_delay" | "degraded_forklift" | "supplier_processing_delay";
  supplierId: string;
  stage: string;
  multiplier: string;
  forkliftId: string;
  slowdownFactor: string;
  handlingMultiplier: string;
  misallocation: boolean;
  seed: string;
}

export const STAGES = [
  "WaitToWorker",
  "WorkerCarry",
  "WaitAtWaitingPoint",
  "AgvTransport",
  "WaitForForklift",
  "ForkliftPlacement",
];

export const DEFAULT_FORM: ScenarioFormState = {
  kind: "none",
  supplierId: "CamelCargo",
  stage: "WaitToWorker",
  multiplier: "2.5",
  forkliftId: "FL_00",
  slowdownFactor: "1.8",
  handlingMultiplier: "1.6",
  misallocation: true,
  seed: "42",
};

export interface ValidationIssue {
  field: string;
  message: string;
}

function numeric(value: string): number | null {
  if (!value.trim()) return null;
  const parsed = Number(value);
  return Number.isFinite(parsed) ? parsed : null;
}

export function validateForm(form: ScenarioFormState): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const seed = numeric(form.seed);
  if (seed === null || !Number.isInteger(seed) || seed < 0) {
    issues.push({ field: "seed", message: "seed must be a non-negative integer" });
  }
  if (form.kind === "stage_transfer_delay") {
    if (!form.supplierId.trim()) issues.push({ field: "supplierId", message: "pick a supplier" });
    if (!STAGES.includes(form.stage)) issues.push({ field: "stage", message: "pick a stage" });
    const multiplier = numeric(form.multiplier);
    if (multiplier === null || multiplier <= 1) {
      issues.push({ field: "multiplier", message: "multiplier must be greater than 1" });
    }
  } else if (form.kind === "degraded_forklift") {
    if (!form.forkliftId.trim()) issues.push({ field: "forkliftId", message: "pick a forklift" });
    const factor = numeric(form.slowdownFactor);
    if (factor === null || factor <= 1) {
      issues.push({ field: "slowdownFactor", message: "factor must be greater than 1" });
    }
  } else if (form.kind === "supplier_processing_delay") {
    if (!form.supplierId.trim()) issues.push({ field: "supplierId", message: "pick a supplier" });
    const handling = numeric(form.handlingMultiplier);
    if (handling === null || handling <= 1) {
      issues.push({ field: "handlingMultiplier", message: "multiplier must be greater than 1" });
    }
  }
  return issues;
}

/** Form state to the exact request payload the server expects. */
export function formToPayload(form: ScenarioFormState): Record<string, unknown> {
  let scenario: ScenarioSpec = null;
  if (form.kind === "stage_transfer_delay") {
    scenario = {
      kind: "stage_transfer_delay",
      supplier_id: form.supplierId,
      stage: form.stage,
      multiplier: Number(form.multiplier),
      added_delay: null,
    };
  } else if (form.kind === "degraded_forklift") {
    scenario = {
      kind: "degraded_forklift",
      forklift_id: form.forkliftId,
      slowdown_factor: Number(form.slowdownFactor),
    };
  } else if (form.kind === "supplier_processing_delay") {
    scenario = {
      kind: "supplier_processing_delay",
      supplier_id: form.supplierId,
      handling_multiplier: Number(form.handlingMultiplier),
      misallocation_flag: form.misallocation,
    };
  }
  const payload: Record<string, unknown> = { seed: Number(form.seed) };
  if (scenario !== null) payload.scenario = scenario;
  return payload;
}
