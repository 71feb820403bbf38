import assert from "node:assert/strict";
import { test } from "node:test";

import { DEFAULT_FORM, formToPayload, validateForm, type ScenarioFormState } from "../src/validate.js";

function form(overrides: Partial<ScenarioFormState>): ScenarioFormState {
  return { ...DEFAULT_FORM, ...overrides };
}

test("defaults validate cleanly", () => {
  assert.deepEqual(validateForm(DEFAULT_FORM), []);
});

test("degraded forklift payload carries the scenario", () => {
  const payload = formToPayload(form({ kind: "degraded_forklift", forkliftId: "FL_00", slowdownFactor: "1.8" }));
  assert.deepEqual(payload.scenario, {
    kind: "degraded_forklift",
    forklift_id: "FL_00",
    slowdown_factor: 1.8,
  });
});

test("factor at or below one is rejected inline", () => {
  const issues = validateForm(form({ kind: "degraded_forklift", slowdownFactor: "0.5" }));
  assert.equal(issues.length, 1);
  assert.equal(issues[0].field, "slowdownFactor");
  const also = validateForm(form({ kind: "degraded_forklift", slowdownFactor: "1" }));
  assert.equal(also.length, 1);
});

test("stage delay multiplier must exceed one", () => {
  const issues = validateForm(form({ kind: "stage_transfer_delay", multiplier: "1.0" }));
  assert.ok(issues.some((i) => i.field === "multiplier"));
});

test("handling multiplier must exceed one", () => {
  const issues = validateForm(form({ kind: "supplier_processing_delay", handlingMultiplier: "-3" }));
  assert.ok(issues.some((i) => i.field === "handlingMultiplier"));
});

test("seed must be a non-negative integer", () => {
  assert.ok(validateForm(form({ seed: "-1" })).some((i) => i.field === "seed"));
  assert.ok(validateForm(form({ seed: "2.5" })).some((i) => i.field === "seed"));
  assert.ok(validateForm(form({ seed: "abc" })).some((i) => i.field === "seed"));
});

test("baseline form posts no scenario key", () => {
  const payload = formToPayload(form({ kind: "none", seed: "7" }));
  assert.deepEqual(payload, { seed: 7 });
});

test("stage delay payload carries stage and multiplier", () => {
  const payload = formToPayload(
    form({ kind: "stage_transfer_delay", supplierId: "CamelCargo", stage: "WaitToWorker", multiplier: "2.5" }),
  );
  assert.deepEqual(payload.scenario, {
    kind: "stage_transfer_delay",
    supplier_id: "CamelCargo",
    stage: "WaitToWorker",
    multiplier: 2.5,
    added_delay: null,
  });
});

test("misallocation flag round-trips", () => {
  const on = formToPayload(form({ kind: "supplier_processing_delay", misallocation: true }));
  const off = formToPayload(form({ kind: "supplier_processing_delay", misallocation: false }));
  assert.equal((on.scenario as { misallocation_flag: boolean }).misallocation_flag, true);
  assert.equal((off.scenario as { misallocation_flag: boolean }).misallocation_flag, false);
});
