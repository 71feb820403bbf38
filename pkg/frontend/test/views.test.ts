import assert from "node:assert/strict";
import { test } from "node:test";

import type { TraceJson } from "../src/api.js";
import { DEFAULT_FORM } from "../src/validate.js";
import {
  renderEmptyTrace,
  renderMissingTrace,
  renderRunStatus,
  renderScenarioForm,
  renderTrace,
} from "../src/views.js";

const SUPPLIERS = ["AuroraFarms", "CamelCargo"];
const FORKLIFTS = ["FL_00", "FL_01"];

const SAMPLE_TRACE: TraceJson = {
  main_question: "What do the differences in forklift waiting times reveal about the discharge flow?",
  evidence: [
    {
      sub_question: "What is the average waiting time for each forklift?",
      plan: "per-forklift wait versus the global mean",
      query_text: "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL) RETURN f.forklift_id AS forklift_id",
      result: {
        columns: ["stage", "forklift_id", "mean_wait_seconds", "ratio"],
        rows: [
          ["WaitForForklift", "FL_00", 363.78, 1.64],
          ["WaitForForklift", "FL_01", 205.91, 0.93],
        ],
      },
      summary: "FL_00 highest",
      attempt_count: 1,
      error: null,
    },
  ],
  final_summary: "FL_00 has the highest waiting time and the lowest utilization.",
  verdict: {
    subject: "FL_00",
    subject_kind: "forklift",
    stage: "WaitForForklift",
    stage_ratio: 1.64,
    min_utilization_subject: "FL_00",
    utilization: { FL_00: 0.3, FL_01: 0.42 },
  },
  budget_used: 1,
};

test("trace renders the four-column structure", () => {
  const html = renderTrace(SAMPLE_TRACE);
  for (const header of ["Sub-question", "Plan", "Result", "Query"]) {
    assert.ok(html.includes(`<th>${header}</th>`), header);
  }
  assert.ok(html.includes("FL_00"));
  assert.ok(html.includes("copy-query"));
  assert.ok(html.includes("Verdict"));
});

test("rendering is pure: same trace JSON, same markup", () => {
  assert.equal(renderTrace(SAMPLE_TRACE), renderTrace(JSON.parse(JSON.stringify(SAMPLE_TRACE))));
});

test("empty and missing trace states", () => {
  assert.ok(renderEmptyTrace().includes("No investigation steps"));
  assert.ok(renderMissingTrace("abc").includes("abc"));
});

test("form renders variant sections and validation errors", () => {
  const clean = renderScenarioForm({ ...DEFAULT_FORM, kind: "degraded_forklift" }, SUPPLIERS, FORKLIFTS, []);
  assert.ok(clean.includes('data-variant="degraded_forklift"'));
  assert.ok(!clean.includes("field-error"));
  const withError = renderScenarioForm({ ...DEFAULT_FORM, kind: "degraded_forklift", slowdownFactor: "0.5" }, SUPPLIERS, FORKLIFTS, [
    { field: "slowdownFactor", message: "factor must be greater than 1" },
  ]);
  assert.ok(withError.includes("field-error"));
  assert.ok(withError.includes("disabled"));
});

test("question text is escaped", () => {
  const html = renderTrace({
    ...SAMPLE_TRACE,
    main_question: "<script>alert(1)</script>",
  });
  assert.ok(!html.includes("<script>alert"));
  assert.ok(html.includes("&lt;script&gt;"));
});

test("run status line", () => {
  assert.ok(renderRunStatus(null, null).includes("No run selected"));
  const html = renderRunStatus("01ABC", "graphed", 162);
  assert.ok(html.includes("01ABC") && html.includes("graphed") && html.includes("162"));
});
