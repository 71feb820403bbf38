import assert from "node:assert/strict";
import { test } from "node:test";

import type { AskResponse } from "../src/api.js";
import { ConsoleSession } from "../src/session.js";

const OPERATIONAL: AskResponse = {
  class: "operational",
  answer: "five each",
  structured: { FL_00: 33 },
  evidence: [],
};

test("asking requires a graphed run", () => {
  const session = new ConsoleSession();
  assert.equal(session.canAsk, false);
  session.selectRun("R1", "simulated");
  assert.equal(session.canAsk, false);
  session.updateStatus("graphed");
  assert.equal(session.canAsk, true);
});

test("conversation order is preserved and answers link trace ids", () => {
  const session = new ConsoleSession();
  session.selectRun("R1", "graphed");
  session.record("q1", OPERATIONAL);
  session.record("q2", {
    class: "investigative",
    trace_id: "T9",
    answer: "because",
    verdict: {
      subject: "FL_00",
      subject_kind: "forklift",
      stage: "WaitForForklift",
      stage_ratio: 1.6,
      min_utilization_subject: "FL_00",
      utilization: {},
    },
    trace: { main_question: "q2", evidence: [], final_summary: "because", verdict: {} as never, budget_used: 0 },
  });
  assert.deepEqual(
    session.conversation.map((e) => e.question),
    ["q1", "q2"],
  );
  assert.equal(session.conversation[0].traceId, null);
  assert.equal(session.conversation[1].traceId, "T9");
});

test("selecting a new run clears the conversation", () => {
  const session = new ConsoleSession();
  session.selectRun("R1", "graphed");
  session.record("q1", OPERATIONAL);
  session.selectRun("R2", "created");
  assert.equal(session.conversation.length, 0);
  assert.equal(session.runId, "R2");
});
