/**
 * End-to-end smoke against the real service: build a degraded-forklift run
 * through the form pathway, ask the investigative question, and check the
 * rendered trace names the degraded unit.
 */

import assert from "node:assert/strict";
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { after, before, test } from "node:test";

import { WareflowClient } from "../src/api.js";
import { ConsoleController } from "../src/controller.js";
import { DEFAULT_FORM, type ScenarioFormState } from "../src/validate.js";
import { renderAnswer, renderTrace } from "../src/views.js";

const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let runsDir: string;

async function waitForHealth(client: WareflowClient, tries = 100): Promise<void> {
  for (let i = 0; i < tries; i++) {
    try {
      const health = await client.health();
      if (health.status === "ok") return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("service did not become healthy");
}

before(async () => {
  runsDir = mkdtempSync(join(tmpdir(), "wareflow-console-"));
  server = spawn(
    "python3",
    ["-m", "wareflow.service.cli", "--runs-dir", runsDir, "serve", "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForHealth(new WareflowClient(BASE));
});

after(() => {
  server?.kill("SIGTERM");
  rmSync(runsDir, { recursive: true, force: true });
});

test("scenario-2 run via the form names the degraded forklift", async () => {
  const controller = new ConsoleController(new WareflowClient(BASE), undefined, 50);
  const form: ScenarioFormState = {
    ...DEFAULT_FORM,
    kind: "degraded_forklift",
    forkliftId: "FL_00",
    slowdownFactor: "1.8",
    seed: "3",
  };
  const record = await controller.launchRun(form);
  assert.equal(record.status, "graphed");
  assert.ok(controller.session.canAsk);

  const question = "What do the differences in forklift waiting times reveal about the discharge flow?";
  const response = await controller.ask(question);
  assert.equal(response.class, "investigative");
  if (response.class !== "investigative") return;
  assert.equal(response.verdict.subject, "FL_00");

  const html = renderAnswer(question, response);
  assert.ok(html.includes("FL_00"), "rendered trace must name the degraded forklift");
  assert.ok(html.includes("Sub-question"));

  // the persisted trace renders identically to the inline one
  const stored = await controller.client.getTrace(controller.session.runId!, response.trace_id);
  assert.equal(renderTrace(stored), renderTrace(response.trace));
});

test("operational question renders a value answer", async () => {
  const controller = new ConsoleController(new WareflowClient(BASE), undefined, 50);
  await controller.launchRun({ ...DEFAULT_FORM, kind: "none", seed: "7" });
  const response = await controller.ask("How many packages are handled by each forklift?");
  assert.equal(response.class, "operational");
  const html = renderAnswer("How many packages are handled by each forklift?", response);
  assert.ok(html.includes("FL_04"));
});

test("server-side validation surfaces as an API error", async () => {
  const client = new WareflowClient(BASE);
  await assert.rejects(
    () => client.createRun({ workers: 10, team_size: 4 }),
    (error: Error & { status?: number; code?: string }) => {
      assert.equal(error.status, 400);
      assert.equal(error.code, "CONFIG_INVALID");
      return true;
    },
  );
});

test("asking before the graph exists fails cleanly", async () => {
  const client = new WareflowClient(BASE);
  const created = await client.createRun({ seed: 5 });
  await client.simulate(created.run_id);
  await assert.rejects(
    () => client.ask(created.run_id, "How many packages are handled by each forklift?"),
    (error: Error & { status?: number }) => {
      assert.equal(error.status, 409);
      return true;
    },
  );
});
