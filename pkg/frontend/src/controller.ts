/**
 * Console flows over the API client: launch a run from the form, poll it
 * to readiness, ask questions. No analytics happen here; the server owns
 * every number.
 */

import { WareflowClient, type AskResponse, type RunRecord } from "./api.js";
import { formToPayload, validateForm, type ScenarioFormState, type ValidationIssue } from "./validate.js";
import { ConsoleSession } from "./session.js";

export class ValidationFailed extends Error {
  constructor(public issues: ValidationIssue[]) {
    super(issues.map((i) => `${i.field}: ${i.message}`).join("; "));
  }
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ConsoleController {
  constructor(
    public client: WareflowClient,
    public session: ConsoleSession = new ConsoleSession(),
    public pollIntervalMs: number = 1000,
  ) {}

  /** Create, simulate, and graph a run described by the scenario form. */
  async launchRun(form: ScenarioFormState): Promise<RunRecord> {
    const issues = validateForm(form);
    if (issues.length) throw new ValidationFailed(issues);
    const created = await this.client.createRun(formToPayload(form));
    this.session.selectRun(created.run_id, created.status);
    await this.client.simulate(created.run_id);
    this.session.updateStatus("simulated");
    await this.client.buildGraph(created.run_id);
    const ready = await this.waitForStatus(created.run_id, "graphed");
    return ready;
  }

  /** Poll run status until it reaches `target` (desk-scale runs finish fast). */
  async waitForStatus(runId: string, target: string, maxPolls = 30): Promise<RunRecord> {
    for (let i = 0; i < maxPolls; i++) {
      const record = await this.client.getRun(runId);
      this.session.updateStatus(record.status);
      if (record.status === target) return record;
      await sleep(this.pollIntervalMs);
    }
    throw new Error(`run ${runId} did not reach ${target}`);
  }

  async ask(question: string): Promise<AskResponse> {
    if (!this.session.canAsk || this.session.runId === null) {
      throw new Error("select a graphed run before asking");
    }
    const response = await this.client.ask(this.session.runId, question);
    this.session.record(question, response);
    return response;
  }
}
