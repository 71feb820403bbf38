/**
 * Pure view renderers: state in, HTML string out. The same trace JSON
 * always renders to the same markup, which keeps these testable without a
 * browser.
 */

import type { AskResponse, EvidenceJson, ResultTableJson, TraceJson } from "./api.js";
import { STAGES, type ScenarioFormState, type ValidationIssue } from "./validate.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function issueFor(issues: ValidationIssue[], field: string): string {
  const issue = issues.find((i) => i.field === field);
  return issue ? `<span class="field-error" data-field="${field}">${escapeHtml(issue.message)}</span>` : "";
}

export function renderScenarioForm(
  form: ScenarioFormState,
  suppliers: string[],
  forklifts: string[],
  issues: ValidationIssue[] = [],
): string {
  const options = (values: string[], selected: string) =>
    values.map((v) => `<option value="${v}"${v === selected ? " selected" : ""}>${v}</option>`).join("");
  const kinds: [ScenarioFormState["kind"], string][] = [
    ["none", "Baseline (no inefficiency)"],
    ["stage_transfer_delay", "Stage transfer delay"],
    ["degraded_forklift", "Degraded forklift"],
    ["supplier_processing_delay", "Supplier processing delay"],
  ];
  const sections: Record<string, string> = {
    stage_transfer_delay: `
      <div class="variant" data-variant="stage_transfer_delay">
        <label>Supplier <select name="supplierId">${options(suppliers, form.supplierId)}</select></label>
        <label>Stage <select name="stage">${options(STAGES, form.stage)}</select></label>
        <label>Multiplier <input name="multiplier" type="number" step="0.1" value="${escapeHtml(form.multiplier)}"></label>
        ${issueFor(issues, "multiplier")}
      </div>`,
    degraded_forklift: `
      <div class="variant" data-variant="degraded_forklift">
        <label>Forklift <select name="forkliftId">${options(forklifts, form.forkliftId)}</select></label>
        <label>Slowdown factor <input name="slowdownFactor" type="number" step="0.1" value="${escapeHtml(form.slowdownFactor)}"></label>
        ${issueFor(issues, "slowdownFactor")}
      </div>`,
    supplier_processing_delay: `
      <div class="variant" data-variant="supplier_processing_delay">
        <label>Supplier <select name="supplierId">${options(suppliers, form.supplierId)}</select></label>
        <label>Handling multiplier <input name="handlingMultiplier" type="number" step="0.1" value="${escapeHtml(form.handlingMultiplier)}"></label>
        <label>Misallocate equipment <input name="misallocation" type="checkbox"${form.misallocation ? " checked" : ""}></label>
        ${issueFor(issues, "handlingMultiplier")}
      </div>`,
  };
  const active = form.kind !== "none" ? sections[form.kind] : "";
  return `
  <form id="scenario-form">
    <label>Scenario
      <select name="kind">${kinds.map(([k, label]) => `<option value="${k}"${form.kind === k ? " selected" : ""}>${label}</option>`).join("")}</select>
    </label>
    ${active}
    <label>Seed <input name="seed" value="${escapeHtml(form.seed)}"></label>
    ${issueFor(issues, "seed")}
    <button type="submit"${issues.length ? " disabled" : ""}>Launch run</button>
  </form>`;
}

export function renderRunStatus(runId: string | null, status: string | null, packages?: number): string {
  if (!runId) return `<p class="status">No run selected.</p>`;
  const detail = packages !== undefined ? ` (${packages} packages)` : "";
  return `<p class="status" data-run="${runId}">Run <code>${runId}</code>: <strong>${status}</strong>${detail}</p>`;
}

function renderCell(value: unknown): string {
  if (value === null || value === undefined) return "<em>null</em>";
  if (typeof value === "number") {
    return Number.isInteger(value) ? String(value) : value.toFixed(2);
  }
  return escapeHtml(String(value));
}

export function renderResultTable(table: ResultTableJson | null): string {
  if (!table) return `<p class="no-result">no result</p>`;
  const head = table.columns.map((c) => `<th>${escapeHtml(c)}</th>`).join("");
  const body = table.rows
    .map((row) => `<tr>${row.map((v) => `<td>${renderCell(v)}</td>`).join("")}</tr>`)
    .join("");
  return `<table class="result"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

function renderStructured(value: unknown): string {
  if (value === null || value === undefined) return "<em>null</em>";
  if (Array.isArray(value) || typeof value === "object") {
    return `<pre class="structured">${escapeHtml(JSON.stringify(value, null, 2))}</pre>`;
  }
  return `<p class="structured">${renderCell(value)}</p>`;
}

/** Four-column evidence row: sub-question, plan, result, query. */
export function renderEvidenceRow(item: EvidenceJson, index: number): string {
  return `
  <tr class="evidence" data-step="${index}">
    <td class="sub-question">${escapeHtml(item.sub_question)}</td>
    <td class="plan">${escapeHtml(item.plan)}</td>
    <td class="result-summary">${item.error ? `<span class="error">${escapeHtml(item.error)}</span>` : renderResultTable(item.result)}</td>
    <td class="query">
      <pre>${escapeHtml(item.query_text)}</pre>
      <button class="copy-query" data-step="${index}">Copy query</button>
    </td>
  </tr>`;
}

export function renderTrace(trace: TraceJson): string {
  const rows = trace.evidence.map((item, i) => renderEvidenceRow(item, i)).join("");
  const verdict = trace.verdict;
  const verdictLine = verdict.subject
    ? `<p class="verdict">Verdict: <strong>${escapeHtml(verdict.subject)}</strong>` +
      (verdict.stage ? ` — bottleneck stage <strong>${escapeHtml(verdict.stage)}</strong>` : "") +
      (verdict.min_utilization_subject
        ? ` — lowest utilization: <strong>${escapeHtml(verdict.min_utilization_subject)}</strong>`
        : "") +
      `</p>`
    : "";
  return `
  <section class="trace">
    <h3>${escapeHtml(trace.main_question)}</h3>
    <table class="trace-table">
      <thead><tr><th>Sub-question</th><th>Plan</th><th>Result</th><th>Query</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    ${verdictLine}
    <p class="final-summary">${escapeHtml(trace.final_summary)}</p>
  </section>`;
}

export function renderEmptyTrace(): string {
  return `<section class="trace empty"><p>No investigation steps recorded.</p></section>`;
}

export function renderMissingTrace(traceId: string): string {
  return `<section class="trace missing"><p>Trace <code>${escapeHtml(traceId)}</code> was not found.</p></section>`;
}

export function renderAnswer(question: string, response: AskResponse): string {
  if (response.class === "operational") {
    return `
    <article class="answer operational">
      <h4>${escapeHtml(question)}</h4>
      <p class="answer-text">${escapeHtml(response.answer)}</p>
      ${renderStructured(response.structured)}
    </article>`;
  }
  return `
  <article class="answer investigative" data-trace="${response.trace_id}">
    <h4>${escapeHtml(question)}</h4>
    <p class="answer-text">${escapeHtml(response.answer)}</p>
    <details open><summary>Investigation trace (${response.trace.budget_used} steps)</summary>
      ${response.trace.evidence.length ? renderTrace(response.trace) : renderEmptyTrace()}
    </details>
  </article>`;
}

export function renderErrorToast(message: string): string {
  return `<div class="toast error" role="alert">${escapeHtml(message)} <button class="retry">Retry</button></div>`;
}
