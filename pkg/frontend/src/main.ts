/**
 * Browser bootstrap: wires the pure views and controller to the DOM.
 */

import { WareflowClient } from "./api.js";
import { ConsoleController, ValidationFailed } from "./controller.js";
import { DEFAULT_FORM, validateForm, type ScenarioFormState } from "./validate.js";
import { renderAnswer, renderErrorToast, renderRunStatus, renderScenarioForm } from "./views.js";

const SUPPLIERS = ["AuroraFarms", "BlackSheepDist", "CamelCargo", "DeltaDrops", "EvergreenEdge"];
const FORKLIFTS = ["FL_00", "FL_01", "FL_02", "FL_03", "FL_04"];

const controller = new ConsoleController(new WareflowClient(""));
let form: ScenarioFormState = { ...DEFAULT_FORM };

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

function readForm(root: HTMLElement): ScenarioFormState {
  const value = (name: string): string => {
    const input = root.querySelector<HTMLInputElement | HTMLSelectElement>(`[name="${name}"]`);
    return input ? input.value : "";
  };
  const checked = (name: string): boolean => {
    const input = root.querySelector<HTMLInputElement>(`[name="${name}"]`);
    return input ? input.checked : false;
  };
  return {
    kind: (value("kind") || "none") as ScenarioFormState["kind"],
    supplierId: value("supplierId") || form.supplierId,
    stage: value("stage") || form.stage,
    multiplier: value("multiplier") || form.multiplier,
    forkliftId: value("forkliftId") || form.forkliftId,
    slowdownFactor: value("slowdownFactor") || form.slowdownFactor,
    handlingMultiplier: value("handlingMultiplier") || form.handlingMultiplier,
    misallocation: checked("misallocation"),
    seed: value("seed") || form.seed,
  };
}

function paintForm(issues = validateForm(form)): void {
  byId("scenario-panel").innerHTML = renderScenarioForm(form, SUPPLIERS, FORKLIFTS, issues);
  const root = byId("scenario-panel");
  root.querySelector("select[name=kind]")?.addEventListener("change", () => {
    form = readForm(root);
    paintForm([]);
  });
  root.querySelector("#scenario-form")?.addEventListener("submit", (event) => {
    event.preventDefault();
    form = readForm(root);
    void launch();
  });
}

function paintStatus(packages?: number): void {
  byId("run-panel").innerHTML = renderRunStatus(controller.session.runId, controller.session.runStatus, packages);
  const input = byId("question") as HTMLInputElement;
  input.disabled = !controller.session.canAsk;
  input.placeholder = controller.session.canAsk
    ? "Ask about the run, e.g. Which AGV was the least utilized?"
    : "Launch a run first";
}

function toast(message: string): void {
  byId("toasts").innerHTML = renderErrorToast(message);
  byId("toasts").querySelector(".retry")?.addEventListener("click", () => {
    byId("toasts").innerHTML = "";
  });
}

async function launch(): Promise<void> {
  const issues = validateForm(form);
  if (issues.length) {
    paintForm(issues);
    return;
  }
  paintForm([]);
  try {
    paintStatus();
    await controller.launchRun(form);
    paintStatus();
  } catch (error) {
    if (error instanceof ValidationFailed) {
      paintForm(error.issues);
    } else {
      toast(error instanceof Error ? error.message : String(error));
    }
  }
}

async function askCurrent(): Promise<void> {
  const input = byId("question") as HTMLInputElement;
  const question = input.value.trim();
  if (!question) return;
  try {
    const response = await controller.ask(question);
    const holder = document.createElement("div");
    holder.innerHTML = renderAnswer(question, response);
    byId("conversation").prepend(holder);
    holder.querySelectorAll(".copy-query").forEach((button) => {
      button.addEventListener("click", () => {
        const step = Number((button as HTMLElement).dataset.step ?? 0);
        const trace = response.class === "investigative" ? response.trace : null;
        const query = trace?.evidence[step]?.query_text ?? "";
        void navigator.clipboard.writeText(query);
      });
    });
    input.value = "";
  } catch (error) {
    toast(error instanceof Error ? error.message : String(error));
  }
}

document.addEventListener("DOMContentLoaded", () => {
  paintForm([]);
  paintStatus();
  byId("ask-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void askCurrent();
  });
});
