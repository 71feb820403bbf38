/**
 * Conversation state for one console session. Client-side only; traces
 * persisted by the server are the durable record.
 */

import type { AskResponse } from "./api.js";

export interface ConversationEntry {
  question: string;
  answer: string;
  kind: "operational" | "investigative";
  traceId: string | null;
  response: AskResponse;
}

export class ConsoleSession {
  runId: string | null = null;
  runStatus: string | null = null;
  conversation: ConversationEntry[] = [];

  selectRun(runId: string, status: string): void {
    this.runId = runId;
    this.runStatus = status;
    this.conversation = [];
  }

  updateStatus(status: string): void {
    this.runStatus = status;
  }

  get canAsk(): boolean {
    return this.runId !== null && this.runStatus === "graphed";
  }

  record(question: string, response: AskResponse): ConversationEntry {
    const entry: ConversationEntry = {
      question,
      answer: response.answer,
      kind: response.class,
      traceId: response.class === "investigative" ? response.trace_id : null,
      response,
    };
    this.conversation.push(entry);
    return entry;
  }
}
