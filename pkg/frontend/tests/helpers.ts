/** Shared fixtures and a scriptable in-memory Api double. */

import type { Api } from "../src/api.js";
import type {
  Plan,
  QuizItem,
  SessionSummary,
  SystemReply,
  TopicEntry,
  Transcript,
} from "../src/types.js";

export function samplePlan(overrides: Partial<Plan> = {}): Plan {
  return {
    revision: 0,
    difficulty: 1,
    root: {
      id: "n1",
      title: "Erosion",
      status: "pending",
      children: [
        { id: "n2", title: "Water erosion", status: "pending", children: [] },
        { id: "n3", title: "Wind erosion", status: "pending", children: [] },
      ],
    },
    ...overrides,
  };
}

export function sampleSummary(overrides: Partial<SessionSummary> = {}): SessionSummary {
  return {
    session_id: "s-test",
    topic: "Erosion",
    difficulty: 1,
    variant: "main",
    round: 0,
    phase: "active",
    finish_reason: null,
    plan: samplePlan(),
    ...overrides,
  };
}

export function openingTranscript(): Transcript {
  return {
    session_id: "s-test",
    topic: "Erosion",
    phase: "active",
    finish_reason: null,
    turns: [
      { round: 0, speaker: "system", kind: "teach", text: "Welcome! Let's begin." },
    ],
  };
}

export function sampleQuizItem(overrides: Partial<QuizItem> = {}): QuizItem {
  return {
    objective_id: "n2",
    stem: "What mainly drives water erosion?",
    options: [
      { label: "A", text: "Flowing water" },
      { label: "B", text: "Moonlight" },
    ],
    answer_key: "A",
    source_round: 1,
    ...overrides,
  };
}

export function teachReply(text = "Here is the next lesson."): SystemReply {
  return { kind: "teach", text };
}

export function quizReply(items: QuizItem[] = [sampleQuizItem()]): SystemReply {
  return { kind: "quiz", text: "Quick check!", quiz_items: items };
}

/** Deep-freeze, so any mutation attempt throws under strict mode. */
export function deepFreeze<T>(value: T): T {
  if (value && typeof value === "object") {
    for (const key of Object.keys(value as object)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
    Object.freeze(value);
  }
  return value;
}

export function tick(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export interface Gate<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason?: unknown) => void;
}

export function gate<T>(): Gate<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

type ReplySource = SystemReply | (() => Promise<SystemReply>);

export class FakeApi implements Api {
  topics: TopicEntry[] = [];
  createResult: SessionSummary = sampleSummary();
  createError: unknown = null;
  /** Replies consumed in order by sendMessage; functions defer resolution. */
  replyQueue: ReplySource[] = [];
  plan: Plan = samplePlan();
  transcript: Transcript = openingTranscript();

  readonly sent: string[] = [];
  planCalls = 0;
  transcriptCalls = 0;

  async getTopics(): Promise<TopicEntry[]> {
    return this.topics;
  }

  async createSession(
    topic: string,
    difficulty: number,
    variant = "main",
  ): Promise<SessionSummary> {
    if (this.createError !== null) throw this.createError;
    return { ...this.createResult, topic, difficulty, variant };
  }

  async sendMessage(_sessionId: string, text: string): Promise<SystemReply> {
    this.sent.push(text);
    const next = this.replyQueue.shift();
    if (next === undefined) {
      throw new Error(`FakeApi reply queue is empty (got ${JSON.stringify(text)})`);
    }
    return typeof next === "function" ? next() : next;
  }

  async getPlan(): Promise<Plan> {
    this.planCalls += 1;
    return this.plan;
  }

  async getTranscript(): Promise<Transcript> {
    this.transcriptCalls += 1;
    return this.transcript;
  }
}

/** Build the DOM skeleton the controller expects; returns its elements. */
export function mountElements() {
  document.body.innerHTML = `
    <div id="banners"></div>
    <span id="status"></span>
    <div id="plan"></div>
    <section id="chat"></section>
    <textarea id="composer-input"></textarea>
    <button id="composer-send"></button>
  `;
  return {
    sidebar: document.getElementById("plan") as HTMLElement,
    chat: document.getElementById("chat") as HTMLElement,
    input: document.getElementById("composer-input") as HTMLTextAreaElement,
    send: document.getElementById("composer-send") as HTMLButtonElement,
    banners: document.getElementById("banners") as HTMLElement,
    status: document.getElementById("status") as HTMLElement,
  };
}
