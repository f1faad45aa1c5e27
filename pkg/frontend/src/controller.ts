/** Session controller: owns the UI state machine around one tutoring session.
 *
 * Input locking rules:
 *  - at most one message in flight; the composer is disabled while waiting;
 *  - a pending quiz locks free text until its form has been submitted once;
 *  - a finished session locks the composer for good, with a notice.
 *
 * After every reply the sidebar is re-rendered from a fresh plan fetch — the
 * controller never flips a node status itself.
 */

import { ApiError } from "./api.js";
import type { Api } from "./api.js";
import { appendTurn, hideTyping, showTyping } from "./chatView.js";
import { renderPlan } from "./planView.js";
import type { Transcript, TranscriptTurn } from "./types.js";

export interface ControllerElements {
  /** Plan sidebar container. */
  sidebar: HTMLElement;
  /** Chat turn list. */
  chat: HTMLElement;
  /** Free-text composer input. */
  input: HTMLTextAreaElement | HTMLInputElement;
  /** Composer send button. */
  send: HTMLButtonElement;
  /** Error banner stack. */
  banners: HTMLElement;
  /** One-line session status. */
  status: HTMLElement;
}

export interface ControllerOptions {
  /** Style the next pending objective as completed (visual only, default off). */
  blindNextObjective?: boolean;
  variant?: string;
}

const REASON_TEXT: Record<string, string> = {
  all_objectives_completed: "all objectives completed",
  max_rounds_reached: "round budget reached",
};

function describeReason(reason: string | null): string {
  if (!reason) return "finished";
  return REASON_TEXT[reason] ?? reason;
}

export class SessionController {
  private sessionId: string | null = null;
  private inFlight = false;
  private finished = false;
  private awaitingQuiz = false;
  private renderedTurns = 0;
  private topic = "";

  constructor(
    private readonly api: Api,
    private readonly els: ControllerElements,
    private readonly options: ControllerOptions = {},
  ) {
    this.els.input.addEventListener("input", () => this.syncControls());
    this.syncControls();
  }

  get session(): string | null {
    return this.sessionId;
  }

  get isInFlight(): boolean {
    return this.inFlight;
  }

  get isFinished(): boolean {
    return this.finished;
  }

  get isAwaitingQuizAnswer(): boolean {
    return this.awaitingQuiz;
  }

  /** Create a session and show its opening state. Returns false on failure. */
  async startCourse(topic: string, difficulty: number): Promise<boolean> {
    if (this.inFlight || this.sessionId !== null) return false;
    this.inFlight = true;
    this.syncControls();
    try {
      const summary = await this.api.createSession(
        topic,
        difficulty,
        this.options.variant ?? "main",
      );
      this.sessionId = summary.session_id;
      this.topic = summary.topic;
      this.finished = summary.phase === "finished";
      renderPlan(this.els.sidebar, summary.plan, this.planOptions());
      const transcript = await this.api.getTranscript(summary.session_id);
      this.appendTranscriptTail(transcript);
      this.setStatus(`${summary.topic} · difficulty ${summary.difficulty}`);
      return true;
    } catch (err) {
      this.sessionId = null;
      this.showError(err);
      return false;
    } finally {
      this.inFlight = false;
      this.syncControls();
    }
  }

  /** Send the composer's text, if sending is currently allowed. */
  async send(): Promise<void> {
    const text = this.els.input.value.trim();
    if (text === "" || !this.canSendFreeText()) return;
    this.els.input.value = "";
    await this.deliver(text, false);
  }

  private canSendFreeText(): boolean {
    return (
      this.sessionId !== null &&
      !this.inFlight &&
      !this.finished &&
      !this.awaitingQuiz
    );
  }

  private async deliver(text: string, fromQuiz: boolean): Promise<void> {
    if (this.sessionId === null || this.inFlight || this.finished) return;
    if (this.awaitingQuiz && !fromQuiz) return;
    this.inFlight = true;
    this.syncControls();

    const learnerTurn = appendTurn(this.els.chat, {
      speaker: "learner",
      text,
      timestamp: Date.now(),
    });
    this.renderedTurns += 1;
    showTyping(this.els.chat);

    try {
      const reply = await this.api.sendMessage(this.sessionId, text);
      hideTyping(this.els.chat);
      if (fromQuiz) this.awaitingQuiz = false;
      if (reply.kind === "quiz" && reply.quiz_items && reply.quiz_items.length > 0) {
        this.awaitingQuiz = true;
      }
      appendTurn(
        this.els.chat,
        {
          speaker: "system",
          text: reply.text,
          kind: reply.kind,
          timestamp: Date.now(),
          quizItems: reply.quiz_items,
          judgments: reply.judgments,
        },
        (answer) => {
          void this.deliver(answer, true);
        },
      );
      this.renderedTurns += 1;
      await this.refreshAfterReply();
    } catch (err) {
      hideTyping(this.els.chat);
      // The round never committed; take the optimistic learner turn back.
      learnerTurn.remove();
      this.renderedTurns -= 1;
      if (fromQuiz) this.awaitingQuiz = false;
      if (err instanceof ApiError && err.code === "session_finished") {
        this.finished = true;
        this.setStatus("Course finished");
      }
      this.showError(err);
    } finally {
      this.inFlight = false;
      this.syncControls();
    }
  }

  private async refreshAfterReply(): Promise<void> {
    if (this.sessionId === null) return;
    try {
      const plan = await this.api.getPlan(this.sessionId);
      renderPlan(this.els.sidebar, plan, this.planOptions());
    } catch (err) {
      this.showError(err);
    }
    try {
      const transcript = await this.api.getTranscript(this.sessionId);
      this.appendTranscriptTail(transcript);
      if (transcript.phase === "finished") {
        this.finished = true;
        this.setStatus(
          `Course finished — ${describeReason(transcript.finish_reason)}`,
        );
      } else {
        this.setStatus(`${this.topic} · round ${lastRound(transcript)}`);
      }
    } catch (err) {
      this.showError(err);
    }
  }

  /** Append transcript turns the chat has not rendered yet (e.g. final quiz). */
  private appendTranscriptTail(transcript: Transcript): void {
    const pending = transcript.turns.slice(this.renderedTurns);
    for (const turn of pending) {
      appendTurn(this.els.chat, toChatTurn(turn));
      this.renderedTurns += 1;
    }
  }

  showError(err: unknown): void {
    const message =
      err instanceof ApiError ? `${err.message} (${err.code})` : String(err);
    const doc = this.els.banners.ownerDocument;
    const banner = doc.createElement("div");
    banner.className = "banner error";
    banner.setAttribute("role", "alert");
    const text = doc.createElement("span");
    text.className = "banner-text";
    text.textContent = message;
    const dismiss = doc.createElement("button");
    dismiss.type = "button";
    dismiss.className = "banner-dismiss";
    dismiss.textContent = "Dismiss";
    dismiss.addEventListener("click", () => banner.remove());
    banner.appendChild(text);
    banner.appendChild(dismiss);
    this.els.banners.appendChild(banner);
  }

  private planOptions() {
    return { blindNextObjective: this.options.blindNextObjective === true };
  }

  private setStatus(text: string): void {
    this.els.status.textContent = text;
  }

  private syncControls(): void {
    const canType =
      this.sessionId !== null &&
      !this.finished &&
      !this.inFlight &&
      !this.awaitingQuiz;
    this.els.input.disabled = !canType;
    this.els.send.disabled = !canType || this.els.input.value.trim() === "";
    if (this.finished) {
      this.els.input.placeholder = "This course is finished.";
    } else if (this.awaitingQuiz) {
      this.els.input.placeholder = "Answer the quiz above to continue.";
    } else if (this.inFlight) {
      this.els.input.placeholder = "Waiting for the tutor…";
    } else {
      this.els.input.placeholder = "Type your message…";
    }
  }
}

function toChatTurn(turn: TranscriptTurn) {
  return {
    speaker: turn.speaker,
    text: turn.text,
    kind: turn.kind,
    final: turn.final,
    timestamp: Date.now(),
  };
}

function lastRound(transcript: Transcript): number {
  let last = 0;
  for (const turn of transcript.turns) {
    if (turn.round > last) last = turn.round;
  }
  return last;
}
