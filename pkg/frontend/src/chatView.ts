/** Chat panel rendering: turn bubbles, quiz forms, judgments, typing indicator. */

import type { ChatTurn, Judgment, QuizItem } from "./types.js";

export type QuizSubmitHandler = (message: string) => void;

/** "1: A, 2: C" — the message a submitted quiz form posts back to the tutor. */
export function formatQuizAnswer(
  choices: ReadonlyArray<readonly [number, string]>,
): string {
  return choices.map(([question, label]) => `${question}: ${label}`).join(", ");
}

/** Append one turn to the chat list; returns the created element. */
export function appendTurn(
  list: HTMLElement,
  turn: ChatTurn,
  onQuizSubmit?: QuizSubmitHandler,
): HTMLElement {
  const doc = list.ownerDocument;
  const entry = doc.createElement("article");
  entry.className = `turn ${turn.speaker}`;
  if (turn.kind) entry.dataset.kind = turn.kind;

  if (turn.final) {
    const badge = doc.createElement("span");
    badge.className = "final-badge";
    badge.textContent = "final quiz";
    entry.appendChild(badge);
  }

  const text = doc.createElement("p");
  text.className = "turn-text";
  text.textContent = turn.text;
  entry.appendChild(text);

  if (turn.kind === "quiz" && turn.quizItems && turn.quizItems.length > 0) {
    entry.appendChild(buildQuizForm(doc, turn.quizItems, onQuizSubmit));
  }
  if (turn.kind === "evaluation" && turn.judgments && turn.judgments.length > 0) {
    entry.appendChild(buildJudgmentList(doc, turn.judgments));
  }

  list.appendChild(entry);
  list.scrollTop = list.scrollHeight;
  return entry;
}

function buildQuizForm(
  doc: Document,
  items: QuizItem[],
  onSubmit?: QuizSubmitHandler,
): HTMLFormElement {
  const form = doc.createElement("form");
  form.className = "quiz-form";

  items.forEach((item, index) => {
    const number = index + 1;
    const fieldset = doc.createElement("fieldset");
    fieldset.className = "quiz-question";
    const legend = doc.createElement("legend");
    legend.textContent = `${number}. ${item.stem}`;
    fieldset.appendChild(legend);
    for (const option of item.options) {
      const label = doc.createElement("label");
      label.className = "quiz-option";
      const input = doc.createElement("input");
      input.type = "radio";
      input.name = `question-${number}`;
      input.setAttribute("value", option.label);
      label.appendChild(input);
      label.appendChild(doc.createTextNode(` ${option.label}. ${option.text}`));
      fieldset.appendChild(label);
    }
    form.appendChild(fieldset);
  });

  const submit = doc.createElement("button");
  submit.type = "submit";
  submit.className = "quiz-submit";
  submit.textContent = "Submit answers";
  submit.disabled = true;
  form.appendChild(submit);

  const pickedFor = (number: number): HTMLInputElement | null => {
    const group = form.querySelectorAll<HTMLInputElement>(
      `input[name="question-${number}"]`,
    );
    for (const input of group) {
      if (input.checked) return input;
    }
    return null;
  };
  const allAnswered = () =>
    items.every((_, index) => pickedFor(index + 1) !== null);

  form.addEventListener("change", () => {
    submit.disabled = !allAnswered();
  });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!allAnswered() || form.classList.contains("submitted")) return;
    const choices = items.map((_, index): [number, string] => {
      const number = index + 1;
      return [number, pickedFor(number)!.value];
    });
    form.classList.add("submitted");
    for (const control of form.querySelectorAll<HTMLInputElement | HTMLButtonElement>(
      "input, button",
    )) {
      control.disabled = true;
    }
    onSubmit?.(formatQuizAnswer(choices));
  });
  return form;
}

function buildJudgmentList(doc: Document, judgments: Judgment[]): HTMLElement {
  const list = doc.createElement("ul");
  list.className = "judgments";
  for (const judgment of judgments) {
    const item = doc.createElement("li");
    item.className = `judgment ${judgment.correct ? "correct" : "incorrect"}`;
    const mark = judgment.correct ? "✓" : "✗";
    const chosen = judgment.chosen === null ? "no answer" : `chose ${judgment.chosen}`;
    item.textContent = `${mark} Q${judgment.question} (${chosen}): ${judgment.feedback}`;
    list.appendChild(item);
  }
  return list;
}

export function showTyping(list: HTMLElement): void {
  if (list.querySelector(".typing-indicator")) return;
  const doc = list.ownerDocument;
  const el = doc.createElement("div");
  el.className = "typing-indicator";
  el.setAttribute("role", "status");
  el.textContent = "tutor is typing…";
  list.appendChild(el);
  list.scrollTop = list.scrollHeight;
}

export function hideTyping(list: HTMLElement): void {
  list.querySelector(".typing-indicator")?.remove();
}
