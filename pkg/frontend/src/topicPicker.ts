/** Course launcher: a topic selector grouped by category, plus difficulty. */

import type { TopicEntry } from "./types.js";

export interface TopicSelection {
  topic: string;
  difficulty: number;
}

export function renderTopicPicker(
  container: HTMLElement,
  topics: TopicEntry[],
  onStart: (selection: TopicSelection) => void,
): void {
  const doc = container.ownerDocument;
  container.textContent = "";

  const form = doc.createElement("form");
  form.className = "topic-picker";

  const topicSelect = doc.createElement("select");
  topicSelect.className = "topic-select";
  const groups = new Map<string, HTMLOptGroupElement>();
  for (const entry of topics) {
    let group = groups.get(entry.category);
    if (!group) {
      group = doc.createElement("optgroup");
      group.label = entry.category;
      groups.set(entry.category, group);
      topicSelect.appendChild(group);
    }
    const option = doc.createElement("option");
    option.value = entry.objective;
    option.textContent = entry.objective;
    option.dataset.difficulty = String(entry.difficulty);
    group.appendChild(option);
  }

  const difficultySelect = doc.createElement("select");
  difficultySelect.className = "difficulty-select";
  for (let level = 1; level <= 5; level++) {
    const option = doc.createElement("option");
    option.value = String(level);
    option.textContent = `difficulty ${level}`;
    difficultySelect.appendChild(option);
  }

  // Picking a topic pre-selects its catalog difficulty; still overridable.
  const syncDifficulty = () => {
    const selected = topicSelect.selectedOptions[0];
    if (selected?.dataset.difficulty) {
      difficultySelect.value = selected.dataset.difficulty;
    }
  };
  topicSelect.addEventListener("change", syncDifficulty);
  syncDifficulty();

  const start = doc.createElement("button");
  start.type = "submit";
  start.className = "start-button";
  start.textContent = "Start course";
  start.disabled = topics.length === 0;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const topic = topicSelect.value;
    if (!topic) return;
    onStart({ topic, difficulty: Number(difficultySelect.value) });
  });

  form.appendChild(topicSelect);
  form.appendChild(difficultySelect);
  form.appendChild(start);
  container.appendChild(form);
}
