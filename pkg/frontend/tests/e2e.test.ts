/** End-to-end: the real client driving a live scripted session service.
 *
 * Spawns `tutorkit-serve` with completion queues that play one full
 * difficulty-1 arc, then walks a session through the controller exactly as
 * the page would: free text, a quiz form submission, and the round budget.
 * Skipped implicitly if the service CLI is not installed (spawn fails fast).
 */

import { execFileSync, spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TutorApi } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import type { ControllerElements } from "../src/controller.js";
import { mountElements } from "./helpers.js";

// vitest runs with the package root as cwd.
const SCRIPTS_DIR = join(process.cwd(), "scripts");

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("could not allocate a port"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitForServer(base: string, stderrTail: () => string): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const response = await fetch(`${base}/topics`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service never came up; stderr so far:\n${stderrTail()}`);
}

describe("live service", () => {
  let base = "";
  let server: ChildProcess | null = null;
  let dataDir = "";
  let stderr = "";
  let els: ControllerElements;
  let controller: SessionController;
  let api: TutorApi;

  beforeAll(async () => {
    const port = await freePort();
    base = `http://127.0.0.1:${port}`;
    dataDir = mkdtempSync(join(tmpdir(), "tutor-e2e-"));
    const configPath = join(dataDir, "service.json");
    execFileSync("python3", [
      join(SCRIPTS_DIR, "write_e2e_config.py"),
      String(port),
      join(dataDir, "data"),
      configPath,
    ]);
    server = spawn("tutorkit-serve", ["--config", configPath], {
      stdio: ["ignore", "ignore", "pipe"],
    });
    server.stderr!.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
    });
    await waitForServer(base, () => stderr);

    els = mountElements();
    api = new TutorApi(base);
    controller = new SessionController(api, els);
  });

  afterAll(() => {
    server?.kill("SIGTERM");
    if (dataDir) rmSync(dataDir, { recursive: true, force: true });
  });

  function type(text: string): void {
    els.input.value = text;
    els.input.dispatchEvent(new Event("input", { bubbles: true }));
  }

  async function sendText(text: string): Promise<void> {
    type(text);
    await controller.send();
  }

  it("starts a course: opening turn, plan rendered, nothing highlighted", async () => {
    expect(await controller.startCourse("Erosion", 1)).toBe(true);
    expect(els.chat.querySelectorAll(".turn")).toHaveLength(1);
    expect(els.chat.querySelector(".turn.system")).not.toBeNull();
    expect(els.sidebar.querySelectorAll(".plan-node").length).toBeGreaterThan(1);
    expect(els.sidebar.querySelectorAll(".plan-node.completed")).toHaveLength(0);
    expect(els.input.disabled).toBe(false);
  });

  it("styles a completed objective after its completion round", async () => {
    await sendText("Tell me about erosion.");
    const done = els.sidebar.querySelectorAll<HTMLElement>(".plan-node.completed");
    expect(done.length).toBeGreaterThan(0);
    // The styling reflects served state, not a client-side flip.
    const plan = await api.getPlan(controller.session!);
    const served = new Set<string>();
    const walk = (node: typeof plan.root) => {
      if (node.status === "completed") served.add(node.id);
      node.children.forEach(walk);
    };
    walk(plan.root);
    expect(new Set([...done].map((el) => el.dataset.nodeId))).toEqual(served);
  });

  it("renders a quiz as a form whose submission posts the chosen labels", async () => {
    await sendText("Quiz me on that.");
    const form = els.chat.querySelector<HTMLFormElement>("form.quiz-form");
    expect(form).not.toBeNull();
    expect(controller.isAwaitingQuizAnswer).toBe(true);
    expect(els.input.disabled).toBe(true);

    // Answer every question with its first option and submit.
    for (const fieldset of form!.querySelectorAll("fieldset")) {
      const first = fieldset.querySelector<HTMLInputElement>('input[type="radio"]')!;
      first.checked = true;
      first.dispatchEvent(new Event("change", { bubbles: true }));
    }
    form!.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    // The submission runs through the same async send path; wait it out.
    for (let i = 0; i < 200 && controller.isAwaitingQuizAnswer; i++) {
      await new Promise((resolve) => setTimeout(resolve, 25));
    }
    expect(controller.isAwaitingQuizAnswer).toBe(false);

    const transcript = await api.getTranscript(controller.session!);
    const learnerTurns = transcript.turns.filter((t) => t.speaker === "learner");
    const answerTurn = learnerTurns[learnerTurns.length - 1]!;
    expect(answerTurn.text).toMatch(/^1: [A-Z](, 2: [A-Z])?$/);
    const evaluation = els.chat.querySelector('[data-kind="evaluation"]');
    expect(evaluation).not.toBeNull();
  });

  it("locks input while a reply is in flight and after finalization", async () => {
    // Rounds so far: 1 teach, 2 quiz, 3 evaluation. Drive to the budget of 10.
    for (let round = 4; round <= 9; round++) {
      await sendText(`More about erosion, please (${round}).`);
      expect(els.input.disabled).toBe(false);
    }

    type("Last question: how do we stop it?");
    const delivery = controller.send();
    // Synchronously after send(): locked until the reply lands.
    expect(controller.isInFlight).toBe(true);
    expect(els.input.disabled).toBe(true);
    expect(els.send.disabled).toBe(true);
    await delivery;

    // Round 10 was the budget: the session is finished and stays locked.
    expect(controller.isFinished).toBe(true);
    expect(els.input.disabled).toBe(true);
    expect(els.send.disabled).toBe(true);
    expect(els.input.placeholder).toContain("finished");
    expect(els.status.textContent).toContain("round budget reached");
    const turns = [...els.chat.querySelectorAll<HTMLElement>(".turn")];
    expect(turns[turns.length - 1]!.querySelector(".final-badge")).not.toBeNull();

    const transcript = await api.getTranscript(controller.session!);
    expect(transcript.phase).toBe("finished");
    expect(transcript.finish_reason).toBe("max_rounds_reached");
  });
});
