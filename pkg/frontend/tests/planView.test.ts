import { beforeEach, describe, expect, it } from "vitest";

import { renderPlan } from "../src/planView.js";
import type { Plan, PlanNode } from "../src/types.js";
import { deepFreeze, samplePlan } from "./helpers.js";

function tenNodePlan(): Plan {
  // Pre-order: r, a, a1, a2, b, b1, b2, b3, c, c1 — three of them completed.
  const node = (
    id: string,
    title: string,
    status: "pending" | "completed",
    children: PlanNode[] = [],
  ): PlanNode => ({ id, title, status, children });
  return {
    revision: 3,
    difficulty: 2,
    root: node("r", "Erosion", "pending", [
      node("a", "Water", "completed", [
        node("a1", "Rivers", "completed", []),
        node("a2", "Rain", "completed", []),
      ]),
      node("b", "Wind", "pending", [
        node("b1", "Dunes", "pending", []),
        node("b2", "Dust", "pending", []),
        node("b3", "Abrasion", "pending", []),
      ]),
      node("c", "Ice", "pending", [node("c1", "Glaciers", "pending", [])]),
    ]),
  };
}

describe("renderPlan", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="plan"></div>';
    container = document.getElementById("plan") as HTMLElement;
  });

  it("renders nodes in pre-order with depth classes", () => {
    renderPlan(container, tenNodePlan());
    const items = [...container.querySelectorAll(".plan-node")];
    expect(items.map((el) => el.querySelector(".plan-title")!.textContent)).toEqual([
      "Erosion", "Water", "Rivers", "Rain", "Wind", "Dunes", "Dust", "Abrasion",
      "Ice", "Glaciers",
    ]);
    expect(items.map((el) => el.classList.contains("depth-1"))).toEqual([
      true, false, false, false, false, false, false, false, false, false,
    ]);
    expect(items[1]!.classList.contains("depth-2")).toBe(true);
    expect(items[2]!.classList.contains("depth-3")).toBe(true);
  });

  it("styles exactly the completed nodes", () => {
    renderPlan(container, tenNodePlan());
    const done = [...container.querySelectorAll(".plan-node.completed")];
    expect(done.map((el) => (el as HTMLElement).dataset.nodeId)).toEqual([
      "a", "a1", "a2",
    ]);
  });

  it("handles a flat single-level plan", () => {
    const plan = samplePlan();
    plan.root.children = [];
    renderPlan(container, plan);
    const items = [...container.querySelectorAll(".plan-node")];
    expect(items).toHaveLength(1);
    expect(items[0]!.classList.contains("depth-1")).toBe(true);
  });

  it("re-rendering replaces the previous tree", () => {
    renderPlan(container, tenNodePlan());
    renderPlan(container, samplePlan());
    expect(container.querySelectorAll(".plan-tree")).toHaveLength(1);
    expect(container.querySelectorAll(".plan-node")).toHaveLength(3);
  });

  it("never mutates the plan data", () => {
    const plan = deepFreeze(tenNodePlan());
    renderPlan(container, plan);
    const item = container.querySelector('[data-node-id="b"]') as HTMLElement;
    expect(item.dataset.status).toBe("pending");
    expect(plan.root.children[1]!.status).toBe("pending");
  });

  it("shows a reload prompt for a missing plan", () => {
    renderPlan(container, null);
    expect(container.querySelector(".plan-error")!.textContent).toContain("Reload");
    expect(container.querySelectorAll(".plan-node")).toHaveLength(0);
  });

  it.each([
    ["empty title", (p: Plan) => { p.root.children[0]!.title = "   "; }],
    ["bad status", (p: Plan) => { (p.root as { status: string }).status = "done"; }],
    ["missing children", (p: Plan) => {
      (p.root.children[0] as { children: unknown }).children = undefined;
    }],
  ])("shows a reload prompt for a malformed tree (%s)", (_name, damage) => {
    const plan = samplePlan();
    damage(plan);
    renderPlan(container, plan);
    expect(container.querySelector(".plan-error")).not.toBeNull();
    expect(container.querySelectorAll(".plan-node")).toHaveLength(0);
  });

  it("rejects trees deeper than three layers", () => {
    const plan = samplePlan();
    plan.root.children[0]!.children = [
      {
        id: "deep",
        title: "Too deep",
        status: "pending",
        children: [{ id: "deeper", title: "Way down", status: "pending", children: [] }],
      },
    ];
    renderPlan(container, plan);
    expect(container.querySelector(".plan-error")).not.toBeNull();
  });

  describe("blind mode", () => {
    it("is off by default", () => {
      renderPlan(container, samplePlan());
      expect(container.querySelectorAll(".plan-node.completed")).toHaveLength(0);
    });

    it("styles the first pending node as completed without touching data", () => {
      const plan = deepFreeze(tenNodePlan());
      renderPlan(container, plan, { blindNextObjective: true });
      const done = [...container.querySelectorAll(".plan-node.completed")] as HTMLElement[];
      // r is the first pending node in pre-order; a, a1, a2 are truly done.
      expect(done.map((el) => el.dataset.nodeId)).toEqual(["r", "a", "a1", "a2"]);
      const blinded = container.querySelector('[data-node-id="r"]') as HTMLElement;
      expect(blinded.dataset.status).toBe("pending");
    });

    it("adds nothing when every node is completed", () => {
      const plan = samplePlan();
      plan.root.status = "completed";
      for (const child of plan.root.children) child.status = "completed";
      renderPlan(container, plan, { blindNextObjective: true });
      expect(container.querySelectorAll(".plan-node.completed")).toHaveLength(3);
    });
  });
});
