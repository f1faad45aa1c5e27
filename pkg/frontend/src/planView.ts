/** Sidebar rendering of the course plan: an indented pre-order outline.
 *
 * The view is a pure projection of the last plan fetched from the service —
 * it never changes a node's status on its own. The one deliberate visual lie
 * is the opt-in blind mode, which paints the next pending objective in the
 * completed style while leaving the underlying data untouched.
 */

import type { Plan, PlanNode } from "./types.js";

export const MAX_PLAN_DEPTH = 3;

export interface PlanRenderOptions {
  /** Paint the next pending objective as if completed (style only). */
  blindNextObjective?: boolean;
}

interface FlatNode {
  node: PlanNode;
  depth: number;
}

function checkNode(node: PlanNode): void {
  if (typeof node.id !== "string" || node.id === "") {
    throw new Error("plan node without an id");
  }
  if (typeof node.title !== "string" || node.title.trim() === "") {
    throw new Error("plan node without a title");
  }
  if (node.status !== "pending" && node.status !== "completed") {
    throw new Error(`unknown plan node status: ${String(node.status)}`);
  }
  if (!Array.isArray(node.children)) {
    throw new Error("plan node children must be an array");
  }
}

/** Pre-order flatten with depth tracking; throws on structural damage. */
function flatten(root: PlanNode): FlatNode[] {
  const out: FlatNode[] = [];
  const stack: FlatNode[] = [{ node: root, depth: 1 }];
  while (stack.length > 0) {
    const entry = stack.pop()!;
    if (entry.depth > MAX_PLAN_DEPTH) {
      throw new Error(`plan deeper than ${MAX_PLAN_DEPTH} layers`);
    }
    checkNode(entry.node);
    out.push(entry);
    const children = entry.node.children;
    for (let i = children.length - 1; i >= 0; i--) {
      stack.push({ node: children[i]!, depth: entry.depth + 1 });
    }
  }
  return out;
}

/** Replace the container's content with the rendered plan (or a reload prompt). */
export function renderPlan(
  container: HTMLElement,
  plan: Plan | null | undefined,
  options: PlanRenderOptions = {},
): void {
  const doc = container.ownerDocument;
  container.textContent = "";

  let flat: FlatNode[];
  try {
    if (!plan || !plan.root) throw new Error("no plan payload");
    flat = flatten(plan.root);
  } catch {
    const prompt = doc.createElement("div");
    prompt.className = "plan-error";
    prompt.textContent =
      "The course plan could not be displayed. Reload the page to fetch it again.";
    container.appendChild(prompt);
    return;
  }

  const blindTarget = options.blindNextObjective
    ? flat.find((entry) => entry.node.status === "pending")?.node.id
    : undefined;

  const list = doc.createElement("ul");
  list.className = "plan-tree";
  for (const { node, depth } of flat) {
    const item = doc.createElement("li");
    const styledDone = node.status === "completed" || node.id === blindTarget;
    item.className = `plan-node depth-${depth}${styledDone ? " completed" : ""}`;
    item.dataset.nodeId = node.id;
    item.dataset.status = node.status;
    const title = doc.createElement("span");
    title.className = "plan-title";
    title.textContent = node.title;
    item.appendChild(title);
    list.appendChild(item);
  }
  container.appendChild(list);
}
