// Linked proof visualization: the search tree colored by status on one
// side, the prose proof on the other. Clicking a prose block highlights
// its tree node; clicking a tree node highlights and reveals the prose
// block. Situation and application nodes differ by shape, never by
// color: color is reserved for status.

import { NodeStatus, ProseBlock, ProseDocument, TreeNode, TreeView } from "./types.js";

export const STATUS_COLOR: Record<string, string> = {
  success: "green",
  failed: "red",
  pending: "blue",
};

export interface ProofViewHandlers {
  onSimplify?: () => void;
  onInterrupt?: () => void;
}

export function renderProofView(
  container: HTMLElement,
  tree: TreeView,
  prose: ProseDocument | null,
  handlers: ProofViewHandlers = {},
): void {
  container.innerHTML = "";
  container.classList.add("proof-view");

  const actions = document.createElement("div");
  actions.className = "actions";
  const simplify = document.createElement("button");
  simplify.type = "button";
  simplify.className = "simplify-button";
  simplify.textContent = "Simplify";
  simplify.addEventListener("click", () => handlers.onSimplify?.());
  actions.appendChild(simplify);
  if (handlers.onInterrupt) {
    const interrupt = document.createElement("button");
    interrupt.type = "button";
    interrupt.className = "interrupt-button";
    interrupt.textContent = "Interrupt";
    interrupt.addEventListener("click", () => handlers.onInterrupt?.());
    actions.appendChild(interrupt);
  }

  const panes = document.createElement("div");
  panes.className = "panes";
  const treePane = document.createElement("div");
  treePane.className = "tree-pane";
  treePane.appendChild(renderTree(container, tree));
  const prosePane = document.createElement("div");
  prosePane.className = "prose-pane";
  if (prose) {
    prosePane.appendChild(renderProse(container, prose));
  } else {
    const empty = document.createElement("p");
    empty.className = "no-prose";
    empty.textContent = "No prose proof: the proof is not (yet) successful.";
    prosePane.appendChild(empty);
  }
  panes.append(treePane, prosePane);
  container.append(actions, panes);
}

function byId(tree: TreeView): Map<number, TreeNode> {
  return new Map(tree.nodes.map((node) => [node.id, node]));
}

function renderTree(root: HTMLElement, tree: TreeView): HTMLElement {
  const nodes = byId(tree);

  const render = (id: number): HTMLElement => {
    const node = nodes.get(id);
    if (!node) throw new Error(`tree view references unknown node ${id}`);
    const wrapper = document.createElement("div");
    wrapper.className = "tree-branch";
    const element = document.createElement("div");
    element.className =
      `tree-node ${node.kind} status-${node.status} color-${STATUS_COLOR[node.status] ?? "blue"}`;
    element.dataset.nodeId = String(node.id);
    if (node.rule_display_name) {
      element.title = node.rule_display_name; // rule name as tooltip
      element.textContent = node.rule_display_name;
    } else {
      element.textContent = `#${node.id}`;
    }
    element.addEventListener("click", () => highlightNode(root, node.id, "prose"));
    wrapper.appendChild(element);
    if (node.children.length > 0) {
      const children = document.createElement("div");
      children.className = "tree-children";
      for (const child of node.children) {
        children.appendChild(render(child));
      }
      wrapper.appendChild(children);
    }
    return wrapper;
  };

  const pane = document.createElement("div");
  pane.className = "tree-root";
  pane.appendChild(render(tree.root));
  return pane;
}

function renderProse(root: HTMLElement, prose: ProseDocument): HTMLElement {
  const pane = document.createElement("div");
  pane.className = "prose-root";
  const goal = document.createElement("p");
  goal.className = "prose-goal";
  goal.textContent = `Theorem: ${prose.goal}.`;
  pane.appendChild(goal);
  if (prose.knowledge.length > 0) {
    const knowledge = document.createElement("ul");
    knowledge.className = "prose-knowledge";
    for (const entry of prose.knowledge) {
      const item = document.createElement("li");
      item.textContent = `(${entry.label}) ${entry.formula}`;
      knowledge.appendChild(item);
    }
    pane.appendChild(knowledge);
  }
  for (const block of prose.blocks) {
    pane.appendChild(renderBlock(root, block));
  }
  return pane;
}

function renderBlock(root: HTMLElement, block: ProseBlock): HTMLElement {
  const element = document.createElement("div");
  element.className = "prose-block";
  element.dataset.nodeId = String(block.situation_id);
  const sentence = document.createElement("p");
  sentence.className = "prose-text";
  sentence.dataset.nodeId = String(block.application_id);
  sentence.textContent = block.title ? `${block.title}: ${block.text}` : block.text;
  sentence.addEventListener("click", (event) => {
    event.stopPropagation();
    highlightNode(root, block.application_id, "tree");
  });
  element.addEventListener("click", (event) => {
    event.stopPropagation();
    highlightNode(root, block.situation_id, "tree");
  });
  element.appendChild(sentence);
  for (const child of block.children) {
    element.appendChild(renderBlock(root, child));
  }
  return element;
}

// Click navigation: highlight the counterpart of a node id in the other
// pane (an indicator class any stylesheet can make visible).
export function highlightNode(root: HTMLElement, nodeId: number,
                              side: "tree" | "prose"): HTMLElement | null {
  const pane = side === "tree" ? ".tree-pane" : ".prose-pane";
  for (const previous of root.querySelectorAll(".highlighted")) {
    previous.classList.remove("highlighted");
  }
  const target = root.querySelector<HTMLElement>(
    `${pane} [data-node-id="${nodeId}"]`);
  if (target) {
    target.classList.add("highlighted");
    target.scrollIntoView?.({ block: "nearest" });
  }
  return target;
}

export function anchorIds(root: HTMLElement, pane: ".tree-pane" | ".prose-pane"): number[] {
  return Array.from(root.querySelectorAll<HTMLElement>(`${pane} [data-node-id]`))
    .map((element) => Number(element.dataset.nodeId));
}
