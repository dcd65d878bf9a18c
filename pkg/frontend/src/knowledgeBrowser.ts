// Knowledge browser: the formal outline of each document with
// collapsible sections, label-only formula rows whose full text sits in
// the tooltip, a checkbox per formula for the knowledge base, and a
// radio button to pick the proof goal.

import { refKey } from "./api.js";
import { DocumentOutline, OutlineNode } from "./types.js";

export interface BrowserState {
  selection: Set<string>;      // checked formula ref keys
  goal: string | null;         // ref key of the chosen goal
}

export interface BrowserCallbacks {
  onSelectionChange?: (selection: Set<string>) => void;
  onGoalChange?: (goal: string | null) => void;
}

export function renderKnowledgeBrowser(
  container: HTMLElement,
  outlines: DocumentOutline[],
  state: BrowserState,
  callbacks: BrowserCallbacks = {},
): void {
  container.innerHTML = "";
  container.classList.add("knowledge-browser");
  for (const doc of outlines) {
    const section = document.createElement("div");
    section.className = "document";
    const heading = document.createElement("h3");
    heading.textContent = doc.title;
    section.appendChild(heading);
    for (const node of doc.outline) {
      section.appendChild(renderNode(doc.id, node, state, callbacks));
    }
    container.appendChild(section);
  }
}

function renderNode(
  docId: string,
  node: OutlineNode,
  state: BrowserState,
  callbacks: BrowserCallbacks,
): HTMLElement {
  if (node.type === "section") {
    const wrapper = document.createElement("div");
    wrapper.className = "section";
    const toggle = document.createElement("button");
    toggle.type = "button";
    toggle.className = "section-toggle";
    toggle.textContent = node.title;
    const body = document.createElement("div");
    body.className = "section-body";
    toggle.addEventListener("click", () => {
      wrapper.classList.toggle("collapsed");
      body.hidden = wrapper.classList.contains("collapsed");
    });
    for (const child of node.children) {
      body.appendChild(renderNode(docId, child, state, callbacks));
    }
    wrapper.append(toggle, body);
    return wrapper;
  }

  const env = document.createElement("div");
  env.className = `environment kind-${node.kind}`;
  const name = document.createElement("div");
  name.className = "environment-name";
  name.textContent = `${node.kind} ${node.name}`;
  env.appendChild(name);
  for (const { label, formula } of node.formulas) {
    const key = refKey({ document: docId, environment: node.name, label });
    const row = document.createElement("label");
    row.className = "formula-row";
    row.title = formula; // the whole formula only shows as a tooltip
    row.dataset.ref = key;

    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.className = "kb-checkbox";
    checkbox.checked = state.selection.has(key);
    checkbox.addEventListener("change", () => {
      if (checkbox.checked) state.selection.add(key);
      else state.selection.delete(key);
      callbacks.onSelectionChange?.(state.selection);
    });

    const goal = document.createElement("input");
    goal.type = "radio";
    goal.name = "proof-goal";
    goal.className = "goal-radio";
    goal.checked = state.goal === key;
    goal.addEventListener("change", () => {
      if (goal.checked) {
        state.goal = key;
        callbacks.onGoalChange?.(key);
      }
    });

    const text = document.createElement("span");
    text.className = "formula-label";
    text.textContent = `${node.name}.${label}`;

    row.append(checkbox, goal, text);
    env.appendChild(row);
  }
  return env;
}
