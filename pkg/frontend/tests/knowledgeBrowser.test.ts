import { beforeEach, describe, expect, it } from "vitest";

import { renderKnowledgeBrowser, BrowserState } from "../src/knowledgeBrowser.js";
import outlineFixture from "./fixtures/outline_prop_basics.json";
import { DocumentOutline } from "../src/types.js";

const outline = outlineFixture as DocumentOutline;

function freshState(): BrowserState {
  return { selection: new Set<string>(), goal: null };
}

describe("knowledge browser", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="kb"></div>';
    container = document.getElementById("kb")!;
  });

  it("renders collapsible sections with label-only rows", () => {
    const state = freshState();
    renderKnowledgeBrowser(container, [outline], state);
    const sections = container.querySelectorAll(".section");
    expect(sections.length).toBeGreaterThanOrEqual(1);
    const row = container.querySelector<HTMLElement>(
      '[data-ref="prop-basics/Identity.1"]')!;
    expect(row.textContent).toContain("Identity.1");
    expect(row.textContent).not.toContain("P -> P");
    expect(row.title).toBe("P -> P"); // full formula only as a tooltip
  });

  it("checkbox toggles update the selection set", () => {
    const state = freshState();
    const changes: number[] = [];
    renderKnowledgeBrowser(container, [outline], state, {
      onSelectionChange: (selection) => changes.push(selection.size),
    });
    const checkbox = container.querySelector<HTMLInputElement>(
      '[data-ref="prop-basics/Identity.1"] .kb-checkbox')!;
    checkbox.click();
    expect(state.selection.has("prop-basics/Identity.1")).toBe(true);
    checkbox.click();
    expect(state.selection.has("prop-basics/Identity.1")).toBe(false);
    expect(changes).toEqual([1, 0]);
  });

  it("collapsing a section hides rows without changing the selection", () => {
    const state = freshState();
    renderKnowledgeBrowser(container, [outline], state);
    const checkbox = container.querySelector<HTMLInputElement>(
      '[data-ref="prop-basics/CaseFacts.1"] .kb-checkbox')!;
    checkbox.click();
    expect(state.selection.size).toBe(1);
    const section = container.querySelector<HTMLElement>(".section")!;
    const toggle = section.querySelector<HTMLButtonElement>(".section-toggle")!;
    toggle.click();
    expect(section.classList.contains("collapsed")).toBe(true);
    expect(section.querySelector<HTMLElement>(".section-body")!.hidden).toBe(true);
    expect(state.selection.size).toBe(1);
    toggle.click();
    expect(section.classList.contains("collapsed")).toBe(false);
  });

  it("goal radio picks exactly one formula", () => {
    const state = freshState();
    const goals: (string | null)[] = [];
    renderKnowledgeBrowser(container, [outline], state, {
      onGoalChange: (goal) => goals.push(goal),
    });
    const first = container.querySelector<HTMLInputElement>(
      '[data-ref="prop-basics/Identity.1"] .goal-radio')!;
    const second = container.querySelector<HTMLInputElement>(
      '[data-ref="prop-basics/Swap.1"] .goal-radio')!;
    first.click();
    second.click();
    expect(state.goal).toBe("prop-basics/Swap.1");
    expect(goals).toEqual(["prop-basics/Identity.1", "prop-basics/Swap.1"]);
  });

  it("re-rendering restores checked state from the selection", () => {
    const state = freshState();
    state.selection.add("prop-basics/CaseFacts.2");
    renderKnowledgeBrowser(container, [outline], state);
    const checkbox = container.querySelector<HTMLInputElement>(
      '[data-ref="prop-basics/CaseFacts.2"] .kb-checkbox')!;
    expect(checkbox.checked).toBe(true);
  });
});
