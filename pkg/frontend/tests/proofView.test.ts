import { beforeEach, describe, expect, it, vi } from "vitest";

import {
  STATUS_COLOR, anchorIds, highlightNode, renderProofView,
} from "../src/proofView.js";
import identityJson from "./fixtures/proof_identity_json.json";
import identitySimplified from "./fixtures/proof_identity_simplified.json";
import casesJson from "./fixtures/proof_cases_json.json";
import casesSimplified from "./fixtures/proof_cases_simplified.json";
import { ProofBody, ProseDocument, TreeView } from "../src/types.js";

const identity = identityJson as unknown as ProofBody;
const cases = casesJson as unknown as ProofBody;

interface Simplified {
  tree: TreeView;
  prose: ProseDocument;
}

describe("proof view", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="proof"></div>';
    container = document.getElementById("proof")!;
  });

  it("maps statuses to exactly green, red, and blue", () => {
    expect(STATUS_COLOR).toEqual({ success: "green", failed: "red", pending: "blue" });
    renderProofView(container, cases.tree, cases.prose ?? null);
    const colors = new Set<string>();
    for (const node of container.querySelectorAll(".tree-node")) {
      const color = Array.from(node.classList).find((c) => c.startsWith("color-"));
      colors.add(color ?? "none");
    }
    expect([...colors].sort()).toEqual(
      expect.arrayContaining(["color-green"]));
    for (const color of colors) {
      expect(["color-green", "color-red", "color-blue"]).toContain(color);
    }
  });

  it("raw proved trees keep a green path and pending alternatives", () => {
    renderProofView(container, cases.tree, cases.prose ?? null);
    const statuses = new Set(
      Array.from(container.querySelectorAll(".tree-node"), (node) =>
        Array.from(node.classList).find((c) => c.startsWith("status-"))));
    expect(statuses).toContain("status-success");
    expect(statuses).toContain("status-pending");
  });

  it("after simplify every node is green", () => {
    for (const fixture of [identitySimplified, casesSimplified]) {
      const simplified = fixture as unknown as Simplified;
      renderProofView(container, simplified.tree, simplified.prose);
      const nodes = container.querySelectorAll(".tree-node");
      expect(nodes.length).toBeGreaterThan(0);
      for (const node of nodes) {
        expect(node.classList.contains("color-green")).toBe(true);
      }
    }
  });

  it("prose anchors and tree nodes form a bijection on simplified proofs", () => {
    for (const fixture of [identitySimplified, casesSimplified]) {
      const simplified = fixture as unknown as Simplified;
      renderProofView(container, simplified.tree, simplified.prose);
      const treeIds = anchorIds(container, ".tree-pane").sort((a, b) => a - b);
      const proseIds = anchorIds(container, ".prose-pane").sort((a, b) => a - b);
      expect(new Set(proseIds).size).toBe(proseIds.length);
      expect(proseIds).toEqual(treeIds);
    }
  });

  it("clicking a prose block highlights the tree node and back", () => {
    const simplified = identitySimplified as unknown as Simplified;
    renderProofView(container, simplified.tree, simplified.prose);
    const closingProse = container.querySelector<HTMLElement>(
      '.prose-pane .prose-text[data-node-id]:last-of-type')!;
    const targetId = closingProse.dataset.nodeId!;
    closingProse.click();
    const highlighted = container.querySelector<HTMLElement>(
      ".tree-pane .highlighted")!;
    expect(highlighted.dataset.nodeId).toBe(targetId);

    const treeNode = container.querySelector<HTMLElement>(
      `.tree-pane [data-node-id="${simplified.tree.root}"]`)!;
    treeNode.click();
    const proseHighlight = container.querySelector<HTMLElement>(
      ".prose-pane .highlighted")!;
    expect(proseHighlight.dataset.nodeId).toBe(String(simplified.tree.root));
  });

  it("only one highlight exists at a time", () => {
    const simplified = casesSimplified as unknown as Simplified;
    renderProofView(container, simplified.tree, simplified.prose);
    highlightNode(container, simplified.tree.root, "tree");
    highlightNode(container, simplified.tree.nodes[1].id, "tree");
    expect(container.querySelectorAll(".highlighted").length).toBe(1);
  });

  it("application nodes show the rule name as tooltip", () => {
    renderProofView(container, identity.tree, identity.prose ?? null);
    const applications = container.querySelectorAll<HTMLElement>(
      ".tree-node.application");
    expect(applications.length).toBeGreaterThan(0);
    for (const node of applications) {
      expect(node.title.length).toBeGreaterThan(0);
    }
    const names = Array.from(applications, (n) => n.title);
    expect(names).toContain("Assume and show");
  });

  it("situation and application nodes differ by shape class, not color", () => {
    renderProofView(container, identity.tree, identity.prose ?? null);
    const situation = container.querySelector(".tree-node.situation")!;
    const application = container.querySelector(".tree-node.application")!;
    expect(situation.classList.contains("application")).toBe(false);
    expect(application.classList.contains("situation")).toBe(false);
    // both successful here: same color class
    expect(situation.classList.contains("color-green")).toBe(true);
    expect(application.classList.contains("color-green")).toBe(true);
  });

  it("simplify button invokes the handler", () => {
    const onSimplify = vi.fn();
    renderProofView(container, identity.tree, identity.prose ?? null, { onSimplify });
    container.querySelector<HTMLButtonElement>(".simplify-button")!.click();
    expect(onSimplify).toHaveBeenCalledOnce();
  });
});
