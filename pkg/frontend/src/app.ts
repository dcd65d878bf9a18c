// The commander: knowledge browser on the left, prover setup in the
// middle, and the linked proof view on the right. A task submission
// shows the settings summary, then polls the task once per second and
// repaints when it finishes.

import { Client, parseRefKey, refKey } from "./api.js";
import { BrowserState, renderKnowledgeBrowser } from "./knowledgeBrowser.js";
import {
  configSummary, defaultConfig, renderProverSetup, validateConfig,
} from "./proverSetup.js";
import { renderProofView } from "./proofView.js";
import { ProofBody, ProverConfig, RuleDescriptor } from "./types.js";

export const POLL_INTERVAL_MS = 1000;

export interface AppElements {
  browser: HTMLElement;
  setup: HTMLElement;
  summary: HTMLElement;
  status: HTMLElement;
  proof: HTMLElement;
  banner: HTMLElement;
  submit: HTMLButtonElement;
}

export class Commander {
  state: BrowserState = { selection: new Set(), goal: null };
  config!: ProverConfig;
  rules: RuleDescriptor[] = [];
  configErrors: string[] = [];
  currentTask: string | null = null;
  displayed: { key: string; version: number } | null = null;
  latestVersionByKey = new Map<string, number>();
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(public client: Client, public elements: AppElements) {}

  async start(): Promise<void> {
    try {
      const documents = await this.client.listDocuments();
      const outlines = await Promise.all(
        documents.map((doc) => this.client.getOutline(doc.id)));
      this.rules = await this.client.getRules();
      this.config = defaultConfig(this.rules);
      renderKnowledgeBrowser(this.elements.browser, outlines, this.state, {
        onSelectionChange: () => this.refreshSummary(),
        onGoalChange: () => this.refreshSummary(),
      });
      renderProverSetup(this.elements.setup, this.rules, this.config,
        (_config, errors) => {
          this.configErrors = errors;
          this.refreshSummary();
        });
      this.refreshSummary();
    } catch (error) {
      this.showBanner(`Failed to load documents or rules: ${error}`);
    }
  }

  refreshSummary(): void {
    const lines: string[] = [];
    lines.push(this.state.goal
      ? `Goal: ${this.state.goal}`
      : "Goal: none selected");
    lines.push(`Knowledge: ${this.state.selection.size} formula(s) selected`);
    lines.push(...configSummary(this.rules, this.config));
    this.elements.summary.textContent = lines.join("\n");
    this.elements.submit.disabled =
      !this.state.goal || this.configErrors.length > 0;
  }

  async submit(): Promise<void> {
    if (!this.state.goal) return;
    const errors = validateConfig(this.config);
    if (errors.length > 0) {
      this.showBanner(errors.join("; "));
      return;
    }
    const goal = parseRefKey(this.state.goal);
    const selection = Array.from(this.state.selection, parseRefKey);
    try {
      const { task_id } = await this.client.submitProve(goal, selection, this.config);
      this.currentTask = task_id;
      this.setStatus(`task ${task_id} submitted`);
      this.schedulePoll();
    } catch (error) {
      this.showBanner(`Submit failed: ${error}`);
    }
  }

  schedulePoll(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => void this.poll(), POLL_INTERVAL_MS);
  }

  async poll(): Promise<void> {
    if (!this.currentTask) return;
    try {
      const task = await this.client.getTask(this.currentTask);
      if (task.state === "queued" || task.state === "running") {
        this.setStatus(`task ${task.task_id}: ${task.state}...`);
        this.schedulePoll();
        return;
      }
      if (task.state === "cancelled") {
        this.setStatus(`task ${task.task_id}: cancelled`);
        return;
      }
      this.setStatus(
        `task ${task.task_id}: ${task.outcome} (version ${task.version})`);
      if (task.proof) {
        await this.showProof(task.proof);
      }
    } catch (error) {
      this.showBanner(`Polling failed: ${error}`);
    }
  }

  async showProof(proofPath: string): Promise<void> {
    const proof = await this.client.getProof(proofPath, "json");
    this.displayed = { key: proof.key, version: proof.version };
    const latest = this.latestVersionByKey.get(proof.key) ?? 0;
    this.latestVersionByKey.set(proof.key, Math.max(latest, proof.version));
    this.renderProof(proofPath, proof);
    this.updateStaleIndicator();
  }

  renderProof(proofPath: string, proof: ProofBody): void {
    renderProofView(this.elements.proof, proof.tree, proof.prose ?? null, {
      onSimplify: () => void this.simplify(proofPath),
      onInterrupt: this.currentTask
        ? () => void this.client.interruptTask(this.currentTask!)
        : undefined,
    });
  }

  async simplify(proofPath: string): Promise<void> {
    try {
      const simplified = await this.client.simplifyProof(
        proofPath, ["prune_failures", "elide_unused_assumptions"]);
      renderProofView(this.elements.proof, simplified.tree, simplified.prose, {
        onSimplify: () => void this.simplify(proofPath),
      });
    } catch (error) {
      this.showBanner(`Simplify failed: ${error}`);
    }
  }

  updateStaleIndicator(): void {
    if (!this.displayed) return;
    const latest = this.latestVersionByKey.get(this.displayed.key) ?? 0;
    if (latest > this.displayed.version) {
      this.showBanner(
        `A newer proof version (${latest}) exists for this goal.`);
    }
  }

  setStatus(text: string): void {
    this.elements.status.textContent = text;
    this.elements.banner.hidden = true;
  }

  showBanner(text: string): void {
    this.elements.banner.textContent = text;
    this.elements.banner.hidden = false;
  }
}

export function mount(root: Document, baseUrl = ""): Commander {
  const byId = (id: string) => {
    const element = root.getElementById(id);
    if (!element) throw new Error(`missing #${id}`);
    return element as HTMLElement;
  };
  const commander = new Commander(new Client(baseUrl), {
    browser: byId("knowledge-browser"),
    setup: byId("prover-setup"),
    summary: byId("setup-summary"),
    status: byId("task-status"),
    proof: byId("proof-view"),
    banner: byId("banner"),
    submit: byId("submit-proof") as HTMLButtonElement,
  });
  (byId("submit-proof") as HTMLButtonElement).addEventListener(
    "click", () => void commander.submit());
  void commander.start();
  return commander;
}

declare global {
  interface Window {
    prooftutorCommander?: Commander;
  }
}

if (typeof document !== "undefined" && document.getElementById("knowledge-browser")) {
  window.prooftutorCommander = mount(document,
    (window as unknown as { PROOFTUTOR_BASE?: string }).PROOFTUTOR_BASE ?? "");
}
