import { beforeEach, describe, expect, it } from "vitest";

import {
  configSummary, defaultConfig, renderProverSetup, validateConfig,
} from "../src/proverSetup.js";
import rulesFixture from "./fixtures/rules.json";
import { RuleDescriptor } from "../src/types.js";

const rules = rulesFixture as RuleDescriptor[];

describe("prover setup", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="setup"></div>';
    container = document.getElementById("setup")!;
  });

  it("loads the defaults from the catalog", () => {
    const config = defaultConfig(rules);
    renderProverSetup(container, rules, config);
    for (const rule of rules) {
      const row = container.querySelector<HTMLElement>(
        `tr[data-rule="${rule.id}"]`)!;
      const active = row.querySelector<HTMLInputElement>(".rule-active")!;
      const priority = row.querySelector<HTMLInputElement>(".rule-priority")!;
      expect(active.checked).toBe(rule.default_active);
      expect(Number(priority.value)).toBe(rule.default_priority);
    }
  });

  it("reflects switch changes in the config", () => {
    const config = defaultConfig(rules);
    renderProverSetup(container, rules, config);
    const implGoal = container.querySelector<HTMLInputElement>(
      'tr[data-rule="ImplGoal"] .rule-active')!;
    implGoal.click();
    expect(config.rules["ImplGoal"].active).toBe(false);
    const summary = configSummary(rules, config).join("\n");
    expect(summary).toContain("turned off");
  });

  it("rejects priority zero with an inline error", () => {
    const config = defaultConfig(rules);
    let lastErrors: string[] = [];
    renderProverSetup(container, rules, config, (_c, errors) => {
      lastErrors = errors;
    });
    const priority = container.querySelector<HTMLInputElement>(
      'tr[data-rule="ImplGoal"] .rule-priority')!;
    priority.value = "0";
    priority.dispatchEvent(new Event("input"));
    expect(priority.classList.contains("invalid")).toBe(true);
    expect(lastErrors.some((e) => e.includes("ImplGoal"))).toBe(true);
    const errorBox = container.querySelector<HTMLElement>(".setup-errors")!;
    expect(errorBox.hidden).toBe(false);
  });

  it("validates limits like the service does", () => {
    const config = defaultConfig(rules);
    expect(validateConfig(config)).toEqual([]);
    config.depth_limit = 0;
    expect(validateConfig(config).join(" ")).toContain("depth");
    config.depth_limit = 20;
    config.time_limit_ms = -5;
    expect(validateConfig(config).join(" ")).toContain("time");
  });

  it("summary always states the limits", () => {
    const config = defaultConfig(rules);
    const lines = configSummary(rules, config);
    expect(lines[lines.length - 1]).toContain("depth limit 20");
    expect(lines[lines.length - 1]).toContain("5000 ms");
  });
});
