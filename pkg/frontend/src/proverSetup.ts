// Prover setup: one on/off switch and one priority field per inference
// rule, plus the search limits. Client-side validation mirrors the
// service's 422 rules; the summary lists everything that deviates from
// the defaults before the task is submitted.

import { ProverConfig, RuleDescriptor, RuleSetting } from "./types.js";

export function defaultConfig(rules: RuleDescriptor[]): ProverConfig {
  const settings: Record<string, RuleSetting> = {};
  for (const rule of rules) {
    settings[rule.id] = { active: rule.default_active, priority: rule.default_priority };
  }
  return { rules: settings, depth_limit: 20, time_limit_ms: 5000 };
}

export function validateConfig(config: ProverConfig): string[] {
  const errors: string[] = [];
  for (const [id, setting] of Object.entries(config.rules)) {
    if (!Number.isInteger(setting.priority) || setting.priority < 1) {
      errors.push(`priority of ${id} must be a positive integer`);
    }
  }
  if (!Number.isInteger(config.depth_limit) || config.depth_limit < 1) {
    errors.push("depth limit must be a positive integer");
  }
  if (!Number.isInteger(config.time_limit_ms) || config.time_limit_ms < 1) {
    errors.push("time limit must be a positive integer");
  }
  return errors;
}

export function configSummary(rules: RuleDescriptor[], config: ProverConfig): string[] {
  const lines: string[] = [];
  for (const rule of rules) {
    const setting = config.rules[rule.id];
    if (!setting) continue;
    if (setting.active !== rule.default_active) {
      lines.push(`${rule.display_name}: turned ${setting.active ? "on" : "off"}`);
    }
    if (setting.priority !== rule.default_priority) {
      lines.push(`${rule.display_name}: priority ${rule.default_priority} -> ${setting.priority}`);
    }
  }
  lines.push(`depth limit ${config.depth_limit}, time limit ${config.time_limit_ms} ms`);
  return lines;
}

export function renderProverSetup(
  container: HTMLElement,
  rules: RuleDescriptor[],
  config: ProverConfig,
  onChange?: (config: ProverConfig, errors: string[]) => void,
): void {
  container.innerHTML = "";
  container.classList.add("prover-setup");

  const errorBox = document.createElement("div");
  errorBox.className = "setup-errors";

  const notify = () => {
    const errors = validateConfig(config);
    errorBox.textContent = errors.join("; ");
    errorBox.hidden = errors.length === 0;
    onChange?.(config, errors);
  };

  const table = document.createElement("table");
  table.className = "rule-table";
  const head = document.createElement("tr");
  head.innerHTML = "<th>rule</th><th>active</th><th>priority</th>";
  table.appendChild(head);

  for (const rule of rules) {
    const row = document.createElement("tr");
    row.dataset.rule = rule.id;

    const name = document.createElement("td");
    name.textContent = rule.display_name;
    name.title = `${rule.id} (${rule.kind})`;

    const activeCell = document.createElement("td");
    const active = document.createElement("input");
    active.type = "checkbox";
    active.className = "rule-active";
    active.checked = config.rules[rule.id].active;
    active.addEventListener("change", () => {
      config.rules[rule.id].active = active.checked;
      notify();
    });
    activeCell.appendChild(active);

    const priorityCell = document.createElement("td");
    const priority = document.createElement("input");
    priority.type = "number";
    priority.min = "1";
    priority.className = "rule-priority";
    priority.value = String(config.rules[rule.id].priority);
    priority.addEventListener("input", () => {
      const value = Number(priority.value);
      config.rules[rule.id].priority = value;
      const bad = !Number.isInteger(value) || value < 1;
      priority.classList.toggle("invalid", bad);
      notify();
    });
    priorityCell.appendChild(priority);

    row.append(name, activeCell, priorityCell);
    table.appendChild(row);
  }

  const limits = document.createElement("div");
  limits.className = "limits";
  const depth = numberField(limits, "search depth", "depth-limit",
    config.depth_limit, (value) => {
      config.depth_limit = value;
      notify();
    });
  const time = numberField(limits, "time limit (ms)", "time-limit",
    config.time_limit_ms, (value) => {
      config.time_limit_ms = value;
      notify();
    });
  void depth;
  void time;

  container.append(table, limits, errorBox);
  notify();
}

function numberField(parent: HTMLElement, text: string, cls: string,
                     initial: number, update: (value: number) => void): HTMLInputElement {
  const label = document.createElement("label");
  label.textContent = `${text} `;
  const input = document.createElement("input");
  input.type = "number";
  input.min = "1";
  input.className = cls;
  input.value = String(initial);
  input.addEventListener("input", () => {
    const value = Number(input.value);
    input.classList.toggle("invalid", !Number.isInteger(value) || value < 1);
    update(value);
  });
  label.appendChild(input);
  parent.appendChild(label);
  return input;
}
