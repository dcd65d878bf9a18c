// Wire formats of the prooftutor service.

export interface DocumentInfo {
  id: string;
  title: string;
}

export interface FormulaRef {
  document: string;
  environment: string;
  label: string;
}

export type OutlineNode = OutlineSection | OutlineEnvironment;

export interface OutlineSection {
  type: "section";
  title: string;
  children: OutlineNode[];
}

export interface OutlineEnvironment {
  type: "env";
  kind: string;
  name: string;
  formulas: { label: string; formula: string }[];
}

export interface DocumentOutline {
  id: string;
  title: string;
  outline: OutlineNode[];
}

export interface RuleDescriptor {
  id: string;
  display_name: string;
  default_priority: number;
  default_active: boolean;
  kind: "goal-rule" | "kb-rule" | "closing-rule";
}

export interface RuleSetting {
  active: boolean;
  priority: number;
}

export interface ProverConfig {
  rules: Record<string, RuleSetting>;
  depth_limit: number;
  time_limit_ms: number;
}

export type NodeStatus = "success" | "failed" | "pending" | "open";

export interface TreeNode {
  id: number;
  kind: "situation" | "application";
  status: NodeStatus;
  rule_display_name?: string;
  children: number[];
}

export interface TreeView {
  root: number;
  nodes: TreeNode[];
}

export interface ProseBlock {
  situation_id: number;
  application_id: number;
  title: string | null;
  text: string;
  children: ProseBlock[];
}

export interface ProseDocument {
  goal: string;
  knowledge: { label: string; formula: string }[];
  blocks: ProseBlock[];
}

export interface TaskBody {
  task_id: string;
  state: "queued" | "running" | "done" | "cancelled";
  outcome?: string;
  version?: number;
  stats?: { nodes_expanded: number; elapsed_ms: number };
  proof?: string;
}

export interface ProofBody {
  key: string;
  version: number;
  outcome?: string;
  tree: TreeView;
  prose?: ProseDocument | null;
}
