// Typed client for the prooftutor service endpoints.

import {
  DocumentInfo, DocumentOutline, FormulaRef, ProofBody, ProverConfig,
  RuleDescriptor, TaskBody, TreeView, ProseDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

export class Client {
  constructor(public baseUrl: string = "") {}

  listDocuments(): Promise<DocumentInfo[]> {
    return request(`${this.baseUrl}/documents`);
  }

  getOutline(documentId: string): Promise<DocumentOutline> {
    return request(`${this.baseUrl}/documents/${documentId}/outline`);
  }

  getRules(): Promise<RuleDescriptor[]> {
    return request(`${this.baseUrl}/rules`);
  }

  submitProve(goal: FormulaRef, selection: FormulaRef[],
              config: ProverConfig): Promise<{ task_id: string }> {
    return request(`${this.baseUrl}/prove`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ goal, selection, config }),
    });
  }

  getTask(taskId: string): Promise<TaskBody> {
    return request(`${this.baseUrl}/tasks/${taskId}`);
  }

  interruptTask(taskId: string): Promise<{ task_id: string; state: string }> {
    return request(`${this.baseUrl}/tasks/${taskId}/interrupt`, { method: "POST" });
  }

  getProof(proofPath: string, view: "tree" | "prose" | "json" = "json"): Promise<ProofBody> {
    return request(`${this.baseUrl}${proofPath}?view=${view}`);
  }

  simplifyProof(proofPath: string, options: string[]):
      Promise<{ key: string; version: number; tree: TreeView; prose: ProseDocument }> {
    return request(`${this.baseUrl}${proofPath}/simplify`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ options }),
    });
  }
}

export function refKey(ref: FormulaRef): string {
  return `${ref.document}/${ref.environment}.${ref.label}`;
}

export function parseRefKey(key: string): FormulaRef {
  const slash = key.indexOf("/");
  const dot = key.indexOf(".", slash);
  return {
    document: key.slice(0, slash),
    environment: key.slice(slash + 1, dot),
    label: key.slice(dot + 1),
  };
}
