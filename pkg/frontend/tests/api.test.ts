import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client, parseRefKey, refKey } from "../src/api.js";
import { stubFetch } from "./helpers.js";

describe("api client", () => {
  afterEach(() => vi.unstubAllGlobals());

  it("hits the documented endpoints", async () => {
    const requests = stubFetch([
      [/\/documents$/, []],
      [/\/rules$/, []],
      [/\/prove$/, { task_id: "t" }],
      [/\/tasks\/t$/, { task_id: "t", state: "queued" }],
      [/\/tasks\/t\/interrupt$/, { task_id: "t", state: "cancelled" }],
      [/\/proofs\/k\/1\?view=tree$/, { key: "k", version: 1, tree: { root: 0, nodes: [] } }],
      [/\/proofs\/k\/1\/simplify$/, { key: "k", version: 1, tree: { root: 0, nodes: [] }, prose: { goal: "", knowledge: [], blocks: [] } }],
    ]);
    const client = new Client("http://svc");
    await client.listDocuments();
    await client.getRules();
    const ref = { document: "d", environment: "T", label: "1" };
    await client.submitProve(ref, [ref], {
      rules: {}, depth_limit: 20, time_limit_ms: 5000 });
    await client.getTask("t");
    await client.interruptTask("t");
    await client.getProof("/proofs/k/1", "tree");
    await client.simplifyProof("/proofs/k/1", ["prune_failures"]);
    expect(requests.map((r) => `${r.method} ${r.url}`)).toEqual([
      "GET http://svc/documents",
      "GET http://svc/rules",
      "POST http://svc/prove",
      "GET http://svc/tasks/t",
      "POST http://svc/tasks/t/interrupt",
      "GET http://svc/proofs/k/1?view=tree",
      "POST http://svc/proofs/k/1/simplify",
    ]);
    const body = requests[2].body as { selection: unknown[] };
    expect(body.selection).toHaveLength(1);
  });

  it("raises ApiError with the service detail", async () => {
    stubFetch([[/\/tasks\/missing$/, { detail: "no task" }, 404]]);
    const client = new Client();
    await expect(client.getTask("missing")).rejects.toMatchObject({
      status: 404,
      message: "no task",
    });
    await expect(client.getTask("missing")).rejects.toBeInstanceOf(ApiError);
  });

  it("ref keys round-trip", () => {
    const ref = { document: "prop-basics", environment: "Identity", label: "1" };
    expect(parseRefKey(refKey(ref))).toEqual(ref);
    const dotted = { document: "d", environment: "T", label: "1.a" };
    expect(parseRefKey(refKey(dotted))).toEqual(dotted);
  });
});
