// Shared test scaffolding: a fetch stub that routes to fixture payloads
// and records every request, and the standard commander DOM skeleton.

import { vi } from "vitest";

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

export type Route = [pattern: RegExp, payload: unknown | (() => unknown), status?: number];

export function stubFetch(routes: Route[]): RecordedRequest[] {
  const requests: RecordedRequest[] = [];
  vi.stubGlobal("fetch", vi.fn(async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    requests.push({ url, method, body });
    for (const [pattern, payload, status] of routes) {
      if (pattern.test(url)) {
        const data = typeof payload === "function" ? (payload as () => unknown)() : payload;
        return new Response(JSON.stringify(data), {
          status: status ?? 200,
          headers: { "content-type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: "no route" }), { status: 404 });
  }));
  return requests;
}

export function commanderDom(): void {
  document.body.innerHTML = `
    <div id="knowledge-browser"></div>
    <div id="prover-setup"></div>
    <div id="setup-summary"></div>
    <button id="submit-proof" type="button"></button>
    <p id="task-status"></p>
    <div id="proof-view"></div>
    <div id="banner" hidden></div>`;
}
