import { describe, expect, it } from "vitest";

import { ChartClient, parseEvent, type FetchLike } from "../src/client.js";

interface Call {
  url: string;
  method: string;
}

function fakeServer(
  handler: (url: string, method: string) => { status: number; body: unknown },
): { fetch: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    calls.push({ url, method });
    const res = handler(url, method);
    return { status: res.status, text: async () => JSON.stringify(res.body) };
  };
  return { fetch, calls };
}

const DRAFT = { page: 3, source: "uL", target: "Tr[t1 aS2^3]" };

describe("chart client", () => {
  it("reports contradictions from 409 bodies", async () => {
    const server = fakeServer(() => ({
      status: 409,
      body: { schema: "sliceforge/1", status: "contradiction", contradictions: ["d^2 != 0"] },
    }));
    const client = new ChartClient("http://x", server.fetch);
    const outcome = await client.assert(DRAFT);
    expect(outcome.kind).toBe("contradiction");
    if (outcome.kind === "contradiction") {
      expect(outcome.body.contradictions).toEqual(["d^2 != 0"]);
    }
  });

  it("passes applied deltas through untouched", async () => {
    const delta = [{ page: 3, from: [2, -2], to: [1, 1], source: "a", target: "b" }];
    const server = fakeServer(() => ({
      status: 200,
      body: { schema: "sliceforge/1", status: "applied", delta },
    }));
    const client = new ChartClient("http://x", server.fetch);
    const outcome = await client.assert(DRAFT);
    expect(outcome.kind).toBe("applied");
    if (outcome.kind !== "contradiction") expect(outcome.body.delta).toEqual(delta);
  });

  it("keeps at most one mutation in flight, in order", async () => {
    let inFlight = 0;
    let overlapped = false;
    const order: string[] = [];
    const fetch: FetchLike = async (url, init) => {
      if ((init?.method ?? "GET") === "POST") {
        inFlight += 1;
        if (inFlight > 1) overlapped = true;
        await new Promise((resolve) => setTimeout(resolve, 5));
        inFlight -= 1;
        order.push(url);
      }
      return {
        status: 200,
        text: async () =>
          JSON.stringify(
            url.endsWith("/undo")
              ? { schema: "sliceforge/1", status: "undone" }
              : { schema: "sliceforge/1", status: "applied", delta: [] },
          ),
      };
    };
    const client = new ChartClient("http://x", fetch);
    await Promise.all([client.assert(DRAFT), client.undo(), client.assert(DRAFT)]);
    expect(overlapped).toBe(false);
    expect(order).toEqual(["http://x/assert", "http://x/undo", "http://x/assert"]);
  });

  it("rejects malformed server events", () => {
    expect(() => parseEvent(JSON.stringify({ schema: "nope", event: "x" }))).toThrow();
    expect(parseEvent(JSON.stringify({ schema: "sliceforge/1", event: "recompute", page: 31 })))
      .toEqual({ schema: "sliceforge/1", event: "recompute", page: 31 });
  });
});
