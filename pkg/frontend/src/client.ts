/** HTTP/WS client for the chart service.

Mutations are serialized: at most one POST is in flight, later ones
queue behind it.  Events are applied in arrival order. */

import {
  AssertResponse,
  ChartSnapshot,
  ClassDetail,
  ContradictionBody,
  ServerEvent,
  type AssertResponseT,
  type ChartSnapshotT,
  type ClassDetailT,
  type ContradictionBodyT,
  type ServerEventT,
} from "./schema.js";
import type { AssertionDraft } from "./grammar.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; body?: string; headers?: Record<string, string> },
) => Promise<{ status: number; text(): Promise<string> }>;

export type AssertOutcome =
  | { kind: "applied" | "duplicate"; body: AssertResponseT }
  | { kind: "contradiction"; body: ContradictionBodyT };

export class ChartClient {
  private chain: Promise<unknown> = Promise.resolve();

  constructor(
    private base: string,
    private fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async getJson(path: string): Promise<unknown> {
    const res = await this.fetchImpl(this.base + path);
    const text = await res.text();
    if (res.status !== 200) {
      throw new Error(`GET ${path} failed (${res.status}): ${text}`);
    }
    return JSON.parse(text);
  }

  /** Queue a mutation behind any in-flight one. */
  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.chain.then(job, job);
    this.chain = next.catch(() => undefined);
    return next;
  }

  async chart(): Promise<ChartSnapshotT> {
    return ChartSnapshot.parse(await this.getJson("/chart"));
  }

  async page(r: number): Promise<ChartSnapshotT> {
    return ChartSnapshot.parse(await this.getJson(`/page/${r}`));
  }

  async classDetail(stem: number, filtration: number): Promise<ClassDetailT> {
    return ClassDetail.parse(await this.getJson(`/class/${stem}/${filtration}`));
  }

  assert(draft: AssertionDraft): Promise<AssertOutcome> {
    return this.enqueue(async () => {
      const res = await this.fetchImpl(this.base + "/assert", {
        method: "POST",
        body: JSON.stringify(draft),
        headers: { "content-type": "application/json" },
      });
      const body = JSON.parse(await res.text());
      if (res.status === 409) {
        return { kind: "contradiction", body: ContradictionBody.parse(body) };
      }
      if (res.status !== 200) {
        throw new Error(`assert failed (${res.status})`);
      }
      const parsed = AssertResponse.parse(body);
      return { kind: parsed.status, body: parsed };
    });
  }

  undo(): Promise<void> {
    return this.enqueue(async () => {
      const res = await this.fetchImpl(this.base + "/undo", { method: "POST" });
      if (res.status !== 200) {
        throw new Error(`undo failed (${res.status})`);
      }
    });
  }
}

export function parseEvent(data: string): ServerEventT {
  return ServerEvent.parse(JSON.parse(data));
}
