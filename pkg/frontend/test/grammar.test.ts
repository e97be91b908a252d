import { describe, expect, it } from "vitest";

import { formatDraft, parseDraft, validExpression } from "../src/grammar.js";

describe("assertion grammar", () => {
  it("parses a simple draft", () => {
    const res = parseDraft("d3: uL -> Tr[t1 aS2^3]");
    expect(res).toEqual({
      ok: true,
      draft: { page: 3, source: "uL", target: "Tr[t1 aS2^3]" },
    });
  });

  it("rejects even pages client-side", () => {
    const res = parseDraft("d4: uL -> Tr[t1 aS2^3]");
    expect(res.ok).toBe(false);
    if (!res.ok) expect(res.error).toContain("odd page");
  });

  it("rejects page 1", () => {
    expect(parseDraft("d1: uL -> aS").ok).toBe(false);
  });

  it("rejects malformed drafts", () => {
    expect(parseDraft("uL -> aS").ok).toBe(false);
    expect(parseDraft("d3: uL").ok).toBe(false);
  });

  it("accepts sums and norm/transfer atoms", () => {
    expect(
      validExpression("2 N(t2) u2S^2 aL^7 + Tr[t1 gt1^2 t2 aS2^14]"),
    ).toBe(true);
    expect(validExpression("N(t1)^4 u2S aS^2 aL^4")).toBe(true);
  });

  it("rejects garbage expressions", () => {
    expect(validExpression("")).toBe(false);
    expect(validExpression("uL + ")).toBe(false);
    expect(validExpression("drop table")).toBe(false);
  });

  it("round-trips through formatDraft", () => {
    const text = "d13: uL^4 aS -> 2 N(t2) u2S^2 aL^7";
    const res = parseDraft(text);
    expect(res.ok).toBe(true);
    if (res.ok) expect(formatDraft(res.draft)).toBe(text);
  });
});
