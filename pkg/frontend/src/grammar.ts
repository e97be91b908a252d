/** Assertion drafts in the script grammar: "d3: uL -> Tr[t1 aS2^3]". */

export interface AssertionDraft {
  page: number;
  source: string;
  target: string;
}

export type ParseResult =
  | { ok: true; draft: AssertionDraft }
  | { ok: false; error: string };

const DRAFT = /^d(\d+)\s*:\s*(.+?)\s*->\s*(.+)$/;

/** Validate a single class expression without interpreting it.

The server owns all mathematics; the client only checks that the text is
made of known atoms so typos fail at the input box instead of the wire. */
const ATOM =
  /^(\d+|[auxb]\w*(\^-?\d+)?|N\((g?t\d+|xi\d+)(\^\d+)?\)(\^\d+)?|Tr\[[^[\]]+\]|(g?t\d+|xi\d+|zeta\d+)(\^-?\d+)?)$/;

export function validExpression(text: string): boolean {
  const summands = text.split("+").map((s) => s.trim());
  if (summands.some((s) => s.length === 0)) return false;
  return summands.every((s) => {
    const factors = s.match(/Tr\[[^[\]]*\]|\S+/g) ?? [];
    return factors.length > 0 && factors.every((f) => ATOM.test(f));
  });
}

export function parseDraft(text: string): ParseResult {
  const m = DRAFT.exec(text.trim());
  if (!m) {
    return { ok: false, error: "expected \"d<r>: <source> -> <target>\"" };
  }
  const page = Number(m[1]);
  if (page < 3 || page % 2 === 0) {
    return { ok: false, error: `page ${page} rejected: odd page >= 3 required` };
  }
  const source = m[2]!.trim();
  const target = m[3]!.trim();
  if (!validExpression(source)) {
    return { ok: false, error: `cannot read source "${source}"` };
  }
  if (!validExpression(target)) {
    return { ok: false, error: `cannot read target "${target}"` };
  }
  return { ok: true, draft: { page, source, target } };
}

/** Inverse of parseDraft, so interactive sessions paste into scripts. */
export function formatDraft(draft: AssertionDraft): string {
  return `d${draft.page}: ${draft.source} -> ${draft.target}`;
}
