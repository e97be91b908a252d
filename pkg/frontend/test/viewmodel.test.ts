import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ChartSnapshot, type ChartSnapshotT } from "../src/schema.js";
import { buildViewModel, serializeViewModel } from "../src/viewmodel.js";
import { renderSvg } from "../src/render.js";
import { INITIAL, reduce, view, type Action } from "../src/store.js";

function fixture(name: string): ChartSnapshotT {
  const raw = JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8"));
  return ChartSnapshot.parse(raw);
}

describe("engine chart round-trip", () => {
  it("accepts real engine output and keeps every dot", () => {
    const snap = fixture("page-final.json");
    const vm = buildViewModel(snap);
    expect(vm.dots.length).toBe(snap.dots.length);
    expect(vm.lines.length).toBe(snap.diffs.length + snap.exotic.length);
  });

  it("page-3 snapshot renders with only solid differential lines", () => {
    const snap = fixture("page-3.json");
    const vm = buildViewModel(snap);
    expect(snap.diffs.length).toBeGreaterThan(0);
    for (const line of vm.lines.slice(0, snap.diffs.length)) {
      expect(line.style).toBe("solid");
    }
  });

  it("exotic lines are dashed, green for restriction and blue for transfer", () => {
    const snap = fixture("page-final.json");
    const vm = buildViewModel(snap);
    const exotic = vm.lines.slice(snap.diffs.length);
    expect(exotic.length).toBe(snap.exotic.length);
    exotic.forEach((line, i) => {
      expect(line.style).toBe("dashed");
      expect(line.color).toBe(snap.exotic[i]!.kind === "restriction" ? "green" : "blue");
    });
  });

  it("differential lines run one stem left, r filtrations up", () => {
    const snap = fixture("page-final.json");
    const vm = buildViewModel(snap);
    snap.diffs.forEach((d, i) => {
      const line = vm.lines[i]!;
      expect(d.to[0]).toBe(d.from[0] - 1);
      expect(d.to[1]).toBe(d.from[1] + d.page);
      expect(line.x2).toBeLessThan(line.x1);
      expect(line.y2).toBeLessThan(line.y1);
    });
  });

  it("rejects a snapshot with the wrong schema tag", () => {
    const raw = JSON.parse(JSON.stringify(fixture("page-final.json")));
    raw.schema = "sliceforge/2";
    expect(() => ChartSnapshot.parse(raw)).toThrow();
  });
});

describe("view model purity", () => {
  it("empty snapshot gives an empty grid", () => {
    const vm = view(INITIAL);
    expect(vm.dots).toEqual([]);
    expect(vm.lines).toEqual([]);
  });

  it("replaying the same action log reproduces the identical view", () => {
    const snap = fixture("page-final.json");
    const log: Action[] = [
      { type: "snapshot", snapshot: snap },
      { type: "select", stem: 0, filtration: 0 },
      { type: "draft-error", message: "nope" },
      { type: "draft-ok" },
      { type: "snapshot", snapshot: fixture("page-3.json") },
      { type: "snapshot", snapshot: snap },
    ];
    const run = () => serializeViewModel(view(log.reduce(reduce, INITIAL)));
    expect(run()).toBe(run());
  });

  it("selection marks exactly one dot and building twice is stable", () => {
    const snap = fixture("page-final.json");
    const vm = buildViewModel(snap, { selection: { stem: 0, filtration: 0 }, draftError: null });
    expect(vm.dots.filter((d) => d.selected).length).toBe(1);
    expect(serializeViewModel(vm)).toBe(
      serializeViewModel(
        buildViewModel(snap, { selection: { stem: 0, filtration: 0 }, draftError: null }),
      ),
    );
  });

  it("schema errors surface as a banner, not a crash", () => {
    const state = reduce(INITIAL, { type: "schema-error", message: "bad tag" });
    expect(view(state).banner).toContain("schema mismatch");
  });
});

describe("svg rendering", () => {
  it("emits well-formed svg with dashes and a legend", () => {
    const snap = fixture("page-final.json");
    const svg = renderSvg(buildViewModel(snap));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain("page 31");
    for (const glyph of new Set(snap.dots.map((d) => d.mackey))) {
      expect(svg).toContain(glyph);
    }
  });
});
