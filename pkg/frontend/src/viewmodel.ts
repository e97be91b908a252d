/** Pure view model: (server snapshot, local ui state) -> drawable scene.

No mathematics happens here.  Every label, group, and name is copied
verbatim from server JSON; this module only assigns pixel coordinates
and styles. */

import type { ChartSnapshotT, DotT } from "./schema.js";

export const CELL = 28;
export const MARGIN = 46;

export interface ViewDot {
  x: number;
  y: number;
  stem: number;
  filtration: number;
  glyph: string;
  title: string;
  selected: boolean;
}

export interface ViewLine {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  style: "solid" | "dashed";
  color: string;
  label: string;
}

export interface ChartViewModel {
  width: number;
  height: number;
  page: number;
  dots: ViewDot[];
  lines: ViewLine[];
  legend: string[];
  banner: string | null;
}

export interface UiState {
  selection: { stem: number; filtration: number } | null;
  draftError: string | null;
}

export const EMPTY_UI: UiState = { selection: null, draftError: null };

function placer(snapshot: ChartSnapshotT) {
  const { stem_min, filt_max } = snapshot.window;
  return (stem: number, filtration: number): [number, number] => [
    MARGIN + (stem - stem_min) * CELL,
    MARGIN + (filt_max - filtration) * CELL,
  ];
}

const EXOTIC_COLORS: Record<string, string> = {
  restriction: "green",
  transfer: "blue",
};

export function buildViewModel(
  snapshot: ChartSnapshotT,
  ui: UiState = EMPTY_UI,
): ChartViewModel {
  const { stem_min, stem_max, filt_min, filt_max } = snapshot.window;
  const at = placer(snapshot);
  const dots: ViewDot[] = snapshot.dots.map((d: DotT) => {
    const [x, y] = at(d.stem, d.filtration);
    return {
      x,
      y,
      stem: d.stem,
      filtration: d.filtration,
      glyph: d.mackey,
      title: d.names.concat(d.c2_names.map((n) => `res: ${n}`)).join(", "),
      selected:
        ui.selection !== null &&
        ui.selection.stem === d.stem &&
        ui.selection.filtration === d.filtration,
    };
  });
  const lines: ViewLine[] = [];
  for (const d of snapshot.diffs) {
    const [x1, y1] = at(d.from[0], d.from[1]);
    const [x2, y2] = at(d.to[0], d.to[1]);
    lines.push({
      x1,
      y1,
      x2,
      y2,
      style: "solid",
      color: "black",
      label: `d${d.page}: ${d.source} -> ${d.target}`,
    });
  }
  for (const e of snapshot.exotic) {
    const [x1, y1] = at(e.stem, e.from);
    const [x2, y2] = at(e.stem, e.to);
    lines.push({
      x1,
      y1,
      x2,
      y2,
      style: "dashed",
      color: EXOTIC_COLORS[e.kind] ?? "gray",
      label: `exotic ${e.kind} (jump ${e.jump}): ${e.source} -> ${e.target}`,
    });
  }
  const glyphs = [...new Set(snapshot.dots.map((d) => d.mackey))].sort();
  return {
    width: 2 * MARGIN + (stem_max - stem_min) * CELL,
    height: 2 * MARGIN + (filt_max - filt_min) * CELL,
    page: snapshot.page,
    dots,
    lines,
    legend: glyphs,
    banner: ui.draftError,
  };
}

/** Stable serialization used by the replay-equality tests. */
export function serializeViewModel(vm: ChartViewModel): string {
  return JSON.stringify(vm);
}
