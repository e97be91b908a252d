/** Reducer over server messages and local ui actions.

The view is a pure function of this state, so replaying the same message
log always reproduces the same chart. */

import type { ChartSnapshotT } from "./schema.js";
import { buildViewModel, EMPTY_UI, type ChartViewModel, type UiState } from "./viewmodel.js";

export interface AppState {
  snapshot: ChartSnapshotT | null;
  ui: UiState;
  schemaError: string | null;
}

export const INITIAL: AppState = { snapshot: null, ui: EMPTY_UI, schemaError: null };

export type Action =
  | { type: "snapshot"; snapshot: ChartSnapshotT }
  | { type: "schema-error"; message: string }
  | { type: "select"; stem: number; filtration: number }
  | { type: "deselect" }
  | { type: "draft-error"; message: string }
  | { type: "draft-ok" };

export function reduce(state: AppState, action: Action): AppState {
  switch (action.type) {
    case "snapshot":
      return { snapshot: action.snapshot, ui: state.ui, schemaError: null };
    case "schema-error":
      return { ...state, schemaError: action.message };
    case "select":
      return {
        ...state,
        ui: { ...state.ui, selection: { stem: action.stem, filtration: action.filtration } },
      };
    case "deselect":
      return { ...state, ui: { ...state.ui, selection: null } };
    case "draft-error":
      return { ...state, ui: { ...state.ui, draftError: action.message } };
    case "draft-ok":
      return { ...state, ui: { ...state.ui, draftError: null } };
  }
}

const EMPTY_VM: ChartViewModel = {
  width: 0,
  height: 0,
  page: 0,
  dots: [],
  lines: [],
  legend: [],
  banner: null,
};

export function view(state: AppState): ChartViewModel {
  if (state.schemaError !== null) {
    return { ...EMPTY_VM, banner: `schema mismatch: ${state.schemaError}` };
  }
  if (state.snapshot === null) {
    return EMPTY_VM;
  }
  return buildViewModel(state.snapshot, state.ui);
}
