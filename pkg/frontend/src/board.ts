// Card-ranking board state. Criterion cards sit in columns ordered from
// least to most important; blank cards in the gaps widen the importance
// step. Pure data with copy-on-write operations, so the component layer
// only replays gestures and renders.

import { RankingRequest } from "./types";

export interface BoardState {
  columns: string[][];
  blanks: number[]; // blank cards in each gap, length columns.length - 1
  z: number;
  unplaced: string[];
}

export function newBoard(criteria: string[], z = 2): BoardState {
  return { columns: [[]], blanks: [], z, unplaced: [...criteria] };
}

export function addColumn(state: BoardState): BoardState {
  return {
    ...state,
    columns: [...state.columns, []],
    blanks: [...state.blanks, 0],
  };
}

export function placeCard(state: BoardState, criterion: string, column: number): BoardState {
  if (column < 0 || column >= state.columns.length) return state;
  const columns = state.columns.map((cards) => cards.filter((id) => id !== criterion));
  columns[column] = [...columns[column], criterion];
  return {
    ...state,
    columns,
    unplaced: state.unplaced.filter((id) => id !== criterion),
  };
}

export function returnCard(state: BoardState, criterion: string): BoardState {
  if (state.unplaced.includes(criterion)) return state;
  return {
    ...state,
    columns: state.columns.map((cards) => cards.filter((id) => id !== criterion)),
    unplaced: [...state.unplaced, criterion],
  };
}

export function removeColumn(state: BoardState, index: number): BoardState {
  if (state.columns.length === 1 || state.columns[index].length > 0) return state;
  const columns = state.columns.filter((_, i) => i !== index);
  // the gap on the removed side disappears with the column
  const blanks = state.blanks.filter((_, i) => i !== Math.min(index, state.blanks.length - 1));
  return { ...state, columns, blanks };
}

export function setBlanks(state: BoardState, gap: number, count: number): BoardState {
  if (gap < 0 || gap >= state.blanks.length) return state;
  const blanks = [...state.blanks];
  blanks[gap] = Math.max(0, Math.floor(count));
  return { ...state, blanks };
}

export function setZ(state: BoardState, z: number): BoardState {
  return { ...state, z };
}

export function isComplete(state: BoardState): boolean {
  return (
    state.unplaced.length === 0 &&
    state.columns.every((cards) => cards.length > 0) &&
    state.z > 1
  );
}

// Serializes to the exact request schema of the weight-computation
// endpoint. The board never submits with cards still on the side.
export function toRequest(state: BoardState): RankingRequest {
  if (!isComplete(state)) {
    throw new Error("the ranking is not finished: every card must sit in a non-empty column");
  }
  return {
    subsets: state.columns.map((cards) => [...cards]),
    blanks: [...state.blanks],
    z: state.z,
  };
}
