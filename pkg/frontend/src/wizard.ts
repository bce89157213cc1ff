// Threshold probe wizard state. The analyst answers, at a low and a
// high reference level, how far a performance may drift before it stops
// feeling identical (t), starts feeling clearly different (u), and
// loses any resemblance (v); primed names cover drops, unprimed rises.
// The fixed points go to the server for fitting, and the wizard shows
// whether each boundary came back constant or level-dependent.

import { FitResponse, ThresholdFit, ThresholdPoint } from "./types";

export const PROBE_ORDER = ["t_prime", "t", "u", "u_prime", "v", "v_prime"];

export const PROBE_LABELS: Record<string, string> = {
  t: "largest rise that still feels identical",
  t_prime: "largest drop that still feels identical",
  u: "smallest rise that feels clearly different",
  u_prime: "smallest drop that feels clearly different",
  v: "rise beyond any resemblance",
  v_prime: "drop beyond any resemblance",
};

// boundaries must widen along each side of zero
const CHAINS = [
  ["t", "u", "v"],
  ["t_prime", "u_prime", "v_prime"],
];

export interface WizardState {
  criterion: string;
  levels: [number, number];
  names: string[];
  answers: Record<string, [number | null, number | null]>;
  fits: Record<string, ThresholdFit> | null;
}

export function newWizard(criterion: string, levels: [number, number], names: string[] = PROBE_ORDER): WizardState {
  const answers: WizardState["answers"] = {};
  for (const name of names) answers[name] = [null, null];
  return { criterion, levels, names, answers, fits: null };
}

export function recordAnswer(state: WizardState, name: string, levelIndex: 0 | 1, difference: number): WizardState {
  if (!(name in state.answers)) return state;
  const pair: [number | null, number | null] = [...state.answers[name]];
  pair[levelIndex] = difference;
  // any change invalidates fits already shown
  return { ...state, answers: { ...state.answers, [name]: pair }, fits: null };
}

export function orderingViolations(state: WizardState): string[] {
  const messages: string[] = [];
  for (const name of state.names) {
    for (const value of state.answers[name]) {
      if (value !== null && value < 0) {
        messages.push(`${name}: a boundary distance cannot be negative`);
      }
    }
  }
  for (const chain of CHAINS) {
    const present = chain.filter((name) => state.names.includes(name));
    for (let i = 1; i < present.length; i++) {
      const inner = present[i - 1];
      const outer = present[i];
      for (const levelIndex of [0, 1] as const) {
        const a = state.answers[inner][levelIndex];
        const b = state.answers[outer][levelIndex];
        if (a !== null && b !== null && b < a) {
          messages.push(
            `${outer} < ${inner} at level ${state.levels[levelIndex]}: zone boundaries must not shrink outward`,
          );
        }
      }
    }
  }
  return messages;
}

export function isReady(state: WizardState): boolean {
  const answered = state.names.every(
    (name) => state.answers[name][0] !== null && state.answers[name][1] !== null,
  );
  return answered && orderingViolations(state).length === 0;
}

// Serializes to the exact points schema of the fitting endpoint.
export function toPoints(state: WizardState): ThresholdPoint[] {
  const points: ThresholdPoint[] = [];
  for (const name of state.names) {
    for (const levelIndex of [0, 1] as const) {
      const difference = state.answers[name][levelIndex];
      if (difference === null) throw new Error(`probe ${name} is not fully answered`);
      points.push({ threshold: name, level: state.levels[levelIndex], difference });
    }
  }
  return points;
}

export function acceptFits(state: WizardState, response: FitResponse): WizardState {
  return { ...state, fits: response.thresholds };
}

// Renders a server fit for display, e.g. "2/13·g(b) − 10/13".
export function formatFit(fit: ThresholdFit): string {
  if (fit.kind === "constant") return `constant ${fit.value}`;
  const slope = fit.slope ?? "";
  const intercept = fit.intercept ?? "0";
  if (intercept === "0") return `${slope}·g(b)`;
  const negative = intercept.startsWith("-");
  const magnitude = negative ? intercept.slice(1) : intercept;
  return `${slope}·g(b) ${negative ? "−" : "+"} ${magnitude}`;
}
