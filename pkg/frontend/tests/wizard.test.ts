import { describe, expect, it } from "vitest";
import {
  acceptFits,
  formatFit,
  isReady,
  newWizard,
  orderingViolations,
  recordAnswer,
  toPoints,
} from "../src/wizard";
import { FitResponse, ThresholdFit } from "../src/types";
import worked from "./fixtures/fit-worked-example.json";
import flat from "./fixtures/fit-constant.json";

const NAMES = ["t_prime", "t", "u"];

function answeredWizard() {
  let state = newWizard("Empathy", [70, 135], NAMES);
  state = recordAnswer(state, "t_prime", 0, 10);
  state = recordAnswer(state, "t_prime", 1, 20);
  state = recordAnswer(state, "t", 0, 10);
  state = recordAnswer(state, "t", 1, 25);
  state = recordAnswer(state, "u", 0, 20);
  state = recordAnswer(state, "u", 1, 40);
  return state;
}

describe("threshold probe wizard", () => {
  it("serializes the worked probes to the exact points request", () => {
    const state = answeredWizard();
    expect(isReady(state)).toBe(true);
    expect(toPoints(state)).toEqual(worked.request.points);
  });

  it("shows a level-dependent fit the way the analyst reads it", () => {
    const fit = worked.response.thresholds.t_prime as ThresholdFit;
    expect(formatFit(fit)).toBe("2/13·g(b) − 10/13");
  });

  it("labels equal answers as constant", () => {
    const fit = flat.response.thresholds.t as ThresholdFit;
    expect(formatFit(fit)).toBe("constant 15");
  });

  it("keeps a positive intercept readable", () => {
    expect(formatFit({ kind: "affine", slope: "1/2", intercept: "3" })).toBe("1/2·g(b) + 3");
    expect(formatFit({ kind: "affine", slope: "1/2", intercept: "0" })).toBe("1/2·g(b)");
  });

  it("flags an ordering violation as soon as it appears", () => {
    let state = newWizard("Empathy", [70, 135], NAMES);
    state = recordAnswer(state, "t", 0, 10);
    expect(orderingViolations(state)).toEqual([]);
    state = recordAnswer(state, "u", 0, 5);
    const violations = orderingViolations(state);
    expect(violations).toHaveLength(1);
    expect(violations[0]).toContain("u < t");
    expect(violations[0]).toContain("70");
    expect(isReady(state)).toBe(false);
  });

  it("rejects negative distances", () => {
    let state = newWizard("Empathy", [70, 135], NAMES);
    state = recordAnswer(state, "t", 0, -4);
    expect(orderingViolations(state)[0]).toContain("cannot be negative");
  });

  it("drops stale fits when an answer changes", () => {
    let state = answeredWizard();
    state = acceptFits(state, worked.response as FitResponse);
    expect(state.fits).not.toBeNull();
    state = recordAnswer(state, "u", 1, 45);
    expect(state.fits).toBeNull();
  });

  it("refuses to serialize unanswered probes", () => {
    const state = newWizard("Empathy", [70, 135], NAMES);
    expect(() => toPoints(state)).toThrow(/not fully answered/);
  });
});
