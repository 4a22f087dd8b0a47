import { describe, expect, it } from "vitest";

import {
  fmtCoord,
  fmtLikelihood,
  groupColor,
  UNGROUPED_COLOR,
} from "../src/format.js";

describe("fmtLikelihood", () => {
  it("renders exactly three decimals", () => {
    expect(fmtLikelihood(2 / 3)).toBe("0.667");
    expect(fmtLikelihood(1 / 3)).toBe("0.333");
    expect(fmtLikelihood(1)).toBe("1.000");
    expect(fmtLikelihood(0)).toBe("0.000");
    expect(fmtLikelihood(0.0004)).toBe("0.000");
  });

  it("keeps displayed sums within half-ulp-per-entry of 1", () => {
    const cases = [
      [1],
      [2 / 3, 1 / 3],
      [6 / 13, 4 / 13, 3 / 13],
      [0.2505, 0.2505, 0.2495, 0.2495],
      Array.from({ length: 7 }, () => 1 / 7),
    ];
    for (const likelihoods of cases) {
      const displayed = likelihoods.map((x) => Number(fmtLikelihood(x)));
      const sum = displayed.reduce((a, b) => a + b, 0);
      expect(Math.abs(sum - 1)).toBeLessThanOrEqual(
        0.0005 * likelihoods.length + 1e-9,
      );
    }
  });
});

describe("fmtCoord", () => {
  it("trims trailing zeros at two decimals", () => {
    expect(fmtCoord(2.2)).toBe("2.2");
    expect(fmtCoord(7.5)).toBe("7.5");
    expect(fmtCoord(4)).toBe("4");
    expect(fmtCoord(4.25)).toBe("4.25");
    expect(fmtCoord(6.816666)).toBe("6.82");
  });
});

describe("groupColor", () => {
  it("keys colors off the server-provided group order", () => {
    const order = ["reptiles", "pets"];
    expect(groupColor("reptiles", order)).not.toBe(groupColor("pets", order));
    expect(groupColor("reptiles", order)).toBe(groupColor("reptiles", order));
  });

  it("maps ungrouped and unknown names to the neutral color", () => {
    expect(groupColor("", ["a"])).toBe(UNGROUPED_COLOR);
    expect(groupColor("mystery", ["a"])).toBe(UNGROUPED_COLOR);
  });
});
