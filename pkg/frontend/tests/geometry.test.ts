import { describe, expect, it } from "vitest";

import {
  LinearScale,
  clampDepthRange,
  clampRect,
  dragToRect,
  extentOf,
} from "../src/geometry";
import { orderTracks } from "../src/charts/tracks";

describe("LinearScale", () => {
  it("maps domain ends to range ends and inverts", () => {
    const s = new LinearScale(0, 10, 100, 200);
    expect(s.apply(0)).toBe(100);
    expect(s.apply(10)).toBe(200);
    expect(s.apply(5)).toBe(150);
    expect(s.invert(150)).toBeCloseTo(5, 12);
  });

  it("handles inverted pixel ranges (y axes)", () => {
    const s = new LinearScale(0, 10, 200, 100);
    expect(s.apply(0)).toBe(200);
    expect(s.apply(10)).toBe(100);
  });

  it("degenerate domain maps to range midpoint", () => {
    const s = new LinearScale(5, 5, 0, 100);
    expect(s.apply(5)).toBe(50);
  });
});

describe("brush rect math", () => {
  it("normalizes drags given in any corner order", () => {
    expect(dragToRect(10, 20, 3, 4)).toEqual({ xLo: 3, xHi: 10, yLo: 4, yHi: 20 });
  });

  it("clamps to the plotted extent (ViewState invariant)", () => {
    const rect = clampRect(
      { xLo: -50, xHi: 500, yLo: 2, yHi: 3 },
      { xMin: 0, xMax: 100, yMin: 0, yMax: 10 },
    );
    expect(rect).toEqual({ xLo: 0, xHi: 100, yLo: 2, yHi: 3 });
  });

  it("extent of point clouds", () => {
    expect(extentOf([1, 5, -2], [0, 9, 4])).toEqual({
      xMin: -2,
      xMax: 5,
      yMin: 0,
      yMax: 9,
    });
  });
});

describe("depth zoom", () => {
  it("clamps the requested window to well bounds", () => {
    expect(clampDepthRange(900, 99999, 1000, 5999.5)).toEqual([1000, 5999.5]);
    expect(clampDepthRange(2000, 2500, 1000, 5999.5)).toEqual([2000, 2500]);
  });

  it("repairs reversed inputs", () => {
    expect(clampDepthRange(2500, 2000, 1000, 5999.5)).toEqual([2000, 2500]);
  });
});

describe("track ordering", () => {
  it("places _PRED right after its source curve", () => {
    expect(orderTracks(["GR", "DTS", "FRACTURE", "FRACTURE_PRED"])).toEqual([
      "GR",
      "DTS",
      "FRACTURE",
      "FRACTURE_PRED",
    ]);
    expect(orderTracks(["FRACTURE_PRED", "GR", "FRACTURE"])).toEqual([
      "GR",
      "FRACTURE",
      "FRACTURE_PRED",
    ]);
  });

  it("keeps orphan predictions at the end", () => {
    expect(orderTracks(["GR", "DTS_PRED"])).toEqual(["GR", "DTS_PRED"]);
  });
});
