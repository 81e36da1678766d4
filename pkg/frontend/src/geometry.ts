/** Scales and brush-rectangle math shared by the charts. */

export interface Extent {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface DataSpaceRect {
  xLo: number;
  xHi: number;
  yLo: number;
  yHi: number;
}

/** Linear mapping between a data domain and a pixel range. */
export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {}

  apply(v: number): number {
    if (this.d1 === this.d0) return (this.r0 + this.r1) / 2;
    return this.r0 + ((v - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }

  invert(px: number): number {
    if (this.r1 === this.r0) return this.d0;
    return this.d0 + ((px - this.r0) / (this.r1 - this.r0)) * (this.d1 - this.d0);
  }
}

/** Normalize a drag so corners may be given in any order. */
export function dragToRect(
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): { xLo: number; xHi: number; yLo: number; yHi: number } {
  return {
    xLo: Math.min(x0, x1),
    xHi: Math.max(x0, x1),
    yLo: Math.min(y0, y1),
    yHi: Math.max(y0, y1),
  };
}

/** Keep the brush inside the plotted data extent (ViewState invariant). */
export function clampRect(rect: DataSpaceRect, extent: Extent): DataSpaceRect {
  const clamp = (v: number, lo: number, hi: number) => Math.min(Math.max(v, lo), hi);
  return {
    xLo: clamp(rect.xLo, extent.xMin, extent.xMax),
    xHi: clamp(rect.xHi, extent.xMin, extent.xMax),
    yLo: clamp(rect.yLo, extent.yMin, extent.yMax),
    yHi: clamp(rect.yHi, extent.yMin, extent.yMax),
  };
}

/** Clamp a requested depth window to the well's actual bounds. */
export function clampDepthRange(
  lo: number,
  hi: number,
  depthMin: number,
  depthMax: number,
): [number, number] {
  const a = Math.max(Math.min(lo, hi), depthMin);
  const b = Math.min(Math.max(lo, hi), depthMax);
  return [a, b];
}

export function extentOf(xs: number[], ys: number[]): Extent {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const v of xs) {
    if (v < xMin) xMin = v;
    if (v > xMax) xMax = v;
  }
  for (const v of ys) {
    if (v < yMin) yMin = v;
    if (v > yMax) yMax = v;
  }
  if (!isFinite(xMin)) {
    xMin = 0;
    xMax = 1;
  }
  if (!isFinite(yMin)) {
    yMin = 0;
    yMax = 1;
  }
  return { xMin, xMax, yMin, yMax };
}
