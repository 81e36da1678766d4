import type { DataSpaceRect } from "./geometry";

/** Everything the single-page app needs to re-render any view. */
export interface ViewState {
  projectId: string | null;
  wellId: string | null;
  xCurve: string | null;
  yCurve: string | null;
  histCurve: string | null;
  brushRect: DataSpaceRect | null;
  selectionId: string | null;
  trackCurves: string[];
  depthRange: [number, number] | null;
  revision: number;
}

export function initialState(): ViewState {
  return {
    projectId: null,
    wellId: null,
    xCurve: null,
    yCurve: null,
    histCurve: null,
    brushRect: null,
    selectionId: null,
    trackCurves: [],
    depthRange: null,
    revision: -1,
  };
}
