/**
 * Cross-plot with a rectangular mouse brush.
 *
 * The brush emits a *data-space* rectangle (clamped to the plotted
 * extent); membership is always resolved server-side so the UI and the
 * exports can never disagree about which points are selected.
 */

import type { ScatterPayload } from "../api";
import {
  DataSpaceRect,
  Extent,
  LinearScale,
  clampRect,
  dragToRect,
  extentOf,
} from "../geometry";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterOptions {
  width?: number;
  height?: number;
  margin?: number;
  onBrushEnd?: (rect: DataSpaceRect | null) => void;
}

export class ScatterPlot {
  readonly svg: SVGSVGElement;
  private readonly width: number;
  private readonly height: number;
  private readonly margin: number;
  private readonly pointsGroup: SVGGElement;
  private readonly brushVisual: SVGRectElement;
  private readonly xLabel: SVGTextElement;
  private readonly yLabel: SVGTextElement;

  private extent: Extent | null = null;
  private xScale: LinearScale | null = null;
  private yScale: LinearScale | null = null;
  private dragStart: [number, number] | null = null;

  constructor(container: HTMLElement, private readonly opts: ScatterOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 320;
    this.margin = opts.margin ?? 36;

    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "scatter");
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));

    this.pointsGroup = document.createElementNS(SVG_NS, "g");
    this.svg.appendChild(this.pointsGroup);

    this.brushVisual = document.createElementNS(SVG_NS, "rect");
    this.brushVisual.setAttribute("class", "brush-visual");
    this.brushVisual.setAttribute("display", "none");
    this.svg.appendChild(this.brushVisual);

    this.xLabel = document.createElementNS(SVG_NS, "text");
    this.xLabel.setAttribute("x", String(this.width / 2));
    this.xLabel.setAttribute("y", String(this.height - 4));
    this.xLabel.setAttribute("class", "axis-label");
    this.svg.appendChild(this.xLabel);

    this.yLabel = document.createElementNS(SVG_NS, "text");
    this.yLabel.setAttribute("x", "12");
    this.yLabel.setAttribute("y", String(this.height / 2));
    this.yLabel.setAttribute("class", "axis-label");
    this.yLabel.setAttribute(
      "transform",
      `rotate(-90 12 ${this.height / 2})`,
    );
    this.svg.appendChild(this.yLabel);

    this.svg.addEventListener("mousedown", (ev) => {
      this.dragStart = this.pixelOf(ev);
    });
    this.svg.addEventListener("mousemove", (ev) => {
      if (!this.dragStart) return;
      this.updateBrushVisual(this.dragStart, this.pixelOf(ev));
    });
    this.svg.addEventListener("mouseup", (ev) => {
      if (!this.dragStart) return;
      const start = this.dragStart;
      this.dragStart = null;
      const end = this.pixelOf(ev);
      this.handleDrag(start[0], start[1], end[0], end[1]);
    });

    container.appendChild(this.svg);
  }

  private pixelOf(ev: MouseEvent): [number, number] {
    const box = this.svg.getBoundingClientRect();
    return [ev.clientX - box.left, ev.clientY - box.top];
  }

  render(payload: ScatterPayload): void {
    this.xLabel.textContent = payload.x_name;
    this.yLabel.textContent = payload.y_name;
    this.extent = extentOf(payload.x, payload.y);
    this.xScale = new LinearScale(
      this.extent.xMin,
      this.extent.xMax,
      this.margin,
      this.width - this.margin,
    );
    // Pixel y grows downward; data y grows upward.
    this.yScale = new LinearScale(
      this.extent.yMin,
      this.extent.yMax,
      this.height - this.margin,
      this.margin,
    );

    this.pointsGroup.replaceChildren();
    for (let i = 0; i < payload.x.length; i++) {
      const c = document.createElementNS(SVG_NS, "circle");
      c.setAttribute("cx", this.xScale.apply(payload.x[i]).toFixed(1));
      c.setAttribute("cy", this.yScale.apply(payload.y[i]).toFixed(1));
      c.setAttribute("r", "2");
      c.setAttribute("data-row", String(payload.rows[i]));
      this.pointsGroup.appendChild(c);
    }
    this.clearBrushVisual();
  }

  /** Highlight the rows the server reported as selected. */
  setSelectedRows(rows: Iterable<number>): void {
    const selected = new Set(rows);
    for (const node of Array.from(this.pointsGroup.children)) {
      const row = Number(node.getAttribute("data-row"));
      node.setAttribute("class", selected.has(row) ? "selected" : "");
    }
  }

  /**
   * Finish a drag given pixel corners; converts to a clamped data-space
   * rect and emits it. A degenerate click (no motion) clears the brush.
   */
  handleDrag(px0: number, py0: number, px1: number, py1: number): void {
    if (!this.xScale || !this.yScale || !this.extent) return;
    this.clearBrushVisual();
    if (px0 === px1 && py0 === py1) {
      this.opts.onBrushEnd?.(null);
      return;
    }
    const raw = dragToRect(
      this.xScale.invert(px0),
      this.yScale.invert(py0),
      this.xScale.invert(px1),
      this.yScale.invert(py1),
    );
    const rect: DataSpaceRect = clampRect(raw, this.extent);
    this.opts.onBrushEnd?.(rect);
  }

  private updateBrushVisual(a: [number, number], b: [number, number]): void {
    const x = Math.min(a[0], b[0]);
    const y = Math.min(a[1], b[1]);
    this.brushVisual.setAttribute("x", String(x));
    this.brushVisual.setAttribute("y", String(y));
    this.brushVisual.setAttribute("width", String(Math.abs(a[0] - b[0])));
    this.brushVisual.setAttribute("height", String(Math.abs(a[1] - b[1])));
    this.brushVisual.removeAttribute("display");
  }

  private clearBrushVisual(): void {
    this.brushVisual.setAttribute("display", "none");
  }
}
