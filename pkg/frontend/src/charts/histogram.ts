/**
 * Histogram with an optional filtered overlay.
 *
 * Base and overlay bars come straight from the server response and share
 * the same edges, so the linked view lines up 1:1. Bar heights are a
 * pure presentation scaling of the server counts; no counting happens
 * here.
 */

import type { HistogramPayload } from "../api";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface HistogramOptions {
  width?: number;
  height?: number;
  margin?: number;
}

export class HistogramChart {
  readonly svg: SVGSVGElement;
  private readonly width: number;
  private readonly height: number;
  private readonly margin: number;

  constructor(container: HTMLElement, opts: HistogramOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 320;
    this.margin = opts.margin ?? 24;
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "histogram");
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));
    container.appendChild(this.svg);
  }

  render(payload: HistogramPayload): void {
    this.svg.replaceChildren();
    const counts = payload.counts;
    const filtered = payload.filtered;
    const n = counts.length;
    if (n === 0) return;
    const maxCount = Math.max(...counts, 1);
    const plotW = this.width - 2 * this.margin;
    const plotH = this.height - 2 * this.margin;
    const barW = plotW / n;

    for (let i = 0; i < n; i++) {
      const x = this.margin + i * barW;
      const h = (counts[i] / maxCount) * plotH;
      const bar = document.createElementNS(SVG_NS, "rect");
      bar.setAttribute("class", "bar-base");
      bar.setAttribute("x", x.toFixed(1));
      bar.setAttribute("y", (this.margin + plotH - h).toFixed(1));
      bar.setAttribute("width", Math.max(barW - 1, 0.5).toFixed(1));
      bar.setAttribute("height", h.toFixed(1));
      bar.setAttribute("data-count", String(counts[i]));
      bar.setAttribute("data-edge-lo", String(payload.edges[i]));
      bar.setAttribute("data-edge-hi", String(payload.edges[i + 1]));
      this.svg.appendChild(bar);

      if (filtered) {
        const fh = (filtered[i] / maxCount) * plotH;
        const overlay = document.createElementNS(SVG_NS, "rect");
        overlay.setAttribute("class", "bar-overlay");
        overlay.setAttribute("x", x.toFixed(1));
        overlay.setAttribute("y", (this.margin + plotH - fh).toFixed(1));
        overlay.setAttribute("width", Math.max(barW - 1, 0.5).toFixed(1));
        overlay.setAttribute("height", fh.toFixed(1));
        overlay.setAttribute("data-filtered", String(filtered[i]));
        this.svg.appendChild(overlay);
      }
    }
  }

  /** Server-reported overlay counts currently rendered, bin by bin. */
  overlayCounts(): number[] {
    return Array.from(this.svg.querySelectorAll("rect.bar-overlay")).map((el) =>
      Number(el.getAttribute("data-filtered")),
    );
  }

  baseCounts(): number[] {
    return Array.from(this.svg.querySelectorAll("rect.bar-base")).map((el) =>
      Number(el.getAttribute("data-count")),
    );
  }
}
