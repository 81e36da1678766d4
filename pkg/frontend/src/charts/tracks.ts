/**
 * Side-by-side depth tracks, one per curve.
 *
 * Missing samples break the polyline, so a masked interval reads as a
 * visible gap. Selected rows get a depth marker across every track.
 * `<NAME>_PRED` tracks are placed right after their source curve and
 * drawn in the prediction style.
 */

import type { WellData } from "../api";
import { LinearScale, clampDepthRange } from "../geometry";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface TracksOptions {
  trackWidth?: number;
  height?: number;
}

export interface TracksRenderOptions {
  selectionRows?: number[];
  depthRange?: [number, number];
}

/** Order curves so each _PRED sits immediately after its source curve. */
export function orderTracks(names: string[]): string[] {
  const preds = new Set(names.filter((n) => n.endsWith("_PRED")));
  const out: string[] = [];
  for (const name of names) {
    if (preds.has(name)) continue;
    out.push(name);
    if (preds.has(`${name}_PRED`)) out.push(`${name}_PRED`);
  }
  for (const p of preds) {
    if (!out.includes(p)) out.push(p);
  }
  return out;
}

export class LogTracks {
  private readonly trackWidth: number;
  private readonly height: number;

  constructor(private readonly container: HTMLElement, opts: TracksOptions = {}) {
    this.trackWidth = opts.trackWidth ?? 110;
    this.height = opts.height ?? 420;
    this.container.classList.add("tracks");
  }

  render(data: WellData, opts: TracksRenderOptions = {}): void {
    this.container.replaceChildren();
    const depth = data.depth;
    if (depth.length === 0) return;
    const [dLo, dHi] = clampDepthRange(
      opts.depthRange?.[0] ?? depth[0],
      opts.depthRange?.[1] ?? depth[depth.length - 1],
      depth[0],
      depth[depth.length - 1],
    );
    const depthScale = new LinearScale(dLo, dHi, 12, this.height - 12);
    const selected = new Set(opts.selectionRows ?? []);
    const names = orderTracks(Object.keys(data.curves));

    for (const name of names) {
      const curve = data.curves[name];
      const wrap = document.createElement("div");
      wrap.className = "track";
      wrap.dataset.curve = name;

      const title = document.createElement("div");
      title.className = "track-title" + (name.endsWith("_PRED") ? " pred" : "");
      title.textContent = curve.unit ? `${name} (${curve.unit})` : name;
      wrap.appendChild(title);

      const svg = document.createElementNS(SVG_NS, "svg");
      svg.setAttribute("width", String(this.trackWidth));
      svg.setAttribute("height", String(this.height));
      svg.setAttribute("class", name.endsWith("_PRED") ? "curve pred" : "curve");

      // Value scale over the visible depth window.
      let vMin = Infinity;
      let vMax = -Infinity;
      for (let i = 0; i < depth.length; i++) {
        const v = curve.values[i];
        if (v === null || depth[i] < dLo || depth[i] > dHi) continue;
        if (v < vMin) vMin = v;
        if (v > vMax) vMax = v;
      }
      if (!isFinite(vMin)) {
        vMin = 0;
        vMax = 1;
      }
      if (vMin === vMax) {
        vMin -= 0.5;
        vMax += 0.5;
      }
      const valueScale = new LinearScale(vMin, vMax, 6, this.trackWidth - 6);

      // Polyline segments; a null value or window exit breaks the line.
      let segment: string[] = [];
      let segments = 0;
      const flush = () => {
        if (segment.length >= 2) {
          const line = document.createElementNS(SVG_NS, "polyline");
          line.setAttribute("points", segment.join(" "));
          svg.appendChild(line);
          segments += 1;
        }
        segment = [];
      };
      for (let i = 0; i < depth.length; i++) {
        const v = curve.values[i];
        if (v === null || depth[i] < dLo || depth[i] > dHi) {
          flush();
          continue;
        }
        segment.push(
          `${valueScale.apply(v).toFixed(1)},${depthScale.apply(depth[i]).toFixed(1)}`,
        );
      }
      flush();
      svg.setAttribute("data-segments", String(segments));

      // Selection markers across the full track width.
      for (const row of selected) {
        const d = depth[row];
        if (d === undefined || d < dLo || d > dHi) continue;
        const y = depthScale.apply(d).toFixed(1);
        const marker = document.createElementNS(SVG_NS, "line");
        marker.setAttribute("class", "marker");
        marker.setAttribute("x1", "0");
        marker.setAttribute("x2", String(this.trackWidth));
        marker.setAttribute("y1", y);
        marker.setAttribute("y2", y);
        marker.setAttribute("data-row", String(row));
        svg.appendChild(marker);
      }

      wrap.appendChild(svg);
      const range = document.createElement("div");
      range.className = "track-range";
      range.textContent = `${dLo.toFixed(1)}–${dHi.toFixed(1)} ${data.depth_unit}`;
      wrap.appendChild(range);
      this.container.appendChild(wrap);
    }
  }

  trackFor(name: string): HTMLElement | null {
    return this.container.querySelector(`[data-curve="${name}"]`);
  }

  trackNames(): string[] {
    return Array.from(this.container.querySelectorAll<HTMLElement>(".track")).map(
      (el) => el.dataset.curve ?? "",
    );
  }

  segmentsFor(name: string): number {
    const track = this.trackFor(name);
    const svg = track?.querySelector("svg");
    return svg ? Number(svg.getAttribute("data-segments")) : 0;
  }

  markerRowsFor(name: string): number[] {
    const track = this.trackFor(name);
    if (!track) return [];
    return Array.from(track.querySelectorAll("line.marker")).map((el) =>
      Number(el.getAttribute("data-row")),
    );
  }
}
