/**
 * Single-page orchestrator: upload, linked cross-plot + histogram
 * brushing, outlier review/removal with undo, log tracks with prediction
 * overlay, and the train/predict/export panel.
 *
 * All numbers on screen are server responses; this file only routes
 * payloads between the API client and the chart components.
 */

import {
  ApiClient,
  ApiError,
  Inventory,
  ModelSummary,
  Selection,
  WellData,
} from "./api";
import { HistogramChart } from "./charts/histogram";
import { ScatterPlot } from "./charts/scatter";
import { LogTracks } from "./charts/tracks";
import type { DataSpaceRect } from "./geometry";
import { ModelPanel } from "./panels/model";
import { OutlierPanel } from "./panels/outliers";
import { UploadPanel } from "./panels/upload";
import { ViewState, initialState } from "./state";

const HIST_BINS = 40;

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    const where = err.where !== undefined ? ` (at ${err.where})` : "";
    return `${err.code}: ${err.message}${where}`;
  }
  return String(err);
}

export class App {
  readonly state: ViewState = initialState();
  readonly api: ApiClient;

  readonly upload: UploadPanel;
  readonly scatter: ScatterPlot;
  readonly histogram: HistogramChart;
  readonly tracks: LogTracks;
  readonly outliers: OutlierPanel;
  readonly models: ModelPanel;

  /** Brush -> server -> overlay render time for the last brush, in ms. */
  lastBrushLatencyMs: number | null = null;

  private inventory: Inventory | null = null;
  private wellData: WellData | null = null;
  private activeSelection: Selection | null = null;

  constructor(private readonly root: HTMLElement, api?: ApiClient) {
    this.api = api ?? new ApiClient("");
    this.root.innerHTML = `
      <header><h1>mlogs workbench</h1><span id="revision-badge"></span></header>
      <main>
        <section id="upload-section"><h2>Wells</h2>
          <div id="upload-host"></div>
          <table id="well-table"></table>
        </section>
        <section id="explore-section"><h2>Cross-plot &amp; histogram</h2>
          <div class="chart-controls">
            <label>well <select id="well-select"></select></label>
            <label>x <select id="x-select"></select></label>
            <label>y <select id="y-select"></select></label>
            <label>histogram <select id="hist-select"></select></label>
            <span id="brush-latency" class="status"></span>
          </div>
          <div class="chart-row">
            <div id="scatter-host"></div>
            <div id="histogram-host"></div>
          </div>
        </section>
        <section id="outlier-section"><h2>Outlier review</h2>
          <div id="outlier-host"></div>
        </section>
        <section id="tracks-section"><h2>Log tracks</h2>
          <div class="chart-controls">
            <label>from <input id="depth-lo" type="number" step="any" /></label>
            <label>to <input id="depth-hi" type="number" step="any" /></label>
            <button id="depth-apply">Zoom</button>
            <button id="depth-reset">Reset</button>
          </div>
          <div id="tracks-host"></div>
        </section>
        <section id="model-section"><h2>Model &amp; prediction</h2>
          <div id="model-host"></div>
        </section>
      </main>
    `;

    this.upload = new UploadPanel(
      this.root.querySelector("#upload-host")!,
      (files) => void this.uploadFiles(files),
    );
    this.scatter = new ScatterPlot(this.root.querySelector("#scatter-host")!, {
      onBrushEnd: (rect) => void this.onBrushEnd(rect),
    });
    this.histogram = new HistogramChart(this.root.querySelector("#histogram-host")!);
    this.tracks = new LogTracks(this.root.querySelector("#tracks-host")!);
    this.outliers = new OutlierPanel(this.root.querySelector("#outlier-host")!, {
      onFlag: (method, curve, param) => void this.flagOutliers(method, curve, param),
      onApply: (mode, excluded) => void this.applyRemoval(mode, excluded),
      onUndo: () => void this.undo(),
    });
    this.models = new ModelPanel(this.root.querySelector("#model-host")!, {
      onTrain: (body) => void this.train(body),
      onPredict: (modelId, wellId) => void this.predict(modelId, wellId),
    });

    for (const id of ["well-select", "x-select", "y-select", "hist-select"]) {
      this.root
        .querySelector<HTMLSelectElement>(`#${id}`)!
        .addEventListener("change", () => void this.onSelectorChange());
    }
    this.root
      .querySelector<HTMLButtonElement>("#depth-apply")!
      .addEventListener("click", () => void this.zoomTracks());
    this.root
      .querySelector<HTMLButtonElement>("#depth-reset")!
      .addEventListener("click", () => void this.resetZoom());
  }

  // -- lifecycle ---------------------------------------------------------

  async init(projectName = "workbench"): Promise<void> {
    const project = await this.api.createProject(projectName);
    this.state.projectId = project.id;
    this.state.revision = project.revision;
    this.renderRevision();
  }

  private requireProject(): string {
    if (!this.state.projectId) throw new Error("no active project");
    return this.state.projectId;
  }

  // -- upload + inventory ----------------------------------------------------

  async uploadFiles(files: File[]): Promise<void> {
    const pid = this.requireProject();
    for (const file of files) {
      try {
        this.upload.setStatus(`uploading ${file.name}…`);
        const res = await this.api.uploadLas(pid, file, file.name);
        this.state.revision = res.revision;
        this.upload.setStatus(`loaded ${file.name}: well ${res.well.name}`);
      } catch (err) {
        this.upload.setStatus(`${file.name}: ${describeError(err)}`, true);
      }
    }
    await this.refreshInventory();
  }

  async refreshInventory(): Promise<void> {
    const pid = this.requireProject();
    this.inventory = await this.api.wells(pid);
    this.state.revision = this.inventory.revision;
    this.renderRevision();
    this.renderWellTable();
    this.populateSelectors();
    this.models.setInventory(this.inventory);
    this.renderDownloadLinks();
    if (this.state.wellId) await this.refreshWellViews();
  }

  private renderWellTable(): void {
    const table = this.root.querySelector<HTMLTableElement>("#well-table")!;
    if (!this.inventory) return;
    table.innerHTML =
      "<tr><th>well</th><th>rows</th><th>depth</th><th>curves</th></tr>" +
      this.inventory.wells
        .map(
          (w) => `
      <tr data-well-id="${w.id}">
        <td>${w.name}</td><td>${w.n_rows}</td>
        <td>${w.depth_start ?? "?"}–${w.depth_stop ?? "?"} ${w.depth_unit}</td>
        <td>${w.curves.map((c) => `${c.name}(${c.n})`).join(" ")}</td>
      </tr>`,
        )
        .join("");
  }

  private populateSelectors(): void {
    if (!this.inventory) return;
    const wellSelect = this.root.querySelector<HTMLSelectElement>("#well-select")!;
    const current = this.state.wellId;
    wellSelect.replaceChildren(
      ...this.inventory.wells.map((w) => new Option(w.name, w.id)),
    );
    if (current && this.inventory.wells.some((w) => w.id === current)) {
      wellSelect.value = current;
    }
    this.state.wellId = wellSelect.value || null;

    const well = this.inventory.wells.find((w) => w.id === this.state.wellId);
    const names = well?.curves.map((c) => c.name) ?? [];
    for (const [id, fallback] of [
      ["x-select", 0],
      ["y-select", 1],
      ["hist-select", 1],
    ] as const) {
      const select = this.root.querySelector<HTMLSelectElement>(`#${id}`)!;
      const prev = select.value;
      select.replaceChildren(...names.map((n) => new Option(n, n)));
      select.value = names.includes(prev) ? prev : names[Math.min(fallback, names.length - 1)] ?? "";
    }
    this.outliers.setCurves(names);
  }

  private async onSelectorChange(): Promise<void> {
    const wellSelect = this.root.querySelector<HTMLSelectElement>("#well-select")!;
    if (wellSelect.value !== this.state.wellId) {
      this.state.wellId = wellSelect.value;
      this.state.selectionId = null;
      this.activeSelection = null;
      this.state.brushRect = null;
      this.populateSelectors();
    }
    this.state.xCurve = this.root.querySelector<HTMLSelectElement>("#x-select")!.value;
    this.state.yCurve = this.root.querySelector<HTMLSelectElement>("#y-select")!.value;
    this.state.histCurve =
      this.root.querySelector<HTMLSelectElement>("#hist-select")!.value;
    await this.refreshWellViews();
  }

  /** Re-render scatter, histogram, tracks, and the outlier table. */
  async refreshWellViews(): Promise<void> {
    const pid = this.requireProject();
    const wid = this.state.wellId;
    if (!wid) return;
    if (!this.state.xCurve || !this.state.yCurve || !this.state.histCurve) {
      await this.onSelectorChange();
      return;
    }
    const [scatterRes, histRes, data] = await Promise.all([
      this.api.scatter(pid, wid, this.state.xCurve, this.state.yCurve),
      this.api.histogram(
        pid,
        wid,
        this.state.histCurve,
        HIST_BINS,
        this.state.selectionId ?? undefined,
      ),
      this.api.wellData(pid, wid),
    ]);
    this.state.revision = histRes.revision;
    this.wellData = data;
    this.state.trackCurves = Object.keys(data.curves);
    this.scatter.render(scatterRes.payload);
    this.histogram.render(histRes.payload);
    this.renderTracks();
    this.outliers.showSelection(this.activeSelection, this.wellData);
    if (this.activeSelection) {
      this.scatter.setSelectedRows(this.activeSelection.rows);
    }
    this.renderRevision();
  }

  // -- linked brushing ----------------------------------------------------

  async onBrushEnd(rect: DataSpaceRect | null): Promise<void> {
    const pid = this.requireProject();
    const wid = this.state.wellId;
    if (!wid || !this.state.xCurve || !this.state.yCurve || !this.state.histCurve)
      return;
    this.state.brushRect = rect;
    const started = performance.now();
    if (rect === null) {
      this.state.selectionId = null;
      this.activeSelection = null;
      await this.refreshWellViews();
      return;
    }
    const saved = await this.api.brushSelect(pid, wid, {
      x_curve: this.state.xCurve,
      y_curve: this.state.yCurve,
      x_lo: rect.xLo,
      x_hi: rect.xHi,
      y_lo: rect.yLo,
      y_hi: rect.yHi,
    });
    this.activeSelection = saved.selection;
    this.state.selectionId = saved.selection.id;
    const histRes = await this.api.histogram(
      pid,
      wid,
      this.state.histCurve,
      HIST_BINS,
      saved.selection.id,
    );
    this.histogram.render(histRes.payload);
    // The linked-view contract is brush -> overlay; stamp the latency as
    // soon as the overlay is on screen, then refresh the slower views.
    this.lastBrushLatencyMs = performance.now() - started;
    this.root.querySelector("#brush-latency")!.textContent =
      `${saved.selection.rows.length} selected in ${this.lastBrushLatencyMs.toFixed(0)} ms`;
    this.scatter.setSelectedRows(saved.selection.rows);
    this.renderTracks();
    this.outliers.showSelection(this.activeSelection, this.wellData);
    this.state.revision = histRes.revision;
    this.renderRevision();
  }

  // -- outlier workflow -----------------------------------------------------

  async flagOutliers(
    method: "zscore" | "iqr",
    curve: string,
    param: number,
  ): Promise<void> {
    const pid = this.requireProject();
    const wid = this.state.wellId;
    if (!wid) return;
    try {
      const payload =
        method === "zscore" ? { threshold: param } : { k: param };
      const saved = await this.api.methodSelect(pid, wid, method, curve, payload);
      this.activeSelection = saved.selection;
      this.state.selectionId = saved.selection.id;
      this.state.revision = saved.revision;
      await this.refreshWellViews();
      this.outliers.showReport(
        `${saved.selection.rows.length} rows flagged by ${method}(${curve})`,
      );
    } catch (err) {
      this.outliers.showReport(describeError(err), true);
    }
  }

  async applyRemoval(mode: "mask" | "drop", excludedRows: number[]): Promise<void> {
    const pid = this.requireProject();
    if (!this.activeSelection || !this.state.wellId) return;
    try {
      let selectionId = this.activeSelection.id;
      if (excludedRows.length > 0) {
        // The reviewer kept some flagged rows: apply the shrunken set.
        const excluded = new Set(excludedRows);
        const kept = this.activeSelection.rows.filter((r) => !excluded.has(r));
        const saved = await this.api.rowsSelect(pid, this.state.wellId, kept);
        selectionId = saved.selection.id;
      }
      const res = await this.api.applySelection(pid, selectionId, mode);
      this.state.revision = res.revision;
      this.outliers.showReport(
        `applied ${mode}: ${res.report.rows} rows, ${res.report.cells} cells`,
      );
      this.state.selectionId = null;
      this.activeSelection = null;
      await this.refreshInventory();
    } catch (err) {
      this.outliers.showReport(describeError(err), true);
    }
  }

  async undo(): Promise<void> {
    const pid = this.requireProject();
    if (!this.state.wellId) return;
    try {
      const res = await this.api.undo(pid, this.state.wellId);
      this.state.revision = res.revision;
      this.outliers.showReport("undo applied");
      await this.refreshInventory();
    } catch (err) {
      this.outliers.showReport(describeError(err), true);
    }
  }

  // -- tracks -------------------------------------------------------------

  private renderTracks(): void {
    if (!this.wellData) return;
    this.tracks.render(this.wellData, {
      selectionRows: this.activeSelection?.rows ?? [],
      depthRange: this.state.depthRange ?? undefined,
    });
  }

  async zoomTracks(): Promise<void> {
    const lo = Number(this.root.querySelector<HTMLInputElement>("#depth-lo")!.value);
    const hi = Number(this.root.querySelector<HTMLInputElement>("#depth-hi")!.value);
    if (Number.isFinite(lo) && Number.isFinite(hi)) {
      this.state.depthRange = [lo, hi];
      this.renderTracks();
    }
  }

  async resetZoom(): Promise<void> {
    this.state.depthRange = null;
    this.renderTracks();
  }

  // -- models ---------------------------------------------------------------

  async train(body: {
    features: string[];
    target: string;
    kind: string;
    k: number;
    split_fraction: number;
  }): Promise<void> {
    const pid = this.requireProject();
    try {
      this.models.setStatus("training…");
      const res = await this.api.train(pid, body);
      this.state.revision = res.revision;
      this.models.setStatus(`trained ${res.model.kind} → ${res.model.target}`);
      await this.refreshModels();
    } catch (err) {
      this.models.setStatus(describeError(err), true);
    }
  }

  async refreshModels(): Promise<void> {
    const pid = this.requireProject();
    const res = await fetch(`${this.api.base}/projects/${pid}/models`);
    const body = (await res.json()) as { models: ModelSummary[] };
    this.models.showModels(body.models);
  }

  async predict(modelId: string, wellId: string): Promise<void> {
    const pid = this.requireProject();
    try {
      const res = await this.api.predict(pid, modelId, wellId);
      this.state.revision = res.revision;
      this.models.setStatus(
        `prediction added to ${res.well.name}; download below`,
      );
      await this.refreshInventory();
    } catch (err) {
      this.models.setStatus(describeError(err), true);
    }
  }

  private renderDownloadLinks(): void {
    if (!this.inventory || !this.state.projectId) return;
    const pid = this.state.projectId;
    const links = this.inventory.wells.map((w) => ({
      label: `${w.name}.las`,
      href: this.api.exportUrl(pid, "las", w.id),
      id: `download-las-${w.id}`,
    }));
    links.push({
      label: "all wells.csv",
      href: this.api.exportUrl(pid, "csv"),
      id: "download-csv",
    });
    this.models.showDownloads(links);
  }

  private renderRevision(): void {
    this.root.querySelector("#revision-badge")!.textContent =
      this.state.revision >= 0 ? `rev ${this.state.revision}` : "";
  }
}
