/**
 * Outlier review: flag rows statistically or by brush, inspect the
 * flagged depths/values, decide per row, then apply mask/drop or undo.
 */

import type { Selection, WellData } from "../api";

export interface OutlierHandlers {
  onFlag: (method: "zscore" | "iqr", curve: string, param: number) => void;
  /** excludedRows are flagged rows the reviewer unticked (kept as data). */
  onApply: (mode: "mask" | "drop", excludedRows: number[]) => void;
  onUndo: () => void;
}

export class OutlierPanel {
  readonly element: HTMLElement;
  private readonly tableHost: HTMLElement;
  private readonly reportLine: HTMLElement;
  private readonly curveSelect: HTMLSelectElement;
  private readonly methodSelect: HTMLSelectElement;
  private readonly paramInput: HTMLInputElement;
  private readonly modeSelect: HTMLSelectElement;

  constructor(container: HTMLElement, handlers: OutlierHandlers) {
    this.element = document.createElement("div");
    this.element.className = "outlier-panel";
    this.element.innerHTML = `
      <div class="flag-controls">
        <select id="flag-method">
          <option value="iqr">IQR fence</option>
          <option value="zscore">z-score</option>
        </select>
        <select id="flag-curve"></select>
        <input id="flag-param" type="number" step="0.1" value="1.5" title="k / threshold" />
        <button id="flag-button">Flag outliers</button>
      </div>
      <div id="flag-table"></div>
      <div class="apply-controls">
        <select id="apply-mode">
          <option value="mask">mask (set missing)</option>
          <option value="drop">drop rows</option>
        </select>
        <button id="apply-button" disabled>Apply</button>
        <button id="undo-button">Undo</button>
      </div>
      <div class="status" id="apply-report"></div>
    `;
    container.appendChild(this.element);

    this.tableHost = this.element.querySelector("#flag-table")!;
    this.reportLine = this.element.querySelector("#apply-report")!;
    this.curveSelect = this.element.querySelector("#flag-curve")!;
    this.methodSelect = this.element.querySelector("#flag-method")!;
    this.paramInput = this.element.querySelector("#flag-param")!;
    this.modeSelect = this.element.querySelector("#apply-mode")!;

    this.element
      .querySelector<HTMLButtonElement>("#flag-button")!
      .addEventListener("click", () => {
        const method = this.methodSelect.value as "zscore" | "iqr";
        handlers.onFlag(method, this.curveSelect.value, Number(this.paramInput.value));
      });
    this.element
      .querySelector<HTMLButtonElement>("#apply-button")!
      .addEventListener("click", () => {
        handlers.onApply(this.modeSelect.value as "mask" | "drop", this.excludedRows());
      });
    this.element
      .querySelector<HTMLButtonElement>("#undo-button")!
      .addEventListener("click", () => handlers.onUndo());
  }

  setCurves(names: string[]): void {
    this.curveSelect.replaceChildren(
      ...names.map((n) => new Option(n, n, false, false)),
    );
  }

  /** Rebuild the review table for the active selection. */
  showSelection(selection: Selection | null, data: WellData | null): void {
    this.tableHost.replaceChildren();
    const applyButton = this.element.querySelector<HTMLButtonElement>("#apply-button")!;
    if (!selection || !data || selection.rows.length === 0) {
      applyButton.disabled = true;
      this.tableHost.textContent = selection
        ? "Selection is empty."
        : "No active selection.";
      return;
    }
    applyButton.disabled = false;
    const names = Object.keys(data.curves);
    const table = document.createElement("table");
    table.className = "flag-rows";
    const header = document.createElement("tr");
    header.innerHTML =
      `<th>remove</th><th>row</th><th>depth</th>` +
      names.map((n) => `<th>${n}</th>`).join("");
    table.appendChild(header);
    // Keep the review table readable (and the DOM sane) for huge brushes.
    const shown = selection.rows.slice(0, 500);
    for (const row of shown) {
      const tr = document.createElement("tr");
      const cells = names
        .map((n) => {
          const v = data.curves[n].values[row];
          return `<td>${v === null ? "·" : v.toFixed(3)}</td>`;
        })
        .join("");
      tr.innerHTML =
        `<td><input type="checkbox" checked data-row="${row}" /></td>` +
        `<td>${row}</td><td>${data.depth[row]?.toFixed(2) ?? "?"}</td>` +
        cells;
      table.appendChild(tr);
    }
    this.tableHost.appendChild(table);
    if (selection.rows.length > shown.length) {
      const note = document.createElement("div");
      note.className = "status";
      note.textContent = `… ${selection.rows.length - shown.length} more flagged rows (apply acts on all of them)`;
      this.tableHost.appendChild(note);
    }
  }

  /** Flagged rows the reviewer unticked; they stay in the dataset. */
  excludedRows(): number[] {
    return Array.from(
      this.tableHost.querySelectorAll<HTMLInputElement>("input[data-row]:not(:checked)"),
    ).map((el) => Number(el.dataset.row));
  }

  uncheckRow(row: number): void {
    const box = this.tableHost.querySelector<HTMLInputElement>(
      `input[data-row="${row}"]`,
    );
    if (box) box.checked = false;
  }

  showReport(text: string, isError = false): void {
    this.reportLine.textContent = text;
    this.reportLine.classList.toggle("error", isError);
  }
}
