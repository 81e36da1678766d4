/**
 * Train/predict controls: feature multi-select, target and algorithm
 * pickers, hyperparameters, metrics readout, per-well prediction, and
 * LAS/CSV download links.
 */

import type { Inventory, ModelSummary } from "../api";

export interface ModelHandlers {
  onTrain: (body: {
    features: string[];
    target: string;
    kind: string;
    k: number;
    split_fraction: number;
  }) => void;
  onPredict: (modelId: string, wellId: string) => void;
}

function metricsText(metrics: Record<string, number | null>): string {
  return Object.entries(metrics)
    .map(([key, value]) =>
      value === null || value === undefined
        ? `${key}=–`
        : `${key}=${typeof value === "number" ? +value.toFixed(4) : value}`,
    )
    .join("  ");
}

export class ModelPanel {
  readonly element: HTMLElement;
  private readonly featureHost: HTMLElement;
  private readonly targetSelect: HTMLSelectElement;
  private readonly modelList: HTMLElement;
  private readonly status: HTMLElement;
  private inventory: Inventory | null = null;
  private downloadsHost: HTMLElement;

  constructor(container: HTMLElement, private readonly handlers: ModelHandlers) {
    this.element = document.createElement("div");
    this.element.className = "model-panel";
    this.element.innerHTML = `
      <div class="train-controls">
        <fieldset id="feature-boxes"><legend>features</legend></fieldset>
        <label>target <select id="target-select"></select></label>
        <label>algorithm
          <select id="kind-select">
            <option value="knn_regress">k-NN regression</option>
            <option value="linear_regress">linear regression</option>
            <option value="knn_classify">k-NN classification</option>
          </select>
        </label>
        <label>k <input id="k-input" type="number" value="5" min="1" /></label>
        <label>train fraction
          <input id="split-input" type="number" value="0.8" min="0.05" max="0.95" step="0.05" />
        </label>
        <button id="train-button">Train</button>
      </div>
      <div class="status" id="model-status"></div>
      <div id="model-list"></div>
      <div id="downloads"></div>
    `;
    container.appendChild(this.element);
    this.featureHost = this.element.querySelector("#feature-boxes")!;
    this.targetSelect = this.element.querySelector("#target-select")!;
    this.modelList = this.element.querySelector("#model-list")!;
    this.status = this.element.querySelector("#model-status")!;
    this.downloadsHost = this.element.querySelector("#downloads")!;

    this.element
      .querySelector<HTMLButtonElement>("#train-button")!
      .addEventListener("click", () => {
        const features = Array.from(
          this.featureHost.querySelectorAll<HTMLInputElement>("input:checked"),
        ).map((el) => el.value);
        this.handlers.onTrain({
          features,
          target: this.targetSelect.value,
          kind: this.element.querySelector<HTMLSelectElement>("#kind-select")!.value,
          k: Number(this.element.querySelector<HTMLInputElement>("#k-input")!.value),
          split_fraction: Number(
            this.element.querySelector<HTMLInputElement>("#split-input")!.value,
          ),
        });
      });
  }

  setInventory(inventory: Inventory): void {
    this.inventory = inventory;
    const names: string[] = [];
    for (const well of inventory.wells) {
      for (const curve of well.curves) {
        if (!names.includes(curve.name)) names.push(curve.name);
      }
    }
    this.featureHost.replaceChildren(
      ...names.map((name) => {
        const label = document.createElement("label");
        const box = document.createElement("input");
        box.type = "checkbox";
        box.value = name;
        label.appendChild(box);
        label.appendChild(document.createTextNode(name));
        return label;
      }),
    );
    this.featureHost.insertAdjacentHTML(
      "afterbegin",
      "<legend>features</legend>",
    );
    this.targetSelect.replaceChildren(...names.map((n) => new Option(n, n)));
  }

  checkFeatures(names: string[], target: string): void {
    for (const box of this.featureHost.querySelectorAll<HTMLInputElement>("input")) {
      box.checked = names.includes(box.value);
    }
    this.targetSelect.value = target;
  }

  showModels(models: ModelSummary[]): void {
    this.modelList.replaceChildren();
    for (const model of models) {
      const card = document.createElement("div");
      card.className = "model-card";
      card.dataset.modelId = model.id;
      const title = document.createElement("div");
      title.innerHTML = `<b>${model.kind}</b> → ${model.target} <small>(${model.features.join(", ")})</small>`;
      const train = document.createElement("div");
      train.className = "metrics train";
      train.textContent = `train: ${metricsText(model.train_metrics)}`;
      const test = document.createElement("div");
      test.className = "metrics test";
      test.textContent = `test: ${metricsText(model.test_metrics)}`;
      card.append(title, train, test);

      if (this.inventory) {
        const row = document.createElement("div");
        row.className = "predict-row";
        const wellSelect = document.createElement("select");
        wellSelect.replaceChildren(
          ...this.inventory.wells.map((w) => new Option(w.name, w.id)),
        );
        const button = document.createElement("button");
        button.textContent = "Predict";
        button.className = "predict-button";
        button.addEventListener("click", () =>
          this.handlers.onPredict(model.id, wellSelect.value),
        );
        row.append(wellSelect, button);
        card.appendChild(row);
      }
      this.modelList.appendChild(card);
    }
  }

  showDownloads(links: { label: string; href: string; id: string }[]): void {
    this.downloadsHost.replaceChildren(
      ...links.map(({ label, href, id }) => {
        const a = document.createElement("a");
        a.textContent = label;
        a.href = href;
        a.id = id;
        a.setAttribute("download", "");
        a.className = "download-link";
        return a;
      }),
    );
  }

  setStatus(text: string, isError = false): void {
    this.status.textContent = text;
    this.status.classList.toggle("error", isError);
  }
}
