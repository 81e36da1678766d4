/**
 * Typed client for the mlogs HTTP/JSON API.
 *
 * Every statistic the UI shows comes back through here; the browser does
 * no local math. Responses carry the project revision they were computed
 * from, which the app uses to key refreshes.
 */

export interface CurveInfo {
  name: string;
  unit: string;
  n: number;
  n_missing: number;
}

export interface WellInfo {
  id: string;
  name: string;
  n_rows: number;
  depth_start: number | null;
  depth_stop: number | null;
  depth_unit: string;
  has_undo: boolean;
  curves: CurveInfo[];
}

export interface Inventory {
  revision: number;
  wells: WellInfo[];
}

export interface WellData {
  revision: number;
  well: string;
  depth: number[];
  depth_unit: string;
  curves: Record<string, { unit: string; values: (number | null)[] }>;
}

export interface HistogramPayload {
  edges: number[];
  counts: number[];
  excluded_missing: number;
  filtered?: number[];
}

export interface ScatterPayload {
  x_name: string;
  y_name: string;
  rows: number[];
  x: number[];
  y: number[];
}

export interface BoxPayload {
  q1: number;
  median: number;
  q3: number;
  whisker_lo: number;
  whisker_hi: number;
  outliers: number[];
}

export interface Selection {
  id: string;
  well: string;
  well_id: string;
  provenance: string;
  rows: number[];
  created_from: string;
}

export interface Metrics {
  [key: string]: number | null;
}

export interface ModelSummary {
  id: string;
  kind: string;
  features: string[];
  target: string;
  hyperparams: Record<string, number>;
  train_metrics: Metrics;
  test_metrics: Metrics;
}

export interface DataRect {
  x_curve: string;
  y_curve: string;
  x_lo: number;
  x_hi: number;
  y_lo: number;
  y_hi: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly where?: string | number,
  ) {
    super(message);
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let code = "http-error";
  let message = `${resp.status} ${resp.statusText}`;
  let where: string | number | undefined;
  try {
    const body = await resp.json();
    if (body?.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      where = body.error.where;
    } else if (body?.detail) {
      message = JSON.stringify(body.detail);
      code = "validation-error";
    }
  } catch {
    // non-JSON body; keep the status line
  }
  return new ApiError(resp.status, code, message, where);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, init);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createProject(name: string) {
    return this.post<{ id: string; name: string; revision: number }>("/projects", { name });
  }

  uploadLas(projectId: string, data: Blob, filename: string) {
    const form = new FormData();
    form.append("file", data, filename);
    return this.request<{ revision: number; well: WellInfo }>(
      `/projects/${projectId}/wells`,
      { method: "POST", body: form },
    );
  }

  wells(projectId: string) {
    return this.request<Inventory>(`/projects/${projectId}/wells`);
  }

  wellData(projectId: string, wellId: string, curves?: string[]) {
    const qs = curves?.length ? `?curves=${encodeURIComponent(curves.join(","))}` : "";
    return this.request<WellData>(`/projects/${projectId}/wells/${wellId}/data${qs}`);
  }

  private chart<T>(projectId: string, params: Record<string, string>) {
    const qs = new URLSearchParams(params).toString();
    return this.request<{ revision: number; kind: string; payload: T }>(
      `/projects/${projectId}/chart?${qs}`,
    );
  }

  histogram(
    projectId: string,
    wellId: string,
    curve: string,
    bins?: number,
    selectionId?: string,
  ) {
    const params: Record<string, string> = { kind: "histogram", well: wellId, curve };
    if (bins) params.bins = String(bins);
    if (selectionId) params.selection = selectionId;
    return this.chart<HistogramPayload>(projectId, params);
  }

  scatter(projectId: string, wellId: string, x: string, y: string) {
    return this.chart<ScatterPayload>(projectId, { kind: "scatter", well: wellId, x, y });
  }

  box(projectId: string, wellId: string, curve: string) {
    return this.chart<BoxPayload>(projectId, { kind: "box", well: wellId, curve });
  }

  brushSelect(projectId: string, wellId: string, rect: DataRect) {
    return this.post<{ revision: number; selection: Selection }>(
      `/projects/${projectId}/selections`,
      { well: wellId, rect },
    );
  }

  rowsSelect(projectId: string, wellId: string, rows: number[]) {
    return this.post<{ revision: number; selection: Selection }>(
      `/projects/${projectId}/selections`,
      { well: wellId, rows },
    );
  }

  methodSelect(
    projectId: string,
    wellId: string,
    method: "zscore" | "iqr",
    curve: string,
    params?: { threshold?: number; k?: number },
  ) {
    return this.post<{ revision: number; selection: Selection }>(
      `/projects/${projectId}/selections`,
      { well: wellId, method, curve, ...params },
    );
  }

  applySelection(projectId: string, selectionId: string, mode: "mask" | "drop", curves?: string[]) {
    return this.post<{
      revision: number;
      report: { rows: number; cells: number };
      well: WellInfo;
    }>(`/projects/${projectId}/selections/${selectionId}/apply`, {
      mode,
      curves: curves ?? null,
    });
  }

  undo(projectId: string, wellId: string) {
    return this.post<{ revision: number; well: WellInfo }>(
      `/projects/${projectId}/undo/${wellId}`,
      {},
    );
  }

  train(
    projectId: string,
    body: {
      wells?: string[];
      features: string[];
      target: string;
      kind: string;
      k?: number;
      split_fraction?: number;
    },
  ) {
    return this.post<{ revision: number; model: ModelSummary }>(
      `/projects/${projectId}/models`,
      body,
    );
  }

  predict(projectId: string, modelId: string, wellId: string) {
    return this.post<{ revision: number; well: WellInfo }>(
      `/projects/${projectId}/models/${modelId}/predict`,
      { well: wellId },
    );
  }

  exportUrl(projectId: string, format: "las" | "csv", wellId?: string): string {
    const params = new URLSearchParams({ format });
    if (wellId) params.set("well", wellId);
    return `${this.base}/projects/${projectId}/export?${params.toString()}`;
  }

  async fetchExport(projectId: string, format: "las" | "csv", wellId?: string): Promise<string> {
    const resp = await fetch(this.exportUrl(projectId, format, wellId));
    if (!resp.ok) throw await parseError(resp);
    return resp.text();
  }
}
