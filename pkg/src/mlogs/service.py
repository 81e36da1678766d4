"""HTTP/JSON API over the core pipeline.

Every read handler works from one immutable project snapshot, so a
response is always internally consistent and carries the revision it was
computed from. Mutations go through ProjectStore.mutate, which
serializes writers per project.
"""

from __future__ import annotations

import io
import zipfile
from dataclasses import replace
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__, eda, model as model_mod, outliers
from .dataset import (
    WellDataset,
    apply_limits,
    concat_wells,
    rename_curve,
    select_curves,
    summary_stats,
)
from .errors import (
    InvalidArgument,
    MlogsError,
    NameCollision,
    NothingToUndo,
    PayloadTooLarge,
    UnknownCurve,
    UnknownModel,
    UnknownProject,
    UnknownSelection,
    UnknownWell,
)
from .las_io import dataset_to_las, merge_to_csv, parse_las, to_dataset, write_las
from .storage import ProjectState, ProjectStore, StoredModel, StoredSelection, new_id

DEFAULT_MAX_UPLOAD = 100 * 1024 * 1024

NOT_FOUND = (UnknownProject, UnknownWell, UnknownCurve, UnknownSelection, UnknownModel)
CONFLICT = (NameCollision, NothingToUndo)


class CreateProjectBody(BaseModel):
    name: str


class RenameBody(BaseModel):
    old: str
    new: str


class LimitsBody(BaseModel):
    curve: str
    lo: float
    hi: float


class SelectCurvesBody(BaseModel):
    curves: list[str]


class RectBody(BaseModel):
    x_curve: str
    y_curve: str
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float


class SelectionBody(BaseModel):
    well: str
    rows: Optional[list[int]] = None
    rect: Optional[RectBody] = None
    method: Optional[str] = None
    curve: Optional[str] = None
    threshold: float = 3.0
    k: float = 1.5


class ApplyBody(BaseModel):
    mode: str = "mask"
    curves: Optional[list[str]] = None


class TrainBody(BaseModel):
    features: list[str]
    target: str
    kind: str
    wells: Optional[list[str]] = None
    k: int = 5
    split_fraction: float = 0.8


class PredictBody(BaseModel):
    well: str


def _curve_info(ds: WellDataset) -> list[dict]:
    return [
        {
            "name": name,
            "unit": c.unit,
            "n": len(c) - c.n_missing,
            "n_missing": c.n_missing,
        }
        for name, c in ds.curves.items()
    ]


def _well_info(wid: str, ds: WellDataset, has_undo: bool) -> dict:
    return {
        "id": wid,
        "name": ds.well,
        "n_rows": ds.n_rows,
        "depth_start": float(ds.depth[0]) if ds.n_rows else None,
        "depth_stop": float(ds.depth[-1]) if ds.n_rows else None,
        "depth_unit": ds.depth_unit,
        "has_undo": has_undo,
        "curves": _curve_info(ds),
    }


def _inventory(state: ProjectState) -> dict:
    return {
        "revision": state.revision,
        "wells": [
            _well_info(wid, state.wells[wid], wid in state.undo)
            for wid in state.well_order
        ],
    }


def _get_well(state: ProjectState, well_id: str) -> WellDataset:
    if well_id not in state.wells:
        raise UnknownWell(f"no well {well_id!r} in project {state.id!r}")
    return state.wells[well_id]


def _none_for_nan(values: np.ndarray) -> list:
    return [None if np.isnan(v) else float(v) for v in values]


def create_app(
    store: ProjectStore,
    static_dir: str | Path | None = None,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD,
) -> FastAPI:
    app = FastAPI(title="mlogs", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(MlogsError)
    async def domain_error(request: Request, exc: MlogsError):
        status = 422
        if isinstance(exc, NOT_FOUND):
            status = 404
        elif isinstance(exc, CONFLICT):
            status = 409
        elif isinstance(exc, PayloadTooLarge):
            status = 413
        body = {"error": {"code": exc.code, "message": str(exc)}}
        if exc.where is not None:
            body["error"]["where"] = exc.where
        return JSONResponse(body, status_code=status)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    # -- projects -----------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: CreateProjectBody):
        state = store.create(body.name)
        return {"id": state.id, "name": state.name, "revision": state.revision}

    @app.get("/projects")
    def list_projects():
        return {
            "projects": [
                {
                    "id": s.id,
                    "name": s.name,
                    "revision": s.revision,
                    "n_wells": len(s.well_order),
                }
                for s in store.list()
            ]
        }

    @app.get("/projects/{pid}")
    def get_project(pid: str):
        state = store.get(pid)
        return {
            "id": state.id,
            "name": state.name,
            "revision": state.revision,
            **_inventory(state),
            "selections": [s.as_dict() for s in state.selections.values()],
            "models": [m.summary() for m in state.models.values()],
        }

    # -- wells ----------------------------------------------------------------

    @app.post("/projects/{pid}/wells", status_code=201)
    async def upload_las(pid: str, file: UploadFile, request: Request):
        store.get(pid)
        declared = request.headers.get("content-length")
        if declared and int(declared) > max_upload_bytes + 16_384:
            raise PayloadTooLarge(f"upload exceeds {max_upload_bytes} bytes")
        payload = await file.read()
        if len(payload) > max_upload_bytes:
            raise PayloadTooLarge(f"upload exceeds {max_upload_bytes} bytes")
        las = parse_las(payload, source=file.filename)
        ds = to_dataset(las)
        wid = new_id("w")

        def add(state: ProjectState) -> ProjectState:
            wells = {**state.wells, wid: ds}
            return replace(
                state, wells=wells, well_order=(*state.well_order, wid)
            )

        state = store.mutate(pid, add)
        return {
            "revision": state.revision,
            "well": _well_info(wid, ds, False),
        }

    @app.get("/projects/{pid}/wells")
    def list_wells(pid: str):
        return _inventory(store.get(pid))

    @app.get("/projects/{pid}/wells/{wid}/data")
    def well_data(pid: str, wid: str, curves: Optional[str] = None):
        state = store.get(pid)
        ds = _get_well(state, wid)
        names = curves.split(",") if curves else ds.curve_names
        payload = {}
        for name in names:
            c = ds.curve(name)
            payload[name] = {"unit": c.unit, "values": _none_for_nan(c.values)}
        return {
            "revision": state.revision,
            "well": ds.well,
            "depth": [float(d) for d in ds.depth],
            "depth_unit": ds.depth_unit,
            "curves": payload,
        }

    def _replace_well(pid: str, wid: str, fn) -> ProjectState:
        def mutate(state: ProjectState) -> ProjectState:
            old = _get_well(state, wid)
            new_ds = fn(state, old)
            wells = {**state.wells, wid: new_ds}
            undo = {**state.undo, wid: old}
            return replace(state, wells=wells, undo=undo)

        return store.mutate(pid, mutate)

    @app.post("/projects/{pid}/wells/{wid}/rename")
    def rename(pid: str, wid: str, body: RenameBody):
        state = _replace_well(pid, wid, lambda s, ds: rename_curve(ds, body.old, body.new))
        return {"revision": state.revision, "well": _well_info(wid, state.wells[wid], True)}

    @app.post("/projects/{pid}/wells/{wid}/limits")
    def limits(pid: str, wid: str, body: LimitsBody):
        masked = {"n": 0}

        def fn(_s, ds):
            out, n = apply_limits(ds, body.curve, body.lo, body.hi)
            masked["n"] = n
            return out

        state = _replace_well(pid, wid, fn)
        return {
            "revision": state.revision,
            "newly_masked": masked["n"],
            "well": _well_info(wid, state.wells[wid], True),
        }

    @app.post("/projects/{pid}/wells/{wid}/select-curves")
    def select(pid: str, wid: str, body: SelectCurvesBody):
        state = _replace_well(pid, wid, lambda s, ds: select_curves(ds, body.curves))
        return {"revision": state.revision, "well": _well_info(wid, state.wells[wid], True)}

    @app.post("/projects/{pid}/undo/{wid}")
    def undo(pid: str, wid: str):
        def fn(state: ProjectState) -> ProjectState:
            _get_well(state, wid)
            if wid not in state.undo:
                raise NothingToUndo(f"no undo state for well {wid!r}")
            wells = {**state.wells, wid: state.undo[wid]}
            undo_map = {**state.undo, wid: state.wells[wid]}
            return replace(state, wells=wells, undo=undo_map)

        state = store.mutate(pid, fn)
        return {"revision": state.revision, "well": _well_info(wid, state.wells[wid], True)}

    # -- stats and charts -------------------------------------------------------

    @app.get("/projects/{pid}/wells/{wid}/stats")
    def stats(pid: str, wid: str, curve: str):
        state = store.get(pid)
        ds = _get_well(state, wid)
        return {
            "revision": state.revision,
            "curve": curve,
            "stats": summary_stats(ds, curve).as_dict(),
        }

    @app.get("/projects/{pid}/chart")
    def chart(
        pid: str,
        kind: str,
        well: Optional[str] = None,
        curve: Optional[str] = None,
        x: Optional[str] = None,
        y: Optional[str] = None,
        curves: Optional[str] = None,
        bins: int = eda.DEFAULT_BIN_COUNT,
        selection: Optional[str] = None,
        wells: Optional[str] = None,
    ):
        state = store.get(pid)
        payload: dict
        if kind == "histogram":
            ds = _get_well(state, well or "")
            values = ds.curve(curve or "").values
            hist = eda.histogram(values, bin_count=bins)
            payload = hist.as_dict()
            if selection is not None:
                sel = _get_selection(state, selection)
                counts = outliers.filtered_histogram(
                    values, sel.selection.rows, hist.edges
                )
                payload["filtered"] = [int(c) for c in counts]
        elif kind == "scatter":
            ds = _get_well(state, well or "")
            payload = eda.scatter_pairs(ds, x or "", y or "").as_dict()
        elif kind == "box":
            ds = _get_well(state, well or "")
            payload = eda.box_stats(ds.curve(curve or "").values).as_dict()
        elif kind == "pair":
            ds = _get_well(state, well or "")
            names = (curves or "").split(",") if curves else []
            payload = eda.pair_grid(ds, names).as_dict()
        elif kind == "corr":
            ds = _get_well(state, well or "")
            names = (curves or "").split(",") if curves else []
            payload = eda.correlation_matrix(ds, names).as_dict()
        elif kind == "bar":
            ids = wells.split(",") if wells else list(state.well_order)
            datasets = [_get_well(state, wid) for wid in ids]
            union: list[str] = []
            for d in datasets:
                for name in d.curve_names:
                    if name not in union:
                        union.append(name)
            if not union:
                payload = {"wells": [], "rows": []}
            else:
                table = concat_wells(datasets, union)
                counts = eda.category_counts(table)
                payload = {
                    "wells": [w for w, _ in counts],
                    "rows": [n for _, n in counts],
                }
        else:
            raise InvalidArgument(f"unknown chart kind {kind!r}")
        return {"revision": state.revision, "kind": kind, "payload": payload}

    # -- selections ---------------------------------------------------------

    def _get_selection(state: ProjectState, sid: str) -> StoredSelection:
        if sid not in state.selections:
            raise UnknownSelection(f"no selection {sid!r}")
        return state.selections[sid]

    @app.post("/projects/{pid}/selections", status_code=201)
    def save_selection(pid: str, body: SelectionBody):
        state = store.get(pid)
        ds = _get_well(state, body.well)
        if body.rect is not None:
            sel = outliers.brush_select(
                ds,
                outliers.BrushRect(
                    x_curve=body.rect.x_curve,
                    y_curve=body.rect.y_curve,
                    x_lo=body.rect.x_lo,
                    x_hi=body.rect.x_hi,
                    y_lo=body.rect.y_lo,
                    y_hi=body.rect.y_hi,
                ),
            )
        elif body.method is not None:
            if not body.curve:
                raise InvalidArgument("statistical selection needs a curve")
            values = ds.curve(body.curve).values
            if body.method == "zscore":
                rows = outliers.zscore_flags(values, threshold=body.threshold)
                desc = f"zscore({body.curve}, {body.threshold})"
            elif body.method == "iqr":
                rows = outliers.iqr_flags(values, k=body.k)
                desc = f"iqr({body.curve}, {body.k})"
            else:
                raise InvalidArgument(f"unknown method {body.method!r}")
            sel = outliers.SelectionSet.from_rows(
                ds.well, rows, provenance=body.method, created_from=desc
            )
        elif body.rows is not None:
            bad = [r for r in body.rows if r < 0 or r >= ds.n_rows]
            if bad:
                raise InvalidArgument(f"row index {bad[0]} outside well of {ds.n_rows} rows")
            sel = outliers.SelectionSet.from_rows(ds.well, body.rows, "manual")
        else:
            raise InvalidArgument("selection needs rows, a rect, or a method")

        stored = StoredSelection(selection=sel, well_id=body.well)

        def add(state: ProjectState) -> ProjectState:
            return replace(state, selections={**state.selections, sel.id: stored})

        new_state = store.mutate(pid, add)
        return {"revision": new_state.revision, "selection": stored.as_dict()}

    @app.get("/projects/{pid}/selections")
    def list_selections(pid: str):
        state = store.get(pid)
        return {
            "revision": state.revision,
            "selections": [s.as_dict() for s in state.selections.values()],
        }

    @app.get("/projects/{pid}/selections/{sid}")
    def get_selection(pid: str, sid: str):
        state = store.get(pid)
        return {
            "revision": state.revision,
            "selection": _get_selection(state, sid).as_dict(),
        }

    @app.post("/projects/{pid}/selections/{sid}/apply")
    def apply_selection(pid: str, sid: str, body: ApplyBody):
        report = {}

        def fn(state: ProjectState, ds: WellDataset) -> WellDataset:
            stored = _get_selection(state, sid)
            out, rep = outliers.apply_removal(
                ds, stored.selection, mode=body.mode, curves=body.curves
            )
            report.update(rep.as_dict())
            return out

        state0 = store.get(pid)
        stored = _get_selection(state0, sid)
        state = _replace_well(pid, stored.well_id, fn)
        return {
            "revision": state.revision,
            "report": report,
            "well": _well_info(stored.well_id, state.wells[stored.well_id], True),
        }

    # -- models -----------------------------------------------------------

    @app.post("/projects/{pid}/models", status_code=201)
    def train_model(pid: str, body: TrainBody):
        state = store.get(pid)
        ids = body.wells if body.wells else list(state.well_order)
        datasets = [_get_well(state, wid) for wid in ids]
        table = concat_wells(datasets, [*body.features, body.target])
        matrix, target = model_mod.build_matrix(table, body.features, body.target)
        (m_tr, t_tr), (m_te, t_te) = model_mod.depth_block_split(
            matrix, target, body.split_fraction
        )
        trained = model_mod.train(
            m_tr, t_tr, body.kind, k=body.k, target_name=body.target
        )
        train_metrics = model_mod.evaluate(trained, m_tr, t_tr).as_dict()
        test_metrics = model_mod.evaluate(trained, m_te, t_te).as_dict()
        stored = StoredModel(
            id=new_id("m"),
            model=trained,
            train_metrics=train_metrics,
            test_metrics=test_metrics,
            params={
                "wells": ids,
                "kind": body.kind,
                "k": body.k,
                "split_fraction": body.split_fraction,
            },
        )

        def add(state: ProjectState) -> ProjectState:
            return replace(state, models={**state.models, stored.id: stored})

        new_state = store.mutate(pid, add)
        return {"revision": new_state.revision, "model": stored.summary()}

    @app.get("/projects/{pid}/models")
    def list_models(pid: str):
        state = store.get(pid)
        return {
            "revision": state.revision,
            "models": [m.summary() for m in state.models.values()],
        }

    @app.post("/projects/{pid}/models/{mid}/predict")
    def run_predict(pid: str, mid: str, body: PredictBody):
        def fn(state: ProjectState, ds: WellDataset) -> WellDataset:
            if mid not in state.models:
                raise UnknownModel(f"no model {mid!r}")
            return model_mod.predict(state.models[mid].model, ds)

        state = _replace_well(pid, body.well, fn)
        return {
            "revision": state.revision,
            "well": _well_info(body.well, state.wells[body.well], True),
        }

    # -- export ------------------------------------------------------------

    @app.get("/projects/{pid}/export")
    def export(
        pid: str,
        format: str,
        well: str = "ALL",
        curves: Optional[str] = None,
    ):
        state = store.get(pid)
        ids = list(state.well_order) if well == "ALL" else well.split(",")
        datasets = [_get_well(state, wid) for wid in ids]
        if not datasets:
            raise UnknownWell("project has no wells to export")

        if format == "las":
            if len(datasets) == 1:
                text = write_las(dataset_to_las(datasets[0]))
                fname = f"{datasets[0].well.replace(' ', '_') or 'well'}.las"
                return Response(
                    text,
                    media_type="text/plain; charset=utf-8",
                    headers={"Content-Disposition": f'attachment; filename="{fname}"'},
                )
            buf = io.BytesIO()
            with zipfile.ZipFile(buf, "w") as zf:
                for wid, ds in zip(ids, datasets):
                    zf.writestr(
                        f"{ds.well.replace(' ', '_') or wid}.las",
                        write_las(dataset_to_las(ds)),
                    )
            return Response(
                buf.getvalue(),
                media_type="application/zip",
                headers={"Content-Disposition": 'attachment; filename="wells.zip"'},
            )
        if format == "csv":
            if curves:
                names = curves.split(",")
            else:
                names = []
                for ds in datasets:
                    for n in ds.curve_names:
                        if n not in names:
                            names.append(n)
            if not names:
                raise InvalidArgument("no curves to export")
            _, text = merge_to_csv(datasets, names)
            return Response(
                text,
                media_type="text/csv; charset=utf-8",
                headers={"Content-Disposition": 'attachment; filename="wells.csv"'},
            )
        raise InvalidArgument(f"unknown export format {format!r}")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
