"""Project persistence and the single-writer/multi-reader discipline.

A project lives in memory as an immutable ProjectState snapshot. Readers
grab the current snapshot reference and never see partial updates;
writers serialize per project behind a mutation lock, persist the new
state to disk, then atomically swap the reference. Datasets are stored
as column-binary .npz plus a JSON manifest, so reload is bit-exact.

Layout under the data directory:

    projects/{pid}/project.json
    projects/{pid}/wells/{wid}.json + {wid}.npz   (+ .undo.* one level)
    projects/{pid}/selections/{sid}.json
    projects/{pid}/models/{mid}.json
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .dataset import CurveData, WellDataset
from .errors import InvalidArgument, UnknownProject
from .model import TrainedModel
from .outliers import SelectionSet

__all__ = ["StoredSelection", "StoredModel", "ProjectState", "ProjectStore"]


def new_id(prefix: str) -> str:
    return f"{prefix}{uuid.uuid4().hex[:10]}"


@dataclass(frozen=True)
class StoredSelection:
    selection: SelectionSet
    well_id: str

    def as_dict(self) -> dict:
        return {**self.selection.as_dict(), "well_id": self.well_id}


@dataclass(frozen=True)
class StoredModel:
    id: str
    model: TrainedModel
    train_metrics: dict
    test_metrics: dict
    params: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": self.model.kind,
            "features": list(self.model.feature_names),
            "target": self.model.target_name,
            "hyperparams": self.model.hyperparams,
            "train_metrics": self.train_metrics,
            "test_metrics": self.test_metrics,
            "params": self.params,
        }


@dataclass(frozen=True)
class ProjectState:
    id: str
    name: str
    revision: int
    well_order: tuple[str, ...] = ()
    wells: dict[str, WellDataset] = field(default_factory=dict)
    selections: dict[str, StoredSelection] = field(default_factory=dict)
    models: dict[str, StoredModel] = field(default_factory=dict)
    undo: dict[str, WellDataset] = field(default_factory=dict)


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _save_dataset(ds: WellDataset, json_path: Path, npz_path: Path, has_undo: bool) -> None:
    manifest = {
        "well": ds.well,
        "depth_name": ds.depth_name,
        "depth_unit": ds.depth_unit,
        "curves": [{"name": n, "unit": c.unit} for n, c in ds.curves.items()],
        "has_undo": has_undo,
    }
    matrix = (
        np.column_stack([c.values for c in ds.curves.values()])
        if ds.curves
        else np.empty((ds.n_rows, 0))
    )
    buf_path = npz_path.with_suffix(".npz.tmp")
    with open(buf_path, "wb") as fh:
        np.savez(fh, depth=ds.depth, data=matrix)
    os.replace(buf_path, npz_path)
    _atomic_write(json_path, json.dumps(manifest, indent=2).encode())


def _load_dataset(json_path: Path, npz_path: Path) -> tuple[WellDataset, bool]:
    manifest = json.loads(json_path.read_text())
    with np.load(npz_path) as arrays:
        depth = arrays["depth"]
        matrix = arrays["data"]
    curves = {
        spec["name"]: CurveData(matrix[:, j], unit=spec["unit"])
        for j, spec in enumerate(manifest["curves"])
    }
    ds = WellDataset(
        well=manifest["well"],
        depth=depth,
        curves=curves,
        depth_name=manifest["depth_name"],
        depth_unit=manifest["depth_unit"],
    )
    return ds, bool(manifest.get("has_undo"))


class ProjectStore:
    """All projects under one data directory."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.projects_dir = self.root / "projects"
        self.projects_dir.mkdir(parents=True, exist_ok=True)
        self._states: dict[str, ProjectState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._load_all()

    # -- reads ------------------------------------------------------------

    def get(self, project_id: str) -> ProjectState:
        """Current snapshot; always internally consistent."""
        try:
            return self._states[project_id]
        except KeyError:
            raise UnknownProject(f"no project {project_id!r}") from None

    def list(self) -> list[ProjectState]:
        return sorted(self._states.values(), key=lambda s: s.name)

    # -- writes -----------------------------------------------------------

    def create(self, name: str) -> ProjectState:
        if not name or not name.strip():
            raise InvalidArgument("project name must be non-empty")
        state = ProjectState(id=new_id("p"), name=name.strip(), revision=0)
        with self._registry_lock:
            self._locks[state.id] = threading.Lock()
            self._persist(state, previous=None)
            self._states[state.id] = state
        return state

    def mutate(
        self, project_id: str, fn: Callable[[ProjectState], ProjectState]
    ) -> ProjectState:
        """Apply fn under the project's writer lock and bump the revision.

        fn gets the current snapshot and returns the next state (without
        touching the revision); persistence happens before the in-memory
        swap so a crash can lose the last write but never corrupt one.
        """
        lock = self._lock_for(project_id)
        with lock:
            old = self.get(project_id)
            new = replace(fn(old), revision=old.revision + 1)
            self._persist(new, previous=old)
            self._states[project_id] = new
            return new

    # -- internals ----------------------------------------------------------

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._registry_lock:
            if project_id not in self._locks:
                if project_id not in self._states:
                    raise UnknownProject(f"no project {project_id!r}")
                self._locks[project_id] = threading.Lock()
            return self._locks[project_id]

    def _project_dir(self, project_id: str) -> Path:
        return self.projects_dir / project_id

    def _persist(self, state: ProjectState, previous: ProjectState | None) -> None:
        pdir = self._project_dir(state.id)
        for sub in ("wells", "selections", "models"):
            (pdir / sub).mkdir(parents=True, exist_ok=True)

        prev_wells = previous.wells if previous else {}
        prev_undo = previous.undo if previous else {}
        for wid, ds in state.wells.items():
            undo_changed = state.undo.get(wid) is not prev_undo.get(wid)
            if ds is not prev_wells.get(wid) or undo_changed:
                _save_dataset(
                    ds,
                    pdir / "wells" / f"{wid}.json",
                    pdir / "wells" / f"{wid}.npz",
                    has_undo=wid in state.undo,
                )
            if undo_changed and wid in state.undo:
                _save_dataset(
                    state.undo[wid],
                    pdir / "wells" / f"{wid}.undo.json",
                    pdir / "wells" / f"{wid}.undo.npz",
                    has_undo=False,
                )

        prev_sel = previous.selections if previous else {}
        for sid, stored in state.selections.items():
            if stored is not prev_sel.get(sid):
                _atomic_write(
                    pdir / "selections" / f"{sid}.json",
                    json.dumps(stored.as_dict(), indent=2).encode(),
                )

        prev_models = previous.models if previous else {}
        for mid, stored in state.models.items():
            if stored is not prev_models.get(mid):
                doc = {
                    "id": mid,
                    "model": json.loads(stored.model.to_json()),
                    "train_metrics": stored.train_metrics,
                    "test_metrics": stored.test_metrics,
                    "params": stored.params,
                }
                _atomic_write(
                    pdir / "models" / f"{mid}.json", json.dumps(doc).encode()
                )

        head = {
            "id": state.id,
            "name": state.name,
            "revision": state.revision,
            "well_order": list(state.well_order),
        }
        _atomic_write(pdir / "project.json", json.dumps(head, indent=2).encode())

    def _load_all(self) -> None:
        for head_path in sorted(self.projects_dir.glob("*/project.json")):
            head = json.loads(head_path.read_text())
            pdir = head_path.parent
            wells: dict[str, WellDataset] = {}
            undo: dict[str, WellDataset] = {}
            for wid in head["well_order"]:
                ds, has_undo = _load_dataset(
                    pdir / "wells" / f"{wid}.json", pdir / "wells" / f"{wid}.npz"
                )
                wells[wid] = ds
                if has_undo:
                    undo[wid], _ = _load_dataset(
                        pdir / "wells" / f"{wid}.undo.json",
                        pdir / "wells" / f"{wid}.undo.npz",
                    )
            selections: dict[str, StoredSelection] = {}
            for spath in sorted((pdir / "selections").glob("*.json")):
                doc = json.loads(spath.read_text())
                selections[doc["id"]] = StoredSelection(
                    selection=SelectionSet(
                        id=doc["id"],
                        well=doc["well"],
                        rows=tuple(doc["rows"]),
                        provenance=doc["provenance"],
                        created_from=doc.get("created_from", ""),
                    ),
                    well_id=doc["well_id"],
                )
            models: dict[str, StoredModel] = {}
            for mpath in sorted((pdir / "models").glob("*.json")):
                doc = json.loads(mpath.read_text())
                models[doc["id"]] = StoredModel(
                    id=doc["id"],
                    model=TrainedModel.from_json(json.dumps(doc["model"])),
                    train_metrics=doc["train_metrics"],
                    test_metrics=doc["test_metrics"],
                    params=doc.get("params", {}),
                )
            state = ProjectState(
                id=head["id"],
                name=head["name"],
                revision=head["revision"],
                well_order=tuple(head["well_order"]),
                wells=wells,
                selections=selections,
                models=models,
                undo=undo,
            )
            self._states[state.id] = state
            self._locks[state.id] = threading.Lock()
