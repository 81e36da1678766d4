"""Feature assembly, training, evaluation, and prediction.

Two deliberately simple, exactly testable model families: k-nearest
neighbours (regression and binary classification) in standardized
feature space, and ordinary least squares via normal equations. Both
share the same complete-case feature matrix and the same
standardization statistics, which travel with the trained model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import CurveData, MultiWellTable, WellDataset
from .errors import (
    ConstantFeature,
    EmptyEvaluation,
    InvalidArgument,
    MissingFeatureCurve,
    NoCompleteRows,
    NonBinaryTarget,
    SingularSystem,
    StatsMismatch,
    TooFewRows,
    UnknownColumn,
)

__all__ = [
    "FeatureMatrix",
    "TrainedModel",
    "RegressionMetrics",
    "ClassificationMetrics",
    "MODEL_KINDS",
    "build_matrix",
    "train",
    "predict",
    "evaluate",
    "depth_block_split",
]

MODEL_KINDS = ("knn_regress", "linear_regress", "knn_classify")
DEFAULT_K = 5
RIDGE_EPSILON = 1e-8
PRED_SUFFIX = "_PRED"


@dataclass(frozen=True)
class FeatureMatrix:
    """Complete-case rows, standardized to zero mean and unit sample std."""

    feature_names: tuple[str, ...]
    rows: np.ndarray
    row_keys: tuple[tuple[str, int], ...]
    means: np.ndarray
    stds: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def take(self, indices: np.ndarray) -> "FeatureMatrix":
        """Row subset sharing the same standardization statistics."""
        return FeatureMatrix(
            feature_names=self.feature_names,
            rows=self.rows[indices],
            row_keys=tuple(self.row_keys[i] for i in indices),
            means=self.means,
            stds=self.stds,
        )


@dataclass(frozen=True)
class TrainedModel:
    """A fitted model plus everything needed to reproduce its predictions."""

    kind: str
    feature_names: tuple[str, ...]
    target_name: str
    means: np.ndarray
    stds: np.ndarray
    hyperparams: dict = field(default_factory=dict)
    coefficients: np.ndarray | None = None
    train_rows: np.ndarray | None = None
    train_targets: np.ndarray | None = None

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "feature_names": list(self.feature_names),
            "target_name": self.target_name,
            "means": self.means.tolist(),
            "stds": self.stds.tolist(),
            "hyperparams": self.hyperparams,
        }
        if self.coefficients is not None:
            doc["coefficients"] = self.coefficients.tolist()
        if self.train_rows is not None:
            doc["train_rows"] = self.train_rows.tolist()
            doc["train_targets"] = self.train_targets.tolist()
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TrainedModel":
        doc = json.loads(text)
        if doc.get("kind") not in MODEL_KINDS:
            raise InvalidArgument(f"unknown model kind {doc.get('kind')!r}")
        return cls(
            kind=doc["kind"],
            feature_names=tuple(doc["feature_names"]),
            target_name=doc["target_name"],
            means=np.array(doc["means"], dtype=float),
            stds=np.array(doc["stds"], dtype=float),
            hyperparams=doc.get("hyperparams", {}),
            coefficients=(
                np.array(doc["coefficients"], dtype=float)
                if "coefficients" in doc
                else None
            ),
            train_rows=(
                np.array(doc["train_rows"], dtype=float)
                if "train_rows" in doc
                else None
            ),
            train_targets=(
                np.array(doc["train_targets"], dtype=float)
                if "train_targets" in doc
                else None
            ),
        )


@dataclass(frozen=True)
class RegressionMetrics:
    rmse: float
    mae: float
    r2: float | None
    n: int

    def as_dict(self) -> dict:
        return {"rmse": self.rmse, "mae": self.mae, "r2": self.r2, "n": self.n}


@dataclass(frozen=True)
class ClassificationMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    n: int

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "n": self.n,
        }


def build_matrix(
    table: MultiWellTable, features: Sequence[str], target: str
) -> tuple[FeatureMatrix, np.ndarray]:
    """Assemble the standardized complete-case matrix and target vector.

    Rows survive only when every feature AND the target are non-missing;
    the standardization statistics are computed on exactly those rows.
    """
    if not features:
        raise InvalidArgument("feature list must be non-empty")
    if target in features:
        raise InvalidArgument(f"target {target!r} cannot also be a feature")
    for name in (*features, target):
        if name not in table.columns:
            raise UnknownColumn(f"table has no column {name!r}")

    cols = np.column_stack([table.columns[f] for f in features])
    y = table.columns[target]
    complete = ~np.isnan(cols).any(axis=1) & ~np.isnan(y)
    if not complete.any():
        raise NoCompleteRows("no rows with every feature and the target present")
    idx = np.nonzero(complete)[0]
    raw = cols[idx]
    means = raw.mean(axis=0)
    stds = raw.std(axis=0, ddof=1) if len(idx) > 1 else np.zeros(len(features))
    for j, f in enumerate(features):
        if not np.isfinite(stds[j]) or stds[j] == 0.0:
            raise ConstantFeature(f"feature {f!r} is constant over the complete rows")
    rows = (raw - means) / stds
    row_keys = tuple((table.wells[i], int(i)) for i in idx)
    matrix = FeatureMatrix(
        feature_names=tuple(features),
        rows=rows,
        row_keys=row_keys,
        means=means,
        stds=stds,
    )
    return matrix, y[idx].astype(float)


def train(
    matrix: FeatureMatrix,
    target: np.ndarray,
    kind: str,
    k: int = DEFAULT_K,
    target_name: str = "",
) -> TrainedModel:
    """Fit a model on an already-standardized matrix.

    k-NN stores the rows verbatim; linear regression solves the normal
    equations with a tiny ridge on the Gram diagonal for numerical
    safety.
    """
    if kind not in MODEL_KINDS:
        raise InvalidArgument(f"unknown model kind {kind!r}")
    target = np.asarray(target, dtype=float)
    n, p = matrix.rows.shape
    if len(target) != n:
        raise InvalidArgument(f"{n} rows but {len(target)} targets")
    needed = max(k, p + 1) if kind.startswith("knn") else p + 1
    if n < needed:
        raise TooFewRows(f"need at least {needed} rows, got {n}")
    if kind == "knn_classify" and not np.all(np.isin(target, (0.0, 1.0))):
        raise NonBinaryTarget("classification targets must be 0 or 1")

    common = dict(
        feature_names=matrix.feature_names,
        target_name=target_name,
        means=matrix.means.copy(),
        stds=matrix.stds.copy(),
    )
    if kind == "linear_regress":
        xa = np.column_stack([matrix.rows, np.ones(n)])
        gram = xa.T @ xa + RIDGE_EPSILON * np.eye(p + 1)
        try:
            coef = np.linalg.solve(gram, xa.T @ target)
        except np.linalg.LinAlgError:
            raise SingularSystem("normal equations are singular") from None
        return TrainedModel(kind=kind, coefficients=coef, **common)
    return TrainedModel(
        kind=kind,
        hyperparams={"k": int(k)},
        train_rows=matrix.rows.copy(),
        train_targets=target.copy(),
        **common,
    )


def _predict_standardized(model: TrainedModel, z: np.ndarray) -> np.ndarray:
    """Predictions for rows already in the model's standardized space."""
    if model.kind == "linear_regress":
        return z @ model.coefficients[:-1] + model.coefficients[-1]
    k = int(model.hyperparams.get("k", DEFAULT_K))
    out = np.empty(len(z))
    for i, q in enumerate(z):
        d = np.sqrt(((model.train_rows - q) ** 2).sum(axis=1))
        # Stable sort breaks distance ties toward the lower stored index.
        neighbors = np.argsort(d, kind="stable")[:k]
        votes = model.train_targets[neighbors]
        if model.kind == "knn_classify":
            out[i] = 1.0 if votes.mean() >= 0.5 else 0.0
        else:
            out[i] = votes.mean()
    return out


def predict(model: TrainedModel, ds: WellDataset) -> WellDataset:
    """Add the `<TARGET>_PRED` curve to a well.

    Rows with any missing feature get a missing prediction; an existing
    prediction curve is overwritten, so re-running is idempotent.
    """
    for f in model.feature_names:
        if f not in ds.curves:
            raise MissingFeatureCurve(f"well {ds.well!r} lacks feature curve {f!r}")
    raw = np.column_stack([ds.curves[f].values for f in model.feature_names])
    complete = ~np.isnan(raw).any(axis=1)
    preds = np.full(ds.n_rows, np.nan)
    if complete.any():
        z = (raw[complete] - model.means) / model.stds
        preds[complete] = _predict_standardized(model, z)
    name = f"{model.target_name}{PRED_SUFFIX}" if model.target_name else PRED_SUFFIX
    unit = ds.curves[model.target_name].unit if model.target_name in ds.curves else ""
    curves = dict(ds.curves)
    curves[name] = CurveData(preds, unit=unit)
    return ds.with_curves(curves)


def evaluate(
    model: TrainedModel, matrix: FeatureMatrix, target: np.ndarray
) -> RegressionMetrics | ClassificationMetrics:
    """Standard metrics on a matrix standardized with the model's stats."""
    target = np.asarray(target, dtype=float)
    if matrix.n_rows == 0 or len(target) == 0:
        raise EmptyEvaluation("nothing to evaluate")
    if not (
        np.allclose(matrix.means, model.means) and np.allclose(matrix.stds, model.stds)
    ):
        raise StatsMismatch(
            "matrix was standardized with different statistics than the model"
        )
    preds = _predict_standardized(model, matrix.rows)
    n = len(target)
    if model.kind == "knn_classify":
        p = preds.astype(bool)
        t = target.astype(bool)
        tp = int((p & t).sum())
        fp = int((p & ~t).sum())
        fn = int((~p & t).sum())
        accuracy = float((p == t).sum()) / n
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        return ClassificationMetrics(
            accuracy=accuracy, precision=precision, recall=recall, f1=f1, n=n
        )
    err = preds - target
    rmse = math.sqrt(float((err**2).mean()))
    mae = float(np.abs(err).mean())
    sst = float(((target - target.mean()) ** 2).sum())
    r2 = None if sst == 0.0 else 1.0 - float((err**2).sum()) / sst
    return RegressionMetrics(rmse=rmse, mae=mae, r2=r2, n=n)


def depth_block_split(
    matrix: FeatureMatrix,
    target: np.ndarray,
    train_fraction: float = 0.8,
) -> tuple[tuple[FeatureMatrix, np.ndarray], tuple[FeatureMatrix, np.ndarray]]:
    """Contiguous per-well split: the first ceil(fraction*n) rows of each
    well train, the tail tests. Never shuffles; adjacent depth samples are
    far too autocorrelated for random splits to be honest.
    """
    if not 0.0 < train_fraction < 1.0:
        raise InvalidArgument(f"train_fraction must be in (0, 1), got {train_fraction}")
    target = np.asarray(target, dtype=float)
    n = matrix.n_rows
    if n < 2:
        raise TooFewRows("need at least 2 rows to split")

    train_idx: list[int] = []
    test_idx: list[int] = []
    groups: dict[str, list[int]] = {}
    for i, (well, _) in enumerate(matrix.row_keys):
        groups.setdefault(well, []).append(i)
    for indices in groups.values():
        n_train = math.ceil(train_fraction * len(indices))
        train_idx.extend(indices[:n_train])
        test_idx.extend(indices[n_train:])
    if not train_idx or not test_idx:
        raise TooFewRows(
            f"split {train_fraction} leaves an empty side "
            f"({len(train_idx)} train, {len(test_idx)} test)"
        )
    tr = np.array(train_idx, dtype=int)
    te = np.array(test_idx, dtype=int)
    return (matrix.take(tr), target[tr]), (matrix.take(te), target[te])
