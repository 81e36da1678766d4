"""Command-line access to the pipeline: convert, stats, clean, train,
predict, and serve.

Exit codes are a stable contract for scripts: 0 success, 1 usage error,
2 data error. Anything structured goes to stdout as JSON; incidental
logs go to stderr and honour --quiet.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .dataset import WellDataset, summary_stats
from .errors import MlogsError
from .las_io import (
    dataset_to_las,
    merge_to_csv,
    parse_las,
    read_merged_csv,
    to_dataset,
    write_las,
)
from .model import (
    TrainedModel,
    build_matrix,
    depth_block_split,
    evaluate,
    predict,
    train,
)
from .outliers import SelectionSet, apply_removal, iqr_flags, zscore_flags

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for data."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _log(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _load_dataset(path: str) -> WellDataset:
    text = Path(path).read_bytes()
    return to_dataset(parse_las(text, source=path))


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


# -- subcommands ------------------------------------------------------------

def cmd_convert(args) -> int:
    datasets = [_load_dataset(p) for p in args.las]
    if args.curves:
        names = args.curves.split(",")
    else:
        names = []
        for ds in datasets:
            for n in ds.curve_names:
                if n not in names:
                    names.append(n)
    _, text = merge_to_csv(datasets, names)
    Path(args.out).write_text(text)
    _emit({"out": args.out, "wells": len(datasets), "curves": names})
    return 0


def cmd_stats(args) -> int:
    ds = _load_dataset(args.las)
    _emit({"well": ds.well, "curve": args.curve, "stats": summary_stats(ds, args.curve).as_dict()})
    return 0


def cmd_clean(args) -> int:
    ds = _load_dataset(args.las)
    explicit = bool(args.curve)
    names = args.curve if explicit else ds.curve_names

    def flags_for(values):
        if args.method == "zscore":
            return zscore_flags(values, threshold=args.threshold)
        return iqr_flags(values, k=args.k)

    total_rows: set[int] = set()
    total_cells = 0
    if args.mode == "mask":
        for name in names:
            try:
                rows = flags_for(ds.curves[name].values)
            except MlogsError:
                if explicit:
                    raise
                _log(args, f"skipping {name}: too few values for {args.method}")
                continue
            if not rows:
                continue
            sel = SelectionSet.from_rows(ds.well, rows, args.method)
            ds, report = apply_removal(ds, sel, mode="mask", curves=[name])
            total_rows.update(rows)
            total_cells += report.cells
    else:
        for name in names:
            try:
                total_rows.update(flags_for(ds.curves[name].values))
            except MlogsError:
                if explicit:
                    raise
                _log(args, f"skipping {name}: too few values for {args.method}")
        sel = SelectionSet.from_rows(ds.well, total_rows, args.method)
        ds, report = apply_removal(ds, sel, mode="drop")
        total_cells = report.cells

    Path(args.out).write_text(write_las(dataset_to_las(ds)))
    _emit(
        {
            "out": args.out,
            "method": args.method,
            "mode": args.mode,
            "rows_flagged": len(total_rows),
            "cells": total_cells,
            "rows_remaining": ds.n_rows,
        }
    )
    return 0


def cmd_train(args) -> int:
    table = read_merged_csv(Path(args.csv).read_text())
    features = args.features.split(",")
    matrix, target = build_matrix(table, features, args.target)
    (m_tr, t_tr), (m_te, t_te) = depth_block_split(matrix, target, args.split)
    model = train(m_tr, t_tr, args.kind, k=args.k, target_name=args.target)
    metrics = {
        "train": evaluate(model, m_tr, t_tr).as_dict(),
        "test": evaluate(model, m_te, t_te).as_dict(),
    }
    Path(args.out).write_text(model.to_json())
    _emit(
        {
            "out": args.out,
            "kind": args.kind,
            "features": features,
            "target": args.target,
            "rows": matrix.n_rows,
            "metrics": metrics,
        }
    )
    return 0


def cmd_predict(args) -> int:
    model = TrainedModel.from_json(Path(args.model).read_text())
    ds = _load_dataset(args.las)
    out = predict(model, ds)
    pred_name = f"{model.target_name}_PRED"
    pred = out.curves[pred_name]
    Path(args.out).write_text(write_las(dataset_to_las(out)))
    _emit(
        {
            "out": args.out,
            "curve": pred_name,
            "n_predicted": len(pred) - pred.n_missing,
            "n_missing": pred.n_missing,
        }
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .storage import ProjectStore

    data_dir = Path(args.data_dir)
    if data_dir.exists() and not data_dir.is_dir():
        raise MlogsError(f"data dir {data_dir} exists and is not a directory")
    store = ProjectStore(data_dir)
    static = args.static_dir
    if static and not Path(static).is_dir():
        raise MlogsError(f"static dir {static} is not a directory")
    app = create_app(
        store,
        static_dir=static,
        max_upload_bytes=args.max_upload_mb * 1024 * 1024,
    )
    _log(args, f"serving on http://{args.host}:{args.port} (data: {data_dir})")
    # Browsers hold connections open across user think-time; the default
    # 5 s keep-alive loses that race and aborts in-flight reuses.
    uvicorn.run(
        app,
        host=args.host,
        port=args.port,
        timeout_keep_alive=75,
        log_level="warning" if args.quiet else "info",
    )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="mlogs", description="Well-log workbench")
    parser.add_argument("--version", action="version", version=f"mlogs {__version__}")
    parser.add_argument("--quiet", action="store_true", help="suppress log output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="merge LAS files into a long-format CSV")
    p.add_argument("las", nargs="+", help="input LAS file(s)")
    p.add_argument("-o", "--out", required=True, help="output CSV path")
    p.add_argument("--curves", help="comma-separated curve names (default: union)")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("stats", help="summary statistics for one curve")
    p.add_argument("las")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("clean", help="flag outliers and mask or drop them")
    p.add_argument("las")
    p.add_argument("--method", choices=("zscore", "iqr"), required=True)
    p.add_argument("--threshold", type=float, default=3.0, help="z-score threshold")
    p.add_argument("--k", type=float, default=1.5, help="IQR fence multiplier")
    p.add_argument(
        "--curve",
        action="append",
        help="curve to inspect (repeatable; default: all curves)",
    )
    p.add_argument("--mode", choices=("mask", "drop"), default="mask")
    p.add_argument("-o", "--out", required=True, help="output LAS path")
    p.set_defaults(fn=cmd_clean)

    p = sub.add_parser("train", help="train a model from a merged CSV")
    p.add_argument("csv")
    p.add_argument("--features", required=True, help="comma-separated feature curves")
    p.add_argument("--target", required=True)
    p.add_argument(
        "--kind",
        choices=("linear_regress", "knn_regress", "knn_classify"),
        required=True,
    )
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--split", type=float, default=0.8, help="train fraction")
    p.add_argument("-o", "--out", required=True, help="output model JSON path")
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("predict", help="apply a trained model to a LAS file")
    p.add_argument("model", help="model JSON from `mlogs train`")
    p.add_argument("las")
    p.add_argument("-o", "--out", required=True, help="output LAS path")
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default=os.environ.get("MLOGS_HOST", "127.0.0.1"))
    p.add_argument(
        "--port", type=int, default=int(os.environ.get("MLOGS_PORT", "8000"))
    )
    p.add_argument(
        "--data-dir", default=os.environ.get("MLOGS_DATA_DIR", "./mlogs-data")
    )
    p.add_argument("--static-dir", default=os.environ.get("MLOGS_STATIC_DIR"))
    p.add_argument(
        "--max-upload-mb",
        type=int,
        default=int(os.environ.get("MLOGS_MAX_UPLOAD_MB", "100")),
    )
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MlogsError as exc:
        body = {"error": {"code": exc.code, "message": str(exc)}}
        if exc.where is not None:
            body["error"]["where"] = exc.where
        print(json.dumps(body), file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(json.dumps({"error": {"code": "io-error", "message": str(exc)}}), file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
