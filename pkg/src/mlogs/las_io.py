"""Log ASCII Standard (LAS) 1.2/2.0 reading, writing, and CSV merging.

The parser is value-preserving: the null sentinel (conventionally
-999.25) stays in the raw matrix and is only decoded into missing cells
by :func:`to_dataset`. The writer always emits unwrapped LAS 2.0 with
6-decimal fixed-width columns, so parse -> write -> parse round-trips
the matrix to within 1e-6 per cell.

Header-line grammar (the de-facto LAS 2.0 layout):
mnemonic up to the first '.', unit up to the first whitespace after the
dot, value up to the last ':', description after it.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import CurveData, MultiWellTable, WellDataset, concat_wells
from .errors import (
    ColumnMismatch,
    DuplicateDepth,
    EmptyDataset,
    InvalidFile,
    MalformedHeaderLine,
    MissingSection,
    NonMonotoneDepth,
    UnsupportedVersion,
)

__all__ = [
    "LasVersion",
    "CurveSpec",
    "HeaderEntry",
    "LasFile",
    "DEFAULT_NULL",
    "parse_las",
    "write_las",
    "to_dataset",
    "dataset_to_las",
    "merge_to_csv",
    "read_merged_csv",
]

DEFAULT_NULL = -999.25


class LasVersion(Enum):
    V1_2 = "1.2"
    V2_0 = "2.0"


@dataclass(frozen=True)
class CurveSpec:
    """One ~C entry: mnemonic, unit, free-text description."""

    mnemonic: str
    unit: str = ""
    description: str = ""


@dataclass(frozen=True)
class HeaderEntry:
    """One ~W or ~P entry."""

    value: str
    unit: str = ""
    description: str = ""


@dataclass
class LasFile:
    """Faithful in-memory image of a parsed LAS document.

    ``data`` is rows x len(curves), raw: sentinel cells are still the
    sentinel value, exactly as written in the file.
    """

    version: LasVersion
    wrap: bool
    well_meta: dict[str, HeaderEntry]
    curves: list[CurveSpec]
    data: np.ndarray
    params: dict[str, HeaderEntry] = field(default_factory=dict)
    source: str | None = None

    @property
    def null_value(self) -> float:
        return float(self.well_meta["NULL"].value)


def _split_header_line(line: str, lineno: int) -> tuple[str, str, str, str]:
    if "." not in line or ":" not in line:
        raise MalformedHeaderLine(
            f"line {lineno}: header line needs '.' and ':' delimiters: {line.strip()!r}",
            line=lineno,
        )
    mnemonic, rest = line.split(".", 1)
    mnemonic = mnemonic.strip()
    if ":" not in rest:
        raise MalformedHeaderLine(
            f"line {lineno}: no ':' after the '.' delimiter", line=lineno
        )
    # Unit runs from the dot to the first whitespace; absent if the dot
    # is immediately followed by whitespace.
    if rest[:1].isspace() or rest[:1] == ":":
        unit = ""
        tail = rest
    else:
        unit = rest.split(None, 1)[0] if rest.split(None, 1) else rest
        # Unit may itself contain ':' only in pathological files; stop at ':'.
        if ":" in unit:
            unit = unit.split(":", 1)[0]
        tail = rest[len(unit):]
    value, _, description = tail.rpartition(":")
    return mnemonic, unit.strip(), value.strip(), description.strip()


def _dedup_mnemonics(names: list[str]) -> list[str]:
    # GR, GR, GR -> GR, GR_1, GR_2 (suffix bumped past any real clash).
    out: list[str] = []
    for name in names:
        if name not in out:
            out.append(name)
            continue
        i = 1
        while f"{name}_{i}" in out or f"{name}_{i}" in names[len(out):]:
            i += 1
        out.append(f"{name}_{i}")
    return out


def _parse_float(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ColumnMismatch(
            f"line {lineno}: non-numeric data value {token!r}", line=lineno
        ) from None


def parse_las(text: str | bytes, source: str | None = None) -> LasFile:
    """Parse a complete LAS 1.2/2.0 document.

    Wrapped-mode data lines are reassembled so each logical row has one
    value per curve. Comment lines (leading '#') and blank lines are
    skipped everywhere.

    Parameters
    ----------
    text : str or bytes
        The document. Bytes are decoded as UTF-8 with replacement for
        stray bytes.
    source : str, optional
        Originating filename; kept so downstream code can fall back to
        the filename stem when the WELL entry is blank.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    version: LasVersion | None = None
    wrap = False
    seen_sections: set[str] = set()
    well_meta: dict[str, HeaderEntry] = {}
    params: dict[str, HeaderEntry] = {}
    curve_names: list[str] = []
    curve_units: list[str] = []
    curve_descrs: list[str] = []
    data_values: list[list[float]] = []

    lines = text.splitlines()
    section = ""
    in_data = False
    pending: list[float] = []
    pending_start = 0

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue

        if stripped.startswith("~"):
            if in_data:
                # Data is the last section; a stray header after ~A ends it.
                break
            if len(stripped) < 2:
                raise MalformedHeaderLine(
                    f"line {lineno}: bare '~' section marker", line=lineno
                )
            section = stripped[1].upper()
            seen_sections.add(section)
            if section == "A":
                in_data = True
            continue

        if in_data:
            tokens = stripped.split()
            ncurves = len(curve_names)
            if ncurves == 0:
                raise MissingSection("~C section must precede ~A data")
            if not wrap:
                if len(tokens) != ncurves:
                    raise ColumnMismatch(
                        f"line {lineno}: expected {ncurves} values, got {len(tokens)}",
                        line=lineno,
                    )
                data_values.append([_parse_float(t, lineno) for t in tokens])
            else:
                if not pending:
                    pending_start = lineno
                if len(pending) + len(tokens) > ncurves:
                    raise ColumnMismatch(
                        f"line {lineno}: wrapped row starting at line {pending_start} "
                        f"overflows {ncurves} curves",
                        line=lineno,
                    )
                pending.extend(_parse_float(t, lineno) for t in tokens)
                if len(pending) == ncurves:
                    data_values.append(pending)
                    pending = []
            continue

        if section in ("V", "W", "C", "P"):
            mnemonic, unit, value, descr = _split_header_line(line, lineno)
            if section == "V":
                if mnemonic.upper() == "VERS":
                    if value.startswith("1.2"):
                        version = LasVersion.V1_2
                    elif value.startswith("2.0"):
                        version = LasVersion.V2_0
                    else:
                        raise UnsupportedVersion(
                            f"unsupported LAS version {value!r} (only 1.2 and 2.0)"
                        )
                elif mnemonic.upper() == "WRAP":
                    wrap = value.strip().upper().startswith("YES")
            elif section == "W":
                well_meta[mnemonic] = HeaderEntry(value, unit, descr)
            elif section == "C":
                curve_names.append(mnemonic)
                curve_units.append(unit)
                curve_descrs.append(descr)
            else:
                params[mnemonic] = HeaderEntry(value, unit, descr)
        # ~O and unknown sections are free text; skipped.

    if pending:
        raise ColumnMismatch(
            f"line {len(lines)}: wrapped row starting at line {pending_start} "
            f"is incomplete ({len(pending)} of {len(curve_names)} values)",
            line=len(lines),
        )
    if "V" not in seen_sections or version is None:
        raise MissingSection("no ~V section with a VERS line")
    if "C" not in seen_sections or not curve_names:
        raise MissingSection("no ~C section")
    if "A" not in seen_sections:
        raise MissingSection("no ~A section")
    if "W" not in seen_sections:
        raise MissingSection("no ~W section")

    names = _dedup_mnemonics(curve_names)
    curves = [
        CurveSpec(m, u, d) for m, u, d in zip(names, curve_units, curve_descrs)
    ]
    data = (
        np.array(data_values, dtype=float)
        if data_values
        else np.empty((0, len(curves)))
    )

    # Required ~W entries the rest of the pipeline relies on.
    if "NULL" not in well_meta:
        well_meta["NULL"] = HeaderEntry(repr(DEFAULT_NULL), "", "missing-value sentinel")
    if "WELL" not in well_meta:
        well_meta["WELL"] = HeaderEntry("", "", "")
    depth_unit = curves[0].unit
    if data.shape[0]:
        strt, stop = data[0, 0], data[-1, 0]
        steps = np.diff(data[:, 0])
        step = steps[0] if len(steps) and np.allclose(steps, steps[0]) else 0.0
    else:
        strt = stop = step = 0.0
    well_meta.setdefault("STRT", HeaderEntry(f"{strt:.6f}", depth_unit, ""))
    well_meta.setdefault("STOP", HeaderEntry(f"{stop:.6f}", depth_unit, ""))
    well_meta.setdefault("STEP", HeaderEntry(f"{step:.6f}", depth_unit, ""))
    try:
        float(well_meta["NULL"].value)
    except ValueError:
        raise InvalidFile(
            f"NULL entry {well_meta['NULL'].value!r} is not numeric"
        ) from None

    return LasFile(
        version=version,
        wrap=wrap,
        well_meta=well_meta,
        curves=curves,
        data=data,
        params=params,
        source=source,
    )


def _header_block(entries: dict[str, HeaderEntry]) -> list[str]:
    lines = []
    for mnemonic, e in entries.items():
        lines.append(f"{mnemonic:<8}.{e.unit:<8} {e.value:>14} : {e.description}")
    return lines


def write_las(file: LasFile) -> str:
    """Serialize to unwrapped LAS 2.0 text, 6-decimal fixed-width data."""
    n_rows, n_cols = file.data.shape if file.data.ndim == 2 else (0, 0)
    if n_cols != len(file.curves):
        raise InvalidFile(
            f"data has {n_cols} columns for {len(file.curves)} curves"
        )
    if n_rows and not np.all(np.isfinite(file.data)):
        raise InvalidFile("data matrix contains non-finite values")
    seen = set()
    for c in file.curves:
        if not c.mnemonic or "." in c.mnemonic or any(ch.isspace() for ch in c.mnemonic):
            raise InvalidFile(f"invalid curve mnemonic {c.mnemonic!r}")
        if c.mnemonic in seen:
            raise InvalidFile(f"duplicate curve mnemonic {c.mnemonic!r}")
        seen.add(c.mnemonic)

    out = io.StringIO()
    w = out.write
    w("~Version ---------------------------------------------------\n")
    w("VERS.            2.0 : CWLS log ASCII Standard - VERSION 2.0\n")
    w("WRAP.             NO : One line per depth step\n")
    w("~Well ------------------------------------------------------\n")
    for line in _header_block(file.well_meta):
        w(line + "\n")
    w("~Curve Information -----------------------------------------\n")
    for c in file.curves:
        w(f"{c.mnemonic:<8}.{c.unit:<8} : {c.description}\n")
    if file.params:
        w("~Parameter -------------------------------------------------\n")
        for line in _header_block(file.params):
            w(line + "\n")
    w("~ASCII -----------------------------------------------------\n")

    if n_rows:
        tokens = [[f"{v:.6f}" for v in row] for row in file.data]
        widths = [
            max(len(tokens[r][c]) for r in range(n_rows)) for c in range(n_cols)
        ]
        for row in tokens:
            w(" ".join(t.rjust(width) for t, width in zip(row, widths)) + "\n")
    return out.getvalue()


def to_dataset(file: LasFile, fallback_name: str | None = None) -> WellDataset:
    """Decode a parsed LAS file into a WellDataset.

    Sentinel cells become missing; rows whose depth is the sentinel are
    dropped; a strictly decreasing depth log is reversed wholesale so
    depth always increases.
    """
    sentinel = file.null_value
    if file.data.shape[0] == 0:
        raise EmptyDataset("LAS file has no data rows")
    depth = file.data[:, 0]
    keep = np.isfinite(depth) & (depth != sentinel)
    data = file.data[keep]
    depth = data[:, 0]
    if len(depth) == 0:
        raise EmptyDataset("no rows with a valid depth")
    if len(np.unique(depth)) != len(depth):
        raise DuplicateDepth("depth column contains duplicate values")
    diffs = np.diff(depth)
    if len(diffs) and np.all(diffs < 0):
        data = data[::-1]
        depth = data[:, 0]
    elif len(diffs) and not np.all(diffs > 0):
        raise NonMonotoneDepth(
            "depth is neither strictly increasing nor strictly decreasing"
        )

    curves: dict[str, CurveData] = {}
    for j, spec in enumerate(file.curves[1:], start=1):
        values = data[:, j].copy()
        values[values == sentinel] = np.nan
        curves[spec.mnemonic] = CurveData(values, unit=spec.unit)

    well_entry = file.well_meta.get("WELL", HeaderEntry(""))
    name = well_entry.value or well_entry.description
    if not name and file.source:
        name = Path(file.source).stem
    if not name and fallback_name:
        name = fallback_name
    return WellDataset(
        well=name or "WELL",
        depth=depth,
        curves=curves,
        depth_name=file.curves[0].mnemonic,
        depth_unit=file.curves[0].unit,
    )


def dataset_to_las(ds: WellDataset) -> LasFile:
    """Inverse of :func:`to_dataset` up to formatting.

    Missing cells become the -999.25 sentinel; STRT/STOP/STEP are
    recomputed from the depth vector (STEP = 0 when spacing is irregular
    beyond 1e-6 relative tolerance).
    """
    if ds.n_rows == 0:
        raise EmptyDataset("cannot serialize an empty dataset")
    depth = ds.depth
    diffs = np.diff(depth)
    if len(diffs):
        step = float(diffs[0])
        if not np.all(np.abs(diffs - step) <= 1e-6 * max(abs(step), 1e-30)):
            step = 0.0
    else:
        step = 0.0
    unit = ds.depth_unit
    well_meta = {
        "STRT": HeaderEntry(f"{depth[0]:.6f}", unit, "START DEPTH"),
        "STOP": HeaderEntry(f"{depth[-1]:.6f}", unit, "STOP DEPTH"),
        "STEP": HeaderEntry(f"{step:.6f}", unit, "STEP"),
        "NULL": HeaderEntry(repr(DEFAULT_NULL), "", "NULL VALUE"),
        "WELL": HeaderEntry(ds.well, "", "WELL NAME"),
    }
    curves = [CurveSpec(ds.depth_name, unit, "depth index")]
    cols = [depth]
    for name, curve in ds.curves.items():
        curves.append(CurveSpec(name, curve.unit, ""))
        values = curve.values.copy()
        values[np.isnan(values)] = DEFAULT_NULL
        cols.append(values)
    return LasFile(
        version=LasVersion.V2_0,
        wrap=False,
        well_meta=well_meta,
        curves=curves,
        data=np.column_stack(cols),
    )


def _csv_escape(field_text: str) -> str:
    if any(ch in field_text for ch in ',"\n\r'):
        return '"' + field_text.replace('"', '""') + '"'
    return field_text


def _csv_number(v: float) -> str:
    return repr(float(v))


def merge_to_csv(
    datasets: Sequence[WellDataset], curves: Sequence[str]
) -> tuple[MultiWellTable, str]:
    """Pool wells and serialize the long-format table as CSV text.

    Columns are WELL, DEPT, then the requested curves; missing values are
    empty fields; rows keep (well insertion order, increasing depth); LF
    line endings.
    """
    table = concat_wells(datasets, curves)
    lines = [",".join(["WELL", "DEPT", *table.curve_names])]
    cols = [table.columns[name] for name in table.curve_names]
    for i in range(table.n_rows):
        cells = [_csv_escape(table.wells[i]), _csv_number(table.depth[i])]
        for col in cols:
            v = col[i]
            cells.append("" if np.isnan(v) else _csv_number(v))
        lines.append(",".join(cells))
    return table, "\n".join(lines) + "\n"


def read_merged_csv(text: str) -> MultiWellTable:
    """Parse CSV in the merge_to_csv layout back into a table."""
    import csv as _csv

    rows = list(_csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows:
        raise InvalidFile("empty CSV")
    header = rows[0]
    if header[:2] != ["WELL", "DEPT"]:
        raise InvalidFile("CSV header must start with WELL,DEPT")
    curve_names = tuple(header[2:])
    wells: list[str] = []
    depth: list[float] = []
    columns: dict[str, list[float]] = {name: [] for name in curve_names}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ColumnMismatch(
                f"line {lineno}: expected {len(header)} fields, got {len(row)}",
                line=lineno,
            )
        wells.append(row[0])
        depth.append(float(row[1]))
        for name, cell in zip(curve_names, row[2:]):
            columns[name].append(float(cell) if cell.strip() else np.nan)
    return MultiWellTable(
        curve_names=curve_names,
        wells=tuple(wells),
        depth=np.array(depth, dtype=float),
        columns={name: np.array(vals) for name, vals in columns.items()},
    )
