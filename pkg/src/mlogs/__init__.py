"""mlogs: a well-log workbench.

LAS file I/O, depth-indexed curve tables, outlier review, EDA chart
payloads, missing-log and fracture-zone prediction, plus an HTTP service
and CLI over the same core.
"""

__version__ = "0.1.0"

from .dataset import CurveData, MultiWellTable, StatSummary, WellDataset
from .las_io import LasFile, LasVersion, parse_las, to_dataset, write_las

__all__ = [
    "__version__",
    "CurveData",
    "MultiWellTable",
    "StatSummary",
    "WellDataset",
    "LasFile",
    "LasVersion",
    "parse_las",
    "to_dataset",
    "write_las",
]
