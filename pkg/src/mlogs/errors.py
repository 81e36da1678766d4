"""Exception taxonomy shared by every layer.

All domain errors derive from :class:`MlogsError` and carry a stable
machine-readable ``code`` plus an optional ``where`` locating the problem
(a line number, curve name, or similar). The HTTP layer maps these onto
status codes; the CLI maps them onto exit code 2.
"""

from __future__ import annotations


class MlogsError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, *, where: str | int | None = None):
        super().__init__(message)
        self.where = where

    @property
    def message(self) -> str:
        return str(self)


# --- LAS parsing / writing ------------------------------------------------

class UnsupportedVersion(MlogsError):
    code = "unsupported-version"


class MissingSection(MlogsError):
    code = "missing-section"


class ColumnMismatch(MlogsError):
    """A logical data row does not have one value per curve."""

    code = "column-mismatch"

    def __init__(self, message: str, *, line: int):
        super().__init__(message, where=line)
        self.line = line


class MalformedHeaderLine(MlogsError):
    code = "malformed-header-line"

    def __init__(self, message: str, *, line: int):
        super().__init__(message, where=line)
        self.line = line


class InvalidFile(MlogsError):
    code = "invalid-file"


# --- dataset --------------------------------------------------------------

class NonMonotoneDepth(MlogsError):
    code = "non-monotone-depth"


class DuplicateDepth(MlogsError):
    code = "duplicate-depth"


class UnknownCurve(MlogsError):
    code = "unknown-curve"


class NameCollision(MlogsError):
    code = "name-collision"


class InvalidRange(MlogsError):
    code = "invalid-range"


class AllMissing(MlogsError):
    code = "all-missing"


class EmptyDataset(MlogsError):
    code = "empty-dataset"


class InvalidArgument(MlogsError):
    code = "invalid-argument"


# --- eda ------------------------------------------------------------------

class LengthMismatch(MlogsError):
    code = "length-mismatch"


class TooFewCurves(MlogsError):
    code = "too-few-curves"


class TooManyCurves(MlogsError):
    code = "too-many-curves"


class EdgeMismatch(MlogsError):
    code = "edge-mismatch"


# --- outliers ---------------------------------------------------------------

class TooFewValues(MlogsError):
    code = "too-few-values"


class WellMismatch(MlogsError):
    code = "well-mismatch"


class IndexOutOfRange(MlogsError):
    code = "index-out-of-range"


# --- model ------------------------------------------------------------------

class UnknownColumn(MlogsError):
    code = "unknown-column"


class ConstantFeature(MlogsError):
    code = "constant-feature"


class NoCompleteRows(MlogsError):
    code = "no-complete-rows"


class TooFewRows(MlogsError):
    code = "too-few-rows"


class SingularSystem(MlogsError):
    code = "singular-system"


class NonBinaryTarget(MlogsError):
    code = "non-binary-target"


class EmptyEvaluation(MlogsError):
    code = "empty-evaluation"


class MissingFeatureCurve(MlogsError):
    code = "missing-feature-curve"


class StatsMismatch(MlogsError):
    code = "stats-mismatch"


# --- service ----------------------------------------------------------------

class UnknownProject(MlogsError):
    code = "unknown-project"


class UnknownWell(MlogsError):
    code = "unknown-well"


class UnknownSelection(MlogsError):
    code = "unknown-selection"


class UnknownModel(MlogsError):
    code = "unknown-model"


class PayloadTooLarge(MlogsError):
    code = "payload-too-large"


class NothingToUndo(MlogsError):
    code = "nothing-to-undo"
