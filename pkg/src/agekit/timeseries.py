"""Raw indicator series: CSV ingestion, validation, and time rescaling.

A series is the package's unit of currency: every downstream stage (smoothing,
normalization, fitting) consumes a MetricSeries and leaves the time grid alone.
Files are two-column CSV with the exact header ``t,value``, UTF-8, LF or CRLF.
"""

import csv
import os
import tempfile
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, ParseError

CSV_HEADER = ("t", "value")


class Orientation(Enum):
    """Which direction of an indicator means degradation."""

    HIGHER_IS_WORSE = "higher-is-worse"
    LOWER_IS_WORSE = "lower-is-worse"


def _as_readonly_float_array(values, what):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"{what} must be one-dimensional, got shape {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class MetricSeries:
    """A monitored indicator sampled at strictly increasing times.

    ``unit`` is an opaque label (never interpreted); callers rescale time
    explicitly with :func:`rescale_time` when a different unit is wanted.
    """

    name: str
    unit: str
    orientation: Orientation
    t: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if not isinstance(self.orientation, Orientation):
            raise DomainError(f"orientation must be an Orientation, got {self.orientation!r}")
        t = _as_readonly_float_array(self.t, "t")
        values = _as_readonly_float_array(self.values, "values")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", values)
        if len(t) != len(values):
            raise DomainError(f"t and values lengths differ: {len(t)} vs {len(values)}")
        if len(t) == 0:
            raise DomainError("series is empty")
        if not np.all(np.isfinite(t)):
            raise DomainError("series has non-finite timestamps")
        if not np.all(np.isfinite(values)):
            raise DomainError("series has non-finite values")
        if t[0] < 0:
            raise DomainError(f"timestamps must be nonnegative, first is {t[0]}")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            bad = int(np.flatnonzero(np.diff(t) <= 0)[0]) + 1
            raise DomainError(
                f"timestamps must be strictly increasing; sample {bad} "
                f"(t={t[bad]}) does not advance past t={t[bad - 1]}"
            )

    def __len__(self):
        return len(self.t)


def rescale_time(series, factor):
    """Return a copy of ``series`` with every timestamp multiplied by ``factor``.

    The usual call converts seconds to hours with factor 1/3600.
    """
    if not np.isfinite(factor) or factor <= 0:
        raise DomainError(f"time rescale factor must be positive and finite, got {factor}")
    return MetricSeries(
        name=series.name,
        unit=series.unit,
        orientation=series.orientation,
        t=series.t * factor,
        values=series.values,
    )


def _parse_float(text, what, line_num):
    text = text.strip()
    if not text:
        raise ParseError(f"row {line_num}: empty {what} field")
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"row {line_num}: {what} field {text!r} is not a number") from None
    if not np.isfinite(value):
        raise ParseError(f"row {line_num}: {what} field {text!r} is not finite")
    return value


def load_series(path, name, orientation, unit=""):
    """Read a two-column ``t,value`` CSV into a MetricSeries.

    Blank lines are skipped; any other malformed row fails with its row number.
    Non-increasing timestamps (duplicates included) are a domain error.
    """
    try:
        # utf-8-sig so a BOM from spreadsheet exports does not corrupt the header
        handle = open(path, "r", encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    ts = []
    values = []
    with handle:
        reader = csv.reader(handle)
        header = None
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if header is None:
                header = tuple(cell.strip() for cell in row)
                if header != CSV_HEADER:
                    raise ParseError(
                        f"{path}: row {reader.line_num}: expected header "
                        f"'{','.join(CSV_HEADER)}', got '{','.join(header)}'"
                    )
                continue
            if len(row) != 2:
                raise ParseError(
                    f"{path}: row {reader.line_num}: expected 2 fields, got {len(row)}"
                )
            try:
                ts.append(_parse_float(row[0], "t", reader.line_num))
                values.append(_parse_float(row[1], "value", reader.line_num))
            except ParseError as exc:
                raise ParseError(f"{path}: {exc}") from None
    if header is None:
        raise ParseError(f"{path}: file is empty")
    if not ts:
        raise ParseError(f"{path}: no data rows")
    try:
        return MetricSeries(name=name, unit=unit, orientation=orientation, t=ts, values=values)
    except DomainError as exc:
        raise DomainError(f"{path}: {exc}") from None


def write_text_atomic(path, text):
    """Write ``text`` to ``path`` atomically (temp file + rename)."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".agekit-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def format_float(x):
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


def save_series(series, path):
    """Serialize a series back to ``t,value`` CSV (atomic write).

    Floats use shortest round-trip formatting, so load(save(s)) is a fixed point.
    """
    lines = [",".join(CSV_HEADER)]
    for t, v in zip(series.t, series.values):
        lines.append(f"{format_float(t)},{format_float(v)}")
    write_text_atomic(path, "\n".join(lines) + "\n")
