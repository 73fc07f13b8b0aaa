"""Threshold-record indicators, running maxima and counts on sequences.

An observation is a delta-record when it exceeds the running maximum of all
previous observations by strictly more than delta; the first observation is
a delta-record by convention.  Ties therefore never count, which keeps the
scan deterministic on floating-point data.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DriftRecordsError


@dataclass(frozen=True)
class RecordFlags:
    """Per-index delta-record indicators with the running maxima."""

    flags: np.ndarray
    running_max: np.ndarray
    delta: float

    def __len__(self):
        return self.flags.shape[0]


def _as_sequence(y):
    arr = np.ascontiguousarray(y, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise DriftRecordsError("expected a nonempty one-dimensional sequence")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise DriftRecordsError(f"non-finite value at index {bad}")
    return arr


def delta_record_flags(y, delta: float) -> RecordFlags:
    """Scan ``y`` once, left to right, and flag every delta-record.

    Returns the indicator array, the running maxima and delta itself.
    The comparison is strict: y[j] > max(y[:j]) + delta.
    """
    arr = _as_sequence(y)
    flags, running_max = _kernels.record_scan(arr, float(delta))
    return RecordFlags(flags=flags, running_max=running_max, delta=float(delta))


def count_delta_records(y, delta: float) -> int:
    """Number of delta-records in ``y``; at least 1 by the first-observation
    convention."""
    return int(delta_record_flags(y, delta).flags.sum())


def running_rate(y, delta: float) -> np.ndarray:
    """Sequence of record rates: k-th entry is (records among first k) / k."""
    flags = delta_record_flags(y, delta).flags
    n = flags.shape[0]
    return np.cumsum(flags, dtype=np.float64) / np.arange(1, n + 1, dtype=np.float64)
