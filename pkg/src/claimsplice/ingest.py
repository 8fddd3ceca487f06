"""CSV ingestion, validation and summary statistics for paired claim data."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


class IngestError(ValueError):
    """Raised for unreadable files, missing columns or no usable rows."""


@dataclass
class ClaimPairSample:
    """Paired strictly-positive claim amounts with provenance."""

    claim1: np.ndarray
    claim2: np.ndarray
    source: str = ""
    rejected_rows: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.claim1 = np.asarray(self.claim1, dtype=float)
        self.claim2 = np.asarray(self.claim2, dtype=float)
        if self.claim1.size != self.claim2.size:
            raise IngestError("claim columns have unequal lengths")
        if self.claim1.size < 1:
            raise IngestError("empty sample")
        if np.any(self.claim1 <= 0) or np.any(self.claim2 <= 0):
            raise IngestError("claim amounts must be strictly positive")

    @property
    def n(self):
        return self.claim1.size


def _resolve_columns(header, cols):
    """Map a column spec (two names or two 0-based indices) onto the header."""
    parts = [c.strip() for c in cols.split(",")]
    if len(parts) != 2:
        raise IngestError(f"column spec must name exactly two columns, got {cols!r}")
    idx = []
    for p in parts:
        if header is not None and p in header:
            idx.append(header.index(p))
        elif p.isdigit():
            idx.append(int(p))
        else:
            raise IngestError(f"column {p!r} not found in header {header!r}")
    return idx


def load_csv(path, cols="0,1", delimiter=",", decimal=".", strict=False, has_header=None):
    """Load a two-column claim-pair sample from a CSV file.

    ``cols`` selects the two columns by header name or 0-based index.
    Rows with nonpositive or unparseable values are rejected with a
    row-numbered diagnostic; in strict mode the first bad row aborts.
    ``decimal`` supports European exports (e.g. decimal=',').
    ``has_header`` of None sniffs: a first row that fails numeric parsing
    is treated as a header.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc

    def parse(tok):
        return float(tok.replace(decimal, ".") if decimal != "." else tok)

    with fh:
        reader = csv.reader(fh, delimiter=delimiter)
        rows = [
            row
            for row in reader
            if row and any(f.strip() for f in row) and not row[0].lstrip().startswith("#")
        ]
    if not rows:
        raise IngestError(f"{path}: no rows")

    header = None
    first = rows[0]
    if has_header or has_header is None:
        try:
            [parse(f) for f in first]
            headerless = True
        except ValueError:
            headerless = False
        if has_header or not headerless:
            header = [f.strip() for f in first]
            rows = rows[1:]
    idx = _resolve_columns(header, cols)

    c1, c2, rejected = [], [], []
    for rownum, row in enumerate(rows, start=2 if header else 1):
        try:
            v1, v2 = parse(row[idx[0]]), parse(row[idx[1]])
        except (ValueError, IndexError):
            msg = f"row {rownum}: unparseable values {row!r}"
            if strict:
                raise IngestError(f"{path}: {msg}")
            rejected.append(msg)
            continue
        if v1 <= 0 or v2 <= 0:
            msg = f"row {rownum}: nonpositive claim amount ({v1}, {v2})"
            if strict:
                raise IngestError(f"{path}: {msg}")
            rejected.append(msg)
            continue
        c1.append(v1)
        c2.append(v2)
    if not c1:
        raise IngestError(f"{path}: no valid rows ({len(rejected)} rejected)")
    return ClaimPairSample(np.array(c1), np.array(c2), source=str(path), rejected_rows=rejected)


def write_csv(sample, path, header=("claim1", "claim2"), metadata=None):
    """Write a sample back out; full-precision repr round-trips exactly."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if metadata:
            for line in metadata:
                fh.write(f"# {line}\n")
        w = csv.writer(fh)
        w.writerow(header)
        for a, b in zip(sample.claim1, sample.claim2):
            w.writerow([repr(float(a)), repr(float(b))])


def summarize(values):
    """Summary statistics for one coordinate.

    Quartiles use linear interpolation between order statistics (numpy's
    default). Skewness is m3/m2^1.5 and kurtosis m4/m2^2, i.e. kurtosis is
    NOT excess (a normal sample gives about 3).
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise ValueError("need at least two observations to summarize")
    m2 = np.mean((values - values.mean()) ** 2)
    if m2 == 0:
        raise ValueError("degenerate sample: zero variance, skewness undefined")
    m3 = np.mean((values - values.mean()) ** 3)
    m4 = np.mean((values - values.mean()) ** 4)
    q1, med, q3 = np.quantile(values, [0.25, 0.5, 0.75])
    return {
        "min": float(values.min()),
        "max": float(values.max()),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "mean": float(values.mean()),
        "skewness": float(m3 / m2**1.5),
        "kurtosis": float(m4 / m2**2),
    }


def summarize_sample(sample):
    return {"claim1": summarize(sample.claim1), "claim2": summarize(sample.claim2), "n": sample.n}


def histogram_export(values, bins=30, log_scale=False):
    """Histogram data for one coordinate: counts sum to n, edges span [min, max]."""
    values = np.asarray(values, dtype=float)
    if values.size < 1 or bins < 1:
        raise ValueError("need n >= 1 and bins >= 1")
    if log_scale:
        edges = np.geomspace(values.min(), values.max(), bins + 1)
        edges[0], edges[-1] = values.min(), values.max()
    else:
        edges = np.linspace(values.min(), values.max(), bins + 1)
    counts, edges = np.histogram(values, bins=edges)
    return {"edges": edges.tolist(), "counts": counts.tolist()}
