"""Shared data model and on-disk formats for issue corpora.

Raw issues travel as UTF-8 JSON lines with keys ``id``, ``title``, ``body``,
``labels`` (one comma-separated string) and ``state``. Feature vectors travel
as CSV with header ``id,label,v0..v{dim-1}``, serialized with 9 significant
digits (enough to round-trip 32-bit reals).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator

import numpy as np


class ClassLabel(IntEnum):
    """Binary target. NOT_QUESTION is index 0 everywhere: vector files,
    confusion matrices, and tie-breaks."""

    NOT_QUESTION = 0
    QUESTION = 1


class DataError(ValueError):
    """Malformed or inconsistent input data."""


class ValidationError(ValueError):
    """A contract violation in arguments or configuration."""


@dataclass
class RawIssue:
    id: int
    title: str
    body: str
    labels: list[str]
    state: str  # "open" | "closed"


@dataclass
class CleanedDoc:
    id: int
    text: str
    removal_stats: dict[str, int]
    token_count: int = 0


@dataclass
class EmbeddedRecord:
    id: int
    label: ClassLabel
    vector: np.ndarray


def split_labels(raw: str) -> list[str]:
    """Split a comma-separated label string into normalized labels.

    Each segment is lowercased and trimmed; empty segments are dropped, so
    ``""`` yields ``[]``.
    """
    out = []
    for part in raw.split(","):
        part = part.strip().lower()
        if part:
            out.append(part)
    return out


_STATES = ("open", "closed")


class RawIssueReader:
    """Streaming iterator over a raw-issue export file.

    Holds at most one record in memory. Tracks how many records had missing
    title/body fields (``missing_fields``), since source exports do not
    always carry them.
    """

    def __init__(self, path, max_records: int | None = None):
        self.path = path
        self.max_records = max_records
        self.missing_fields = 0
        self.count = 0

    def __iter__(self) -> Iterator[RawIssue]:
        seen: dict[int, int] = {}
        offset = 0
        with open(self.path, "rb") as fh:
            for lineno, raw_line in enumerate(fh, start=1):
                line_offset = offset
                offset += len(raw_line)
                if self.max_records is not None and self.count >= self.max_records:
                    return
                text = raw_line.decode("utf-8", errors="strict").strip()
                if not text:
                    continue
                try:
                    obj = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise DataError(
                        f"{self.path}: malformed record at line {lineno}"
                        f" (byte offset {line_offset}): {exc.msg}"
                    ) from exc
                if not isinstance(obj, dict) or "id" not in obj:
                    raise DataError(
                        f"{self.path}: malformed record at line {lineno}"
                        f" (byte offset {line_offset}): not an object with an 'id'"
                    )
                try:
                    issue_id = int(obj["id"])
                except (TypeError, ValueError):
                    raise DataError(
                        f"{self.path}: malformed record at line {lineno}"
                        f" (byte offset {line_offset}): non-integer id {obj['id']!r}"
                    ) from None
                if issue_id in seen:
                    raise DataError(
                        f"{self.path}: duplicate id {issue_id} at line {lineno}"
                        f" (first seen at line {seen[issue_id]})"
                    )
                seen[issue_id] = lineno
                if "title" not in obj or obj["title"] is None:
                    self.missing_fields += 1
                if "body" not in obj or obj["body"] is None:
                    self.missing_fields += 1
                state = obj.get("state", "open")
                if state not in _STATES:
                    raise DataError(
                        f"{self.path}: malformed record at line {lineno}"
                        f" (byte offset {line_offset}): bad state {state!r}"
                    )
                labels_raw = obj.get("labels", "")
                if labels_raw is None:
                    labels_raw = ""
                if not isinstance(labels_raw, str):
                    raise DataError(
                        f"{self.path}: malformed record at line {lineno}"
                        f" (byte offset {line_offset}): labels must be a"
                        " comma-separated string"
                    )
                self.count += 1
                yield RawIssue(
                    id=issue_id,
                    title=str(obj.get("title") or ""),
                    body=str(obj.get("body") or ""),
                    labels=split_labels(labels_raw),
                    state=state,
                )


def read_raw_issues(path, max_records: int | None = None) -> RawIssueReader:
    """Stream issues from a line-delimited export in file order."""
    return RawIssueReader(path, max_records=max_records)


def format_float(x: float) -> str:
    """9-significant-digit serialization with a guaranteed decimal marker."""
    s = f"{x:.9g}"
    if "." not in s and "e" not in s and "n" not in s and "i" not in s:
        s += ".0"
    return s


def write_vectors(records: Iterable[EmbeddedRecord], path, dim: int) -> int:
    """Write records as ``id,label,v0..v{dim-1}`` CSV. Returns count written."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        header = "id,label," + ",".join(f"v{i}" for i in range(dim))
        fh.write(header + "\n")
        for rec in records:
            if len(rec.vector) != dim:
                raise ValidationError(
                    f"record {rec.id}: vector has {len(rec.vector)} components,"
                    f" expected {dim}"
                )
            comps = ",".join(format_float(float(v)) for v in rec.vector)
            fh.write(f"{rec.id},{int(rec.label)},{comps}\n")
            count += 1
    return count


def read_vectors(path) -> tuple[int, Iterator[EmbeddedRecord]]:
    """Read a vector CSV. Dimension is inferred from the header."""
    fh = open(path, "r", encoding="utf-8")
    header = fh.readline().strip()
    cols = header.split(",")
    if len(cols) < 3 or cols[0] != "id" or cols[1] != "label":
        fh.close()
        raise DataError(f"{path}: bad vector header {header!r}")
    dim = len(cols) - 2

    def _rows() -> Iterator[EmbeddedRecord]:
        with fh:
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != dim + 2:
                    raise DataError(
                        f"{path}: line {lineno} has {len(parts) - 2} vector"
                        f" columns, expected {dim}"
                    )
                try:
                    rec_id = int(parts[0])
                    label = int(parts[1])
                    vec = np.array([float(p) for p in parts[2:]], dtype=np.float64)
                except ValueError as exc:
                    raise DataError(f"{path}: line {lineno}: {exc}") from None
                if label not in (0, 1):
                    raise DataError(
                        f"{path}: line {lineno}: label {label} outside {{0,1}}"
                    )
                if not np.all(np.isfinite(vec)):
                    raise DataError(f"{path}: line {lineno}: non-finite component")
                yield EmbeddedRecord(rec_id, ClassLabel(label), vec)

    return dim, _rows()
