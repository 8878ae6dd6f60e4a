"""qtriage: clean, embed, and classify issue-tracker text as question vs. not-question."""

__version__ = "0.1.0"

from qtriage.corpus import ClassLabel, CleanedDoc, EmbeddedRecord, RawIssue

__all__ = ["ClassLabel", "CleanedDoc", "EmbeddedRecord", "RawIssue", "__version__"]
