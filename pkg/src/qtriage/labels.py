"""Label taxonomy: expand base labels into category lexicons and assign issues.

Each base label (e.g. ``bug``) selects every corpus label that contains it as
a substring and was applied at least ``min_count`` times. Labels matched by
bases from both categories are purged from both, and an issue carrying labels
from both categories is excluded outright.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from qtriage.corpus import ClassLabel, RawIssue, ValidationError

DEFAULT_QUESTION_BASES = frozenset({"question"})
DEFAULT_NOT_QUESTION_BASES = frozenset(
    {"bug", "duplicate", "enhancement", "wontfix", "feature", "improvement"}
)


class LexiconError(ValidationError):
    """The built lexicon is unusable."""


@dataclass(frozen=True)
class BaseLabelConfig:
    question_bases: frozenset[str] = DEFAULT_QUESTION_BASES
    not_question_bases: frozenset[str] = DEFAULT_NOT_QUESTION_BASES

    def __post_init__(self):
        if not self.question_bases or not self.not_question_bases:
            raise ValidationError("base label sets must be non-empty")
        if self.question_bases & self.not_question_bases:
            raise ValidationError("base label sets must be disjoint")


@dataclass
class LabelLexicon:
    question_labels: set[str]
    not_question_labels: set[str]
    min_count: int


def count_labels(issues: Iterable[RawIssue]) -> Counter[str]:
    """Count each distinct individual label across all issues."""
    counts: Counter[str] = Counter()
    for issue in issues:
        counts.update(issue.labels)
    return counts


def expand_base_label(counts, base: str, min_count: int) -> list[str]:
    """All labels containing ``base`` with count >= min_count, ordered by
    descending count then lexicographically."""
    if min_count < 1:
        raise ValidationError("min_count must be >= 1")
    base = base.lower()
    hits = [l for l, c in counts.items() if base in l and c >= min_count]
    hits.sort(key=lambda l: (-counts[l], l))
    return hits


def build_lexicon(counts, config: BaseLabelConfig, min_count: int) -> LabelLexicon:
    """Union per-base expansions, then purge labels matched by both categories."""
    question: set[str] = set()
    not_question: set[str] = set()
    for base in config.question_bases:
        question.update(expand_base_label(counts, base, min_count))
    for base in config.not_question_bases:
        not_question.update(expand_base_label(counts, base, min_count))
    conflicts = question & not_question
    question -= conflicts
    not_question -= conflicts
    if not question:
        raise LexiconError(
            f"no usable question labels at min_count={min_count}"
        )
    return LabelLexicon(question, not_question, min_count)


def categorize(issue: RawIssue, lexicon: LabelLexicon) -> ClassLabel | None:
    """Assign an issue to a class, or None when it is excluded.

    Question iff at least one label is in the question set and none in the
    not-question set; the reverse for NotQuestion; excluded otherwise (both,
    neither, or no lexicon labels at all). Pure in (labels, lexicon): label
    order never matters.
    """
    has_q = any(l in lexicon.question_labels for l in issue.labels)
    has_nq = any(l in lexicon.not_question_labels for l in issue.labels)
    if has_q and not has_nq:
        return ClassLabel.QUESTION
    if has_nq and not has_q:
        return ClassLabel.NOT_QUESTION
    return None


def select_corpus(
    issues: Iterable[RawIssue],
    lexicon: LabelLexicon,
    questions_closed_only: bool = True,
) -> Iterator[tuple[RawIssue, ClassLabel]]:
    """Yield (issue, class) pairs, dropping excluded issues.

    When ``questions_closed_only`` is set, open issues categorized Question
    are dropped as well; the closed-only rule never applies to NotQuestion.
    """
    for issue in issues:
        cls = categorize(issue, lexicon)
        if cls is None:
            continue
        if (
            questions_closed_only
            and cls is ClassLabel.QUESTION
            and issue.state != "closed"
        ):
            continue
        yield issue, cls


def save_lexicon(lexicon: LabelLexicon, directory) -> None:
    """Persist as plain text, one label per line, one file per category."""
    os.makedirs(directory, exist_ok=True)
    for name, labels in (
        ("question.txt", lexicon.question_labels),
        ("not_question.txt", lexicon.not_question_labels),
    ):
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            for label in sorted(labels):
                fh.write(label + "\n")


def load_lexicon(directory, min_count: int = 50) -> LabelLexicon:
    def _read(name):
        with open(os.path.join(directory, name), encoding="utf-8") as fh:
            return {line.strip() for line in fh if line.strip()}

    question = _read("question.txt")
    not_question = _read("not_question.txt")
    if not question:
        raise LexiconError("question label file is empty")
    return LabelLexicon(question, not_question, min_count)
