"""Markdown stripping and noise-pattern text cleaning.

A raw issue body is parsed into blocks, structural blocks (code, pre, header,
table, image) are dropped, the title is joined on, and an ordered battery of
noise patterns removes machine-generated text: stack traces, logs, dependency
trees, command lines, IPs, emails, handles, URIs, paths, versions, digits and
the rest. Multi-line families run before token-level families so they see
intact line structure. Every match is replaced by a single space, never the
empty string, so adjacent words are not glued together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from qtriage.corpus import CleanedDoc, DataError, RawIssue

PATTERN_FAMILIES = (
    "stack_trace",
    "log_lines",
    "code_snippet",
    "dependency_tree",
    "emoji",
    "comment",
    "error_message",
    "timestamp",
    "datetime",
    "command_line",
    "env_var",
    "identifier",
    "html_markup",
    "module_version",
    "ip_address",
    "email",
    "user_handle",
    "uri",
    "file_path",
    "digits",
)

_FLAG_MAP = {"m": re.MULTILINE, "i": re.IGNORECASE, "s": re.DOTALL}


@dataclass(frozen=True)
class NoisePattern:
    family: str
    regex: re.Pattern
    multiline: bool


@dataclass
class Block:
    kind: str  # paragraph | header | code | pre | table | image | other
    text: str


@dataclass
class StructuralDoc:
    blocks: list[Block] = field(default_factory=list)


def load_patterns(path=None) -> list[NoisePattern]:
    """Load noise patterns from a ``family<TAB>flags<TAB>expression`` file.

    Lines starting with ``#`` and blank lines are ignored. File order is the
    application order.
    """
    if path is None:
        text = (
            resources.files("qtriage.data")
            .joinpath("noise_patterns.tsv")
            .read_text(encoding="utf-8")
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    patterns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise DataError(f"pattern file line {lineno}: expected 3 tab-separated fields")
        family, flag_field, expr = parts
        if family not in PATTERN_FAMILIES:
            raise DataError(f"pattern file line {lineno}: unknown family {family!r}")
        flags = 0
        for ch in flag_field:
            if ch == "-":
                continue
            if ch not in _FLAG_MAP:
                raise DataError(f"pattern file line {lineno}: unknown flag {ch!r}")
            flags |= _FLAG_MAP[ch]
        try:
            regex = re.compile(expr, flags)
        except re.error as exc:
            raise DataError(f"pattern file line {lineno}: bad expression: {exc}") from exc
        patterns.append(NoisePattern(family, regex, "m" in flag_field))
    return patterns


_DEFAULT_PATTERNS: list[NoisePattern] | None = None


def default_patterns() -> list[NoisePattern]:
    global _DEFAULT_PATTERNS
    if _DEFAULT_PATTERNS is None:
        _DEFAULT_PATTERNS = load_patterns()
    return _DEFAULT_PATTERNS


_FENCE_RE = re.compile(r"^(\s{0,3})(`{3,}|~{3,})\s*(\S*)\s*$")
_ATX_RE = re.compile(r"^\s{0,3}(#{1,6})\s+(.*?)\s*#*\s*$")
_TABLE_SEP_RE = re.compile(r"^\s*\|?\s*:?-{2,}:?\s*(\|\s*:?-+:?\s*)*\|?\s*$")
_IMAGE_LINE_RE = re.compile(
    r"^\s*(\[?!\[[^\]]*\]\([^)]*\)(\]\([^)]*\))?\s*)+$"
)
_HR_RE = re.compile(r"^\s{0,3}([-*_])\s*(\1\s*){2,}$")


def parse_markdown(body: str) -> StructuralDoc:
    """Block-level markdown parse.

    Fenced and 4-space-indented code become code/pre blocks, ``#`` lines
    headers, pipe tables tables, image-only lines images; blockquote text is
    kept (markers stripped) as ``other``; everything else stays a paragraph.
    Unparseable fragments never fail, they stay paragraphs.
    """
    doc = StructuralDoc()
    if not body:
        return doc
    lines = body.splitlines()
    i = 0
    n = len(lines)
    para: list[str] = []

    def flush_para():
        if para:
            doc.blocks.append(Block("paragraph", "\n".join(para)))
            para.clear()

    while i < n:
        line = lines[i]
        stripped = line.strip()
        fence = _FENCE_RE.match(line)
        if fence:
            flush_para()
            marker = fence.group(2)[0]
            i += 1
            code: list[str] = []
            while i < n:
                close = _FENCE_RE.match(lines[i])
                if close and close.group(2)[0] == marker:
                    i += 1
                    break
                code.append(lines[i])
                i += 1
            doc.blocks.append(Block("code", "\n".join(code)))
            continue
        if not stripped:
            flush_para()
            i += 1
            continue
        m = _ATX_RE.match(line)
        if m:
            flush_para()
            doc.blocks.append(Block("header", m.group(2)))
            i += 1
            continue
        if _HR_RE.match(line):
            flush_para()
            doc.blocks.append(Block("other", ""))
            i += 1
            continue
        if _IMAGE_LINE_RE.match(line):
            flush_para()
            doc.blocks.append(Block("image", stripped))
            i += 1
            continue
        if line.startswith(("    ", "\t")) and not para:
            flush_para()
            pre: list[str] = [line]
            i += 1
            while i < n and (lines[i].startswith(("    ", "\t")) or not lines[i].strip()):
                if not lines[i].strip() and not (
                    i + 1 < n and lines[i + 1].startswith(("    ", "\t"))
                ):
                    break
                pre.append(lines[i])
                i += 1
            doc.blocks.append(Block("pre", "\n".join(pre)))
            continue
        if "|" in line and i + 1 < n and _TABLE_SEP_RE.match(lines[i + 1]):
            flush_para()
            table: list[str] = [line]
            i += 1
            while i < n and "|" in lines[i] and lines[i].strip():
                table.append(lines[i])
                i += 1
            doc.blocks.append(Block("table", "\n".join(table)))
            continue
        if stripped.startswith(">"):
            flush_para()
            quote: list[str] = []
            while i < n and lines[i].strip().startswith(">"):
                quote.append(re.sub(r"^\s*>\s?", "", lines[i]))
                i += 1
            doc.blocks.append(Block("other", "\n".join(quote)))
            continue
        para.append(line)
        i += 1
    flush_para()
    return doc


def strip_structural(doc: StructuralDoc) -> str:
    """Concatenated text of paragraph/other blocks only, newline-separated."""
    kept = [b.text for b in doc.blocks if b.kind in ("paragraph", "other") and b.text]
    return "\n".join(kept)


_TERMINAL = ".!?;:,"


def concat_title_body(title: str, body_text: str) -> str:
    """Join title and body; a period is added when the title lacks terminal
    punctuation."""
    title = title.strip()
    if not title:
        return body_text
    if title[-1] not in _TERMINAL:
        title += "."
    if not body_text:
        return title
    return title + " " + body_text


def apply_noise_patterns(
    text: str, patterns: list[NoisePattern]
) -> tuple[str, dict[str, int]]:
    """Apply patterns in declared order, replacing each match with a space.

    Returns the text with whitespace runs collapsed, plus per-family match
    counts (all families present, zero-filled).
    """
    stats = {fam: 0 for fam in PATTERN_FAMILIES}
    for pat in patterns:
        text, n = pat.regex.subn(" ", text)
        stats[pat.family] += n
    text = re.sub(r"\s+", " ", text).strip()
    return text, stats


_PUNCT_RE = re.compile(r"(?:[^\w\s.,;!?]|_)+")


def normalize_punctuation(text: str) -> str:
    """Remove punctuation except sentence-ending ``. , ; ! ?`` and collapse
    whitespace."""
    text = _PUNCT_RE.sub(" ", text)
    return re.sub(r"\s+", " ", text).strip()


def clean(issue: RawIssue, patterns: list[NoisePattern] | None = None) -> CleanedDoc:
    """Full cleaning composition for one issue.

    parse_markdown -> strip_structural -> concat_title_body ->
    apply_noise_patterns -> normalize_punctuation. Titles are treated as
    plain text, not markdown.
    """
    if patterns is None:
        patterns = default_patterns()
    body_text = strip_structural(parse_markdown(issue.body))
    text = concat_title_body(issue.title, body_text)
    text, stats = apply_noise_patterns(text, patterns)
    text = normalize_punctuation(text)
    return CleanedDoc(id=issue.id, text=text, removal_stats=stats)
