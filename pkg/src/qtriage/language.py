"""English gate, tokenizer, and token-count gate.

Language detection builds a character-trigram profile of the input and
compares it by cosine similarity against profiles built from bundled text
samples (en, es, fr, de, pt, ru, zh). The verdict is a binary English gate,
not a general-purpose detector.

The tokenizer reproduces the documented Treebank behaviors relevant here:
whitespace split, word-final sentence punctuation separated into standalone
tokens, standard contractions split at the apostrophe.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources

PROFILE_LANGS = ("de", "en", "es", "fr", "pt", "ru", "zh")
DEFAULT_LANG_THRESHOLD = 0.30
MIN_DETECT_CHARS = 20

_NON_LETTER_RE = re.compile(r"[\W\d_]+", re.UNICODE)


@dataclass(frozen=True)
class LangVerdict:
    lang: str
    confidence: float
    is_english: bool


def _trigrams(text: str) -> Counter[str]:
    # letters only, lowercased, single spaces as word boundaries
    norm = _NON_LETTER_RE.sub(" ", text.lower()).strip()
    norm = f" {norm} "
    grams: Counter[str] = Counter()
    for i in range(len(norm) - 2):
        grams[norm[i : i + 3]] += 1
    return grams


def _unit(grams: Counter[str]) -> dict[str, float]:
    norm = math.sqrt(sum(c * c for c in grams.values()))
    if norm == 0.0:
        return {}
    return {g: c / norm for g, c in grams.items()}


_PROFILES: dict[str, dict[str, float]] | None = None


def _profiles() -> dict[str, dict[str, float]]:
    global _PROFILES
    if _PROFILES is None:
        prof = {}
        base = resources.files("qtriage.data").joinpath("langprofiles")
        for lang in PROFILE_LANGS:
            sample = base.joinpath(f"{lang}.txt").read_text(encoding="utf-8")
            prof[lang] = _unit(_trigrams(sample))
        _PROFILES = prof
    return _PROFILES


def detect_language(text: str, threshold: float = DEFAULT_LANG_THRESHOLD) -> LangVerdict:
    """Trigram-cosine language verdict; undeterminable below 20 characters."""
    if len(text.strip()) < MIN_DETECT_CHARS:
        return LangVerdict("und", 0.0, False)
    vec = _unit(_trigrams(text))
    if not vec:
        return LangVerdict("und", 0.0, False)
    best_lang = "und"
    best_sim = 0.0
    for lang in PROFILE_LANGS:  # fixed order makes ties deterministic
        profile = _profiles()[lang]
        if len(vec) < len(profile):
            small, big = vec, profile
        else:
            small, big = profile, vec
        sim = sum(w * big.get(g, 0.0) for g, w in small.items())
        if sim > best_sim:
            best_sim = sim
            best_lang = lang
    return LangVerdict(
        best_lang, best_sim, best_lang == "en" and best_sim >= threshold
    )


@dataclass
class TokenizedDoc:
    id: int
    tokens: list[str]
    eligible: bool


_NT_RE = re.compile(r"(?i)(\w)(n't)\b")
_APOS_RE = re.compile(r"(?i)(\w)('(?:s|m|d|ll|re|ve))\b")
_FINAL_PUNCT_RE = re.compile(r"(?<=\S)([.,;!?])(?=[\s.,;!?]|$)")


def tokenize(text: str) -> list[str]:
    """Whitespace tokens with word-final ``. , ; ! ?`` separated out and
    standard contractions split at the apostrophe."""
    text = _NT_RE.sub(r"\1 \2", text)
    text = _APOS_RE.sub(r"\1 \2", text)
    text = _FINAL_PUNCT_RE.sub(r" \1", text)
    return text.split()


DEFAULT_MIN_TOKENS = 6
DEFAULT_MAX_TOKENS = 199


def length_gate(
    tokens: list[str],
    min_tokens: int = DEFAULT_MIN_TOKENS,
    max_tokens: int = DEFAULT_MAX_TOKENS,
) -> bool:
    """True iff the token count lies in the inclusive [min, max] range."""
    return min_tokens <= len(tokens) <= max_tokens
