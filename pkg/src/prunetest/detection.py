"""Bag-of-words distance between translations and threshold-based issue detection."""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterator

from prunetest.metamorphic import SentencePair

# Ideographs, kana and hangul syllables; CJK punctuation is handled as punctuation.
_CJK_RANGES = (
    (0x3040, 0x30FF),    # hiragana, katakana
    (0x3400, 0x4DBF),    # ideographs ext. A
    (0x4E00, 0x9FFF),    # unified ideographs
    (0xAC00, 0xD7AF),    # hangul syllables
    (0xF900, 0xFAFF),    # compatibility ideographs
    (0x20000, 0x3134F),  # ideographs ext. B-G
)


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES) and not unicodedata.category(ch).startswith("P")


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def token_spans(text: str) -> Iterator[tuple[int, int, str]]:
    """Yield ``(start, end, token)`` for each bag-of-words token in ``text``.

    CJK characters are single tokens. Other whitespace-delimited runs are
    stripped of leading and trailing punctuation; empty results are dropped.
    Tokens keep their original case here.
    """
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if is_cjk(ch):
            yield i, i + 1, ch
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and not is_cjk(text[j]):
            j += 1
        start, end = i, j
        while start < end and _is_punct(text[start]):
            start += 1
        while end > start and _is_punct(text[end - 1]):
            end -= 1
        if start < end:
            yield start, end, text[start:end]
        i = j


def tokenize(text: str) -> list[str]:
    return [tok.casefold() for _, _, tok in token_spans(text)]


def bow(text: str) -> Counter:
    """Multiset of casefolded tokens."""
    return Counter(tokenize(text))


def distance(t_parent: str, t_derived: str) -> int:
    """Token occurrences of the derived translation missing from the parent translation."""
    parent = bow(t_parent)
    return sum((bow(t_derived) - parent).values())


@dataclass(frozen=True)
class SuspiciousIssue:
    pair_id: str
    original_id: str
    parent_text: str
    derived_text: str
    parent_translation: str
    derived_translation: str
    distance: int
    threshold: int
    label: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def detect(pair: SentencePair, parent_translation: str, derived_translation: str, t: int = 0) -> SuspiciousIssue | None:
    if t < 0:
        raise ValueError("threshold must be non-negative")
    d = distance(parent_translation, derived_translation)
    if d <= t:
        return None
    return SuspiciousIssue(
        pair_id=pair.pair_id,
        original_id=pair.original_id,
        parent_text=pair.parent_text,
        derived_text=pair.derived_text,
        parent_translation=parent_translation,
        derived_translation=derived_translation,
        distance=d,
        threshold=t,
    )
