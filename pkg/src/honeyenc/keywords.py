"""TF-IDF keyword extraction against the documents of one category."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from honeyenc.corpus import TokenBag
from honeyenc.errors import InputError

DEFAULT_K = 8


@dataclass(frozen=True)
class KeywordBag:
    words: tuple[tuple[str, float], ...]
    source_category: str = ""

    @property
    def tokens(self) -> list[str]:
        return [w for w, _ in self.words]

    def __len__(self):
        return len(self.words)


def tf(w: str, bag: TokenBag) -> float:
    if bag.total == 0:
        raise InputError("term frequency is undefined for an empty bag")
    return bag.count(w) / bag.total


def idf(w: str, category_docs: Sequence[TokenBag]) -> float:
    """Natural-log IDF. A word seen in no document gets ``log(N) + 1``."""
    n_docs = len(category_docs)
    if n_docs == 0:
        raise InputError("IDF needs at least one document")
    containing = sum(1 for d in category_docs if d.count(w) > 0)
    if containing == 0:
        return math.log(n_docs) + 1.0
    return math.log(n_docs / containing)


def extract_keywords(message: TokenBag, category_docs: Sequence[TokenBag], k: int = DEFAULT_K,
                     source_category: str = "") -> KeywordBag:
    if message.total == 0:
        raise InputError("cannot extract keywords from an empty message")
    if k < 1:
        raise InputError("k must be positive")
    scored = [(w, tf(w, message) * idf(w, category_docs)) for w in message]
    scored.sort(key=lambda ws: (-ws[1], ws[0]))
    return KeywordBag(tuple(scored[:k]), source_category)
