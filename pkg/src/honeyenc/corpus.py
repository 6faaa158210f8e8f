"""Tokenization, stopword/suffix preprocessing and categorized corpus loading."""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from honeyenc.errors import InputError, ParseError, UnknownItemError
from honeyenc.stemmer import stem as stem_word

log = logging.getLogger(__name__)

_CANDIDATE = re.compile(r"[\w'’-]+")
_SEPARATORS = re.compile(r"['’-]")


def tokenize(raw: str, lowercase: bool = True) -> list[str]:
    """Split text into word tokens.

    A token is a maximal run of letters, optionally joined by internal
    apostrophes or hyphens. Runs that contain digits or underscores are
    dropped whole, so ``"H2O"`` yields nothing rather than ``["h", "o"]``.
    """
    tokens = []
    for match in _CANDIDATE.finditer(raw):
        word = match.group().strip("'’-")
        if not word:
            continue
        pieces = _SEPARATORS.split(word)
        if not all(p.isalpha() for p in pieces):
            continue
        word = word.replace("’", "'")
        tokens.append(word.casefold() if lowercase else word)
    return tokens


class TokenBag(Mapping[str, int]):
    """Immutable multiset of tokens with positive counts."""

    __slots__ = ("_counts", "_total")

    def __init__(self, counts: Mapping[str, int] | Iterable[str] = ()):
        if isinstance(counts, Mapping):
            items = {k: int(v) for k, v in counts.items() if v}
        else:
            items = dict(Counter(counts))
        if any(v < 0 for v in items.values()):
            raise InputError("token counts must be non-negative")
        self._counts = items
        self._total = sum(items.values())

    @property
    def counts(self) -> dict[str, int]:
        return dict(self._counts)

    @property
    def total(self) -> int:
        return self._total

    def __getitem__(self, token):
        return self._counts[token]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __eq__(self, other):
        if isinstance(other, TokenBag):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        return f"TokenBag({self._counts!r})"

    def count(self, token: str) -> int:
        return self._counts.get(token, 0)

    def elements(self) -> list[str]:
        """Tokens expanded by multiplicity, in sorted order."""
        return [t for t in sorted(self._counts) for _ in range(self._counts[t])]

    def scaled(self, k: int) -> "TokenBag":
        if k < 1:
            raise InputError("scale factor must be a positive integer")
        return TokenBag({t: c * k for t, c in self._counts.items()})


def preprocess(tokens: Iterable[str], stopwords: frozenset[str] | set[str] = frozenset(),
               stem: bool = True) -> TokenBag:
    kept = []
    for tok in tokens:
        if tok in stopwords:
            continue
        if stem:
            tok = stem_word(tok)
            # a stem can collapse onto a stopword
            if tok in stopwords:
                continue
        kept.append(tok)
    return TokenBag(kept)


def read_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.casefold())
    return frozenset(words)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword file (one token per line, ``#`` comments); None means the shipped list."""
    if path is None:
        text = resources.files("honeyenc").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read stopword file {path}: {exc}") from exc
    return read_stopwords(text)


@dataclass(frozen=True)
class Document:
    category: str
    doc_id: str
    tokens: tuple[str, ...]
    bag: TokenBag

    def __post_init__(self):
        if not self.category:
            raise InputError("document category must be non-empty")


@dataclass(frozen=True)
class CategorizedCorpus:
    categories: frozenset[str]
    documents: tuple[Document, ...]
    stopwords: frozenset[str] = frozenset()
    stem: bool = True
    dropped: int = 0
    _by_category: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, list[Document]] = {c: [] for c in self.categories}
        for doc in self.documents:
            if doc.category not in index:
                raise InputError(f"document {doc.doc_id!r} has unknown category {doc.category!r}")
            index[doc.category].append(doc)
        object.__setattr__(self, "_by_category", {c: tuple(d) for c, d in index.items()})

    @classmethod
    def from_records(cls, records: Iterable[tuple[str, str, str]],
                     stopwords: frozenset[str] | None = None, stem: bool = True) -> "CategorizedCorpus":
        """Build a corpus from ``(category, doc_id, text)`` triples."""
        if stopwords is None:
            stopwords = load_stopwords()
        docs = []
        dropped = 0
        for category, doc_id, text in records:
            tokens = tokenize(text)
            bag = preprocess(tokens, stopwords, stem)
            if bag.total == 0:
                dropped += 1
                continue
            docs.append(Document(category, doc_id, tuple(tokens), bag))
        if dropped:
            log.warning("dropped %d document(s) that were empty after preprocessing", dropped)
        return cls(frozenset(d.category for d in docs), tuple(docs), frozenset(stopwords), stem, dropped)

    def documents_in(self, category: str) -> tuple[Document, ...]:
        try:
            return self._by_category[category]
        except KeyError:
            raise UnknownItemError(f"unknown category: {category!r}") from None

    def bags_in(self, category: str) -> list[TokenBag]:
        return [d.bag for d in self.documents_in(category)]

    def sorted_categories(self) -> list[str]:
        return sorted(self.categories)

    def message_bag(self, text: str) -> TokenBag:
        """Preprocess free text the same way the corpus documents were."""
        return preprocess(tokenize(text), self.stopwords, self.stem)

    @property
    def total_tokens(self) -> int:
        return sum(d.bag.total for d in self.documents)


def load_corpus(path: str | Path, stopwords: frozenset[str] | None = None,
                stem: bool = True) -> CategorizedCorpus:
    """Read a JSON-lines corpus of ``{category, doc_id, text}`` records."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read corpus {path}: {exc}") from exc
    records = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", line=lineno, path=path) from None
        if not isinstance(obj, dict):
            raise ParseError("record must be a JSON object", line=lineno, path=path)
        try:
            category, doc_id, text = obj["category"], obj["doc_id"], obj["text"]
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}", line=lineno, path=path) from None
        if not all(isinstance(v, str) for v in (category, doc_id, text)) or not category:
            raise ParseError("fields category, doc_id and text must be strings", line=lineno, path=path)
        records.append((category, doc_id, text))
    return CategorizedCorpus.from_records(records, stopwords, stem)


def default_corpus_path() -> Path:
    return Path(str(resources.files("honeyenc").joinpath("data/corpus.jsonl")))
