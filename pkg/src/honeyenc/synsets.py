"""Hypernym/hyponym graph loading and random keyword perturbation.

Graph file format (TSV, one synset per line)::

    id <TAB> pos <TAB> lemma,lemma,... <TAB> hypernym_id,hypernym_id,...

``pos`` is one of ``n a v r``; the hypernym field is empty for roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from honeyenc.errors import GraphError, InputError, ParseError, UnknownItemError
from honeyenc.keywords import KeywordBag

POS_CODES = {"n": "noun", "a": "adjective", "v": "verb", "r": "adverb"}
DEFAULT_POS_FILTER = frozenset({"noun", "adjective"})
DEFAULT_P_HALT = 0.5
DEFAULT_PER_KEYWORD = 2


@dataclass(frozen=True)
class Synset:
    id: str
    pos: str
    lemmas: tuple[str, ...]
    hypernyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class SynsetGraph:
    synsets: dict[str, Synset]
    lemma_index: dict[str, tuple[str, ...]]
    hyponyms: dict[str, tuple[str, ...]] = field(repr=False)

    def __contains__(self, synset_id):
        return synset_id in self.synsets

    def __len__(self):
        return len(self.synsets)

    def get(self, synset_id: str) -> Synset:
        try:
            return self.synsets[synset_id]
        except KeyError:
            raise UnknownItemError(f"unknown synset id: {synset_id!r}") from None

    def roots(self) -> list[str]:
        return sorted(s.id for s in self.synsets.values() if not s.hypernyms)

    def first_synset(self, lemma: str) -> str | None:
        ids = self.lemma_index.get(lemma)
        return ids[0] if ids else None

    def ancestors(self, synset_id: str) -> set[str]:
        """All synsets reachable upward, including ``synset_id`` itself."""
        seen = {synset_id}
        stack = [synset_id]
        while stack:
            for parent in self.get(stack.pop()).hypernyms:
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)
        return seen


def build_graph(synsets: Iterable[Synset]) -> SynsetGraph:
    """Index synsets and validate hypernym references and acyclicity."""
    table = {}
    for s in synsets:
        if s.id in table:
            raise GraphError(f"duplicate synset id {s.id!r}")
        table[s.id] = s
    for s in table.values():
        for h in s.hypernyms:
            if h not in table:
                raise GraphError(f"synset {s.id!r} names missing hypernym {h!r}")
    _check_acyclic(table)

    lemma_index: dict[str, list[str]] = {}
    children: dict[str, list[str]] = {sid: [] for sid in table}
    for sid in sorted(table):
        s = table[sid]
        for lemma in s.lemmas:
            ids = lemma_index.setdefault(lemma, [])
            if sid not in ids:
                ids.append(sid)
        for h in s.hypernyms:
            children[h].append(sid)
    return SynsetGraph(
        table,
        {k: tuple(v) for k, v in lemma_index.items()},
        {k: tuple(sorted(v)) for k, v in children.items()},
    )


def _check_acyclic(table: dict[str, Synset]) -> None:
    white, grey, black = 0, 1, 2
    color = dict.fromkeys(table, white)
    for start in sorted(table):
        if color[start] != white:
            continue
        color[start] = grey
        stack = [(start, iter(table[start].hypernyms))]
        while stack:
            node, parents = stack[-1]
            for parent in parents:
                if color[parent] == grey:
                    raise GraphError(f"hypernym cycle through synset {parent!r}")
                if color[parent] == white:
                    color[parent] = grey
                    stack.append((parent, iter(table[parent].hypernyms)))
                    break
            else:
                color[node] = black
                stack.pop()


def _split_list(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def parse_synset_graph(path: str | Path) -> SynsetGraph:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read synset file {path}: {exc}") from exc

    synsets: list[Synset] = []
    line_of: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\r\n").split("\t")
        if len(fields) == 3:
            fields.append("")
        if len(fields) != 4:
            raise ParseError(f"expected 4 tab-separated fields, got {len(fields)}", lineno, path)
        sid, pos, lemmas, hypernyms = (f.strip() for f in fields)
        if not sid:
            raise ParseError("empty synset id", lineno, path)
        if sid in line_of:
            raise ParseError(f"duplicate synset id {sid!r} (first on line {line_of[sid]})", lineno, path)
        if pos not in POS_CODES:
            raise ParseError(f"unknown part of speech {pos!r}", lineno, path)
        lemma_list = tuple(l.casefold() for l in _split_list(lemmas))
        if not lemma_list:
            raise ParseError(f"synset {sid!r} has no lemmas", lineno, path)
        hyper = _split_list(hypernyms)
        if sid in hyper:
            raise GraphError(f"hypernym cycle through synset {sid!r}")
        line_of[sid] = lineno
        synsets.append(Synset(sid, POS_CODES[pos], lemma_list, hyper))

    known = set(line_of)
    for s in synsets:
        for h in s.hypernyms:
            if h not in known:
                raise ParseError(f"hypernym {h!r} of {s.id!r} does not exist", line_of[s.id], path)
    return build_graph(synsets)


def default_synset_path() -> Path:
    return Path(str(resources.files("honeyenc").joinpath("data/synsets.tsv")))


def hypernym_ascent(graph: SynsetGraph, start: str, p_halt: float = DEFAULT_P_HALT,
                    rng: np.random.Generator | None = None) -> str:
    """Climb hypernym links, flipping a ``p_halt`` coin at every level.

    A root always halts without consuming randomness. With several parents
    the next node is chosen uniformly.
    """
    if not 0 < p_halt <= 1:
        raise InputError("p_halt must lie in (0, 1]")
    rng = rng if rng is not None else np.random.default_rng()
    current = graph.get(start)
    while current.hypernyms:
        if rng.random() < p_halt:
            break
        parents = current.hypernyms
        nxt = parents[0] if len(parents) == 1 else parents[int(rng.integers(len(parents)))]
        current = graph.synsets[nxt]
    return current.id


def collect_hyponym_subtree(graph: SynsetGraph, root: str,
                            pos_filter: Iterable[str] = DEFAULT_POS_FILTER) -> Iterator[str]:
    """Yield lemmas of ``root`` and its descendants, deduplicated, in synset-id order."""
    graph.get(root)
    pos_filter = frozenset(pos_filter)
    reachable = {root}
    stack = [root]
    while stack:
        for child in graph.hyponyms[stack.pop()]:
            if child not in reachable:
                reachable.add(child)
                stack.append(child)

    def _stream():
        seen = set()
        for sid in sorted(reachable):
            s = graph.synsets[sid]
            if s.pos not in pos_filter:
                continue
            for lemma in s.lemmas:
                if lemma not in seen:
                    seen.add(lemma)
                    yield lemma

    return _stream()


def reservoir_sample(stream: Iterable, k: int, rng: np.random.Generator | None = None) -> list:
    """Uniform k-subset of a stream in one pass (Vitter's Algorithm R)."""
    if k < 1:
        raise InputError("sample size must be at least 1")
    rng = rng if rng is not None else np.random.default_rng()
    it = iter(stream)
    reservoir = list(itertools.islice(it, k))
    for seen, item in enumerate(it, start=k + 1):
        j = int(rng.integers(seen))
        if j < k:
            reservoir[j] = item
    return reservoir


def perturb_keywords(graph: SynsetGraph, keywords: KeywordBag | Sequence[str],
                     p_halt: float = DEFAULT_P_HALT, per_keyword: int = DEFAULT_PER_KEYWORD,
                     rng: np.random.Generator | None = None,
                     pos_filter: Iterable[str] = DEFAULT_POS_FILTER,
                     trace: list | None = None) -> list[str]:
    """Swap each keyword for lemmas sampled under a randomly chosen ancestor.

    Keywords the graph does not know pass through unchanged, and so does a
    keyword whose sampled subtree offers no alternative. When ``trace`` is a
    list, ``(keyword, new_root)`` pairs are appended to it.
    """
    rng = rng if rng is not None else np.random.default_rng()
    words = keywords.tokens if isinstance(keywords, KeywordBag) else list(keywords)
    out: list[str] = []
    for word in words:
        sid = graph.first_synset(word)
        if sid is None:
            out.append(word)
            continue
        root = hypernym_ascent(graph, sid, p_halt, rng)
        if trace is not None:
            trace.append((word, root))
        candidates = (l for l in collect_hyponym_subtree(graph, root, pos_filter) if l != word)
        picked = reservoir_sample(candidates, per_keyword, rng)
        out.extend(picked if picked else [word])
    return out
