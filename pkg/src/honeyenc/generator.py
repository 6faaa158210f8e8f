"""Decoy text synthesis: keyword-steered n-gram sampling plus an external-process hook."""

from __future__ import annotations

import bisect
import json
import shlex
import subprocess
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from honeyenc.corpus import CategorizedCorpus
from honeyenc.errors import GeneratorError, InputError, UnknownItemError

DEFAULT_KEYWORD_BOOST = 5.0
DEFAULT_ORDER = 2


@dataclass(frozen=True)
class NgramModel:
    order: int
    transitions: dict[tuple[str, ...], dict[str, int]]
    sentence_starts: tuple[tuple[str, ...], ...]
    category: str = ""
    vocabulary: frozenset[str] = field(default=frozenset(), repr=False)
    # context tuples grouped by their last token, for keyword seeding
    contexts_ending: dict[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict, repr=False)
    # tokens seen right before each window of order-1 tokens
    predecessors: dict[tuple[str, ...], dict[str, int]] = field(default_factory=dict, repr=False)
    # successors of each context as (tokens, counts) sorted by token
    _succ: dict = field(default_factory=dict, repr=False, compare=False)

    def successors(self, context: tuple[str, ...]) -> tuple[tuple[str, ...], tuple[int, ...]]:
        cached = self._succ.get(context)
        if cached is None:
            row = self.transitions.get(context, {})
            toks = tuple(sorted(row))
            cached = (toks, tuple(row[t] for t in toks))
            self._succ[context] = cached
        return cached

    def predecessors_of(self, window: tuple[str, ...]) -> tuple[tuple[str, ...], tuple[int, ...]]:
        row = self.predecessors.get(window, {})
        toks = tuple(sorted(row))
        return toks, tuple(row[t] for t in toks)


def build_ngram(sequences: Sequence[Sequence[str]], order: int = DEFAULT_ORDER,
                category: str = "") -> NgramModel:
    if not 2 <= order <= 4:
        raise InputError("n-gram order must be between 2 and 4")
    ctx_len = order - 1
    counts: dict[tuple[str, ...], Counter] = {}
    preds: dict[tuple[str, ...], Counter] = {}
    starts = []
    ends = []
    vocab = set()
    for seq in sequences:
        seq = tuple(seq)
        if not seq:
            continue
        vocab.update(seq)
        starts.append(seq[:ctx_len])
        ends.append(seq[-ctx_len:])
        for i in range(len(seq) - ctx_len):
            ctx = seq[i:i + ctx_len]
            counts.setdefault(ctx, Counter())[seq[i + ctx_len]] += 1
            preds.setdefault(seq[i + 1:i + 1 + ctx_len], Counter())[seq[i]] += 1
    ending: dict[str, set] = {}
    for ctx in list(counts) + starts + ends:
        if len(ctx) == ctx_len:
            ending.setdefault(ctx[-1], set()).add(ctx)
    return NgramModel(
        order=order,
        transitions={k: dict(v) for k, v in counts.items()},
        sentence_starts=tuple(starts),
        category=category,
        vocabulary=frozenset(vocab),
        contexts_ending={w: tuple(sorted(s)) for w, s in ending.items()},
        predecessors={k: dict(v) for k, v in preds.items()},
    )


def train_ngram(corpus: CategorizedCorpus, category: str, order: int = DEFAULT_ORDER) -> NgramModel:
    """Count transitions over the raw (stopword-bearing) token order of a category."""
    docs = corpus.documents_in(category)
    if not docs:
        raise UnknownItemError(f"category {category!r} has no documents")
    return build_ngram([d.tokens for d in docs], order, category)


def _weighted_choice(items, weights, rng) -> int:
    cum = []
    total = 0.0
    for w in weights:
        total += w
        cum.append(total)
    return min(bisect.bisect_right(cum, rng.random() * total), len(items) - 1)


def generate_tokens(model: NgramModel, keywords: Sequence[str] = (), max_tokens: int = 30,
                    keyword_boost: float = DEFAULT_KEYWORD_BOOST,
                    rng: np.random.Generator | None = None) -> list[str]:
    if max_tokens < 1:
        raise InputError("max_tokens must be positive")
    if keyword_boost < 1:
        raise InputError("keyword_boost must be at least 1")
    if not model.sentence_starts:
        return []
    rng = rng if rng is not None else np.random.default_rng()
    kw = frozenset(keywords)

    usable = [w for w in dict.fromkeys(keywords) if w in model.vocabulary]
    if usable:
        seed_word = usable[int(rng.integers(len(usable)))]
        options = model.contexts_ending.get(seed_word)
        if options:
            out = list(options[int(rng.integers(len(options)))])
        else:
            out = [seed_word]
    else:
        out = list(model.sentence_starts[int(rng.integers(len(model.sentence_starts)))])
    out = out[:max_tokens]

    ctx_len = model.order - 1
    while len(out) < max_tokens:
        toks, counts = model.successors(tuple(out[-ctx_len:]))
        if not toks:
            break
        if keyword_boost != 1 and kw:
            weights = [c * keyword_boost if t in kw else c for t, c in zip(toks, counts)]
        else:
            weights = counts
        out.append(toks[_weighted_choice(toks, weights, rng)])

    # a seed near the end of its document runs dry early; grow leftwards instead
    while len(out) < max_tokens and len(out) >= ctx_len:
        toks, counts = model.predecessors_of(tuple(out[:ctx_len]))
        if not toks:
            break
        if keyword_boost != 1 and kw:
            weights = [c * keyword_boost if t in kw else c for t, c in zip(toks, counts)]
        else:
            weights = counts
        out.insert(0, toks[_weighted_choice(toks, weights, rng)])
    return out


def generate_decoy(model: NgramModel, keywords: Sequence[str] = (), max_tokens: int = 30,
                   keyword_boost: float = DEFAULT_KEYWORD_BOOST,
                   rng: np.random.Generator | None = None) -> str:
    """Sample decoy text from the model, favouring successors that are keywords.

    When any keyword is in the model vocabulary one of them seeds the
    context, so the decoy always carries at least one keyword. Text grows
    rightwards from the seed and, if that runs dry, leftwards.
    """
    return " ".join(generate_tokens(model, keywords, max_tokens, keyword_boost, rng))


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str = "ngram"
    external_command: str | None = None
    max_tokens: int = 30
    keyword_boost: float = DEFAULT_KEYWORD_BOOST
    timeout: float = 60.0

    def __post_init__(self):
        if self.kind not in ("ngram", "external"):
            raise InputError(f"unknown generator kind {self.kind!r}")
        if (self.kind == "external") != bool(self.external_command):
            raise InputError("external_command is required for, and only for, kind='external'")
        if self.max_tokens < 1:
            raise InputError("max_tokens must be positive")
        if self.keyword_boost < 1:
            raise InputError("keyword_boost must be at least 1")


def generate_via_external(spec: GeneratorSpec, keywords: Sequence[str], category: str) -> str:
    """Run ``spec.external_command``; send one JSON line on stdin, read text from stdout."""
    if spec.kind != "external":
        raise InputError("generator spec is not external")
    request = json.dumps({"keywords": list(keywords), "category": category,
                          "max_tokens": spec.max_tokens}) + "\n"
    try:
        proc = subprocess.run(
            shlex.split(spec.external_command),
            input=request.encode("utf-8"),
            capture_output=True,
            timeout=spec.timeout,
            check=False,
        )
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise GeneratorError(f"external generator failed to run: {exc}") from exc
    if proc.returncode != 0:
        diag = proc.stderr.decode("utf-8", "replace").strip()
        raise GeneratorError(f"external generator exited with {proc.returncode}: {diag}")
    tokens = proc.stdout.decode("utf-8", "replace").split()
    if not tokens:
        raise GeneratorError("external generator produced no output")
    return " ".join(tokens[: spec.max_tokens])
