"""Multinomial naive Bayes with Laplace smoothing and a MAP decision rule."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from honeyenc.corpus import CategorizedCorpus, TokenBag
from honeyenc.errors import InputError, ParseError, TrainingError

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NBModel:
    log_priors: dict[str, float]
    log_likelihoods: dict[str, dict[str, float]]
    vocabulary: frozenset[str]
    smoothing_alpha: float

    @property
    def categories(self) -> list[str]:
        return sorted(self.log_priors)

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": MODEL_FORMAT_VERSION,
                "smoothing_alpha": self.smoothing_alpha,
                "log_priors": self.log_priors,
                "log_likelihoods": self.log_likelihoods,
                "vocabulary": sorted(self.vocabulary),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "NBModel":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid model file: {exc.msg}") from None
        if obj.get("version") != MODEL_FORMAT_VERSION:
            raise ParseError(f"unsupported model version {obj.get('version')!r}")
        return cls(
            {k: float(v) for k, v in obj["log_priors"].items()},
            {c: {w: float(p) for w, p in row.items()} for c, row in obj["log_likelihoods"].items()},
            frozenset(obj["vocabulary"]),
            float(obj["smoothing_alpha"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "NBModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def train_nb(corpus: CategorizedCorpus, alpha: float = 1.0) -> NBModel:
    if not alpha > 0:
        raise InputError("smoothing alpha must be positive")
    categories = corpus.sorted_categories()
    if len(categories) < 2:
        raise TrainingError(f"need at least 2 categories, got {len(categories)}")

    n_docs = len(corpus.documents)
    token_counts: dict[str, Counter] = {}
    vocabulary: set[str] = set()
    for c in categories:
        counts = Counter()
        for bag in corpus.bags_in(c):
            counts.update(bag.counts)
        token_counts[c] = counts
        vocabulary.update(counts)

    v_size = len(vocabulary)
    log_priors = {}
    log_likelihoods = {}
    for c in categories:
        docs = corpus.documents_in(c)
        if not docs:
            raise TrainingError(f"category {c!r} has no documents")
        log_priors[c] = math.log(len(docs) / n_docs)
        counts = token_counts[c]
        denom = sum(counts.values()) + alpha * v_size
        log_likelihoods[c] = {w: math.log((counts[w] + alpha) / denom) for w in vocabulary}
    return NBModel(log_priors, log_likelihoods, frozenset(vocabulary), float(alpha))


def log_posterior(model: NBModel, bag: TokenBag) -> dict[str, float]:
    """Unnormalized log posterior per category; out-of-vocabulary tokens are ignored."""
    scores = {}
    for c, prior in model.log_priors.items():
        row = model.log_likelihoods[c]
        s = prior
        for w, n in bag.items():
            lp = row.get(w)
            if lp is not None:
                s += n * lp
        scores[c] = s
    return scores


def classify(model: NBModel, bag: TokenBag) -> str:
    scores = log_posterior(model, bag)
    # min() keeps the first of equal keys: ties go to the lexicographically first category
    return min(sorted(scores), key=lambda c: -scores[c])
