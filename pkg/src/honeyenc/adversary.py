"""Cosine-similarity distinguisher and the epsilon sweep experiment."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from honeyenc.corpus import tokenize
from honeyenc.embeddings import VectorStore
from honeyenc.errors import HoneyError, InputError, RepresentationError

log = logging.getLogger(__name__)

DEFAULT_COEFF = 0.03
DEFAULT_EPSILONS = (10.0, 15.0, 20.0, 25.0, 30.0)
DEFAULT_DECOY_COUNTS = (100, 500)


def embed_message(store: VectorStore, message: str) -> np.ndarray:
    """Re-normalized mean of the unit vectors of the message's in-vocabulary tokens."""
    idx = [store.index[t] for t in tokenize(message) if t in store.index]
    if not idx:
        raise RepresentationError("message has no in-vocabulary tokens")
    mean = store.unit[idx].mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm < 1e-12:
        raise RepresentationError("message vectors cancel out")
    return mean / norm


@dataclass(frozen=True)
class AuthorProfile:
    centroid: np.ndarray
    sample_count: int


def build_profile(store: VectorStore, samples: Sequence[str]) -> AuthorProfile:
    """Average the embeddings of the known samples. Unrepresentable samples are skipped."""
    vecs = []
    for s in samples:
        try:
            vecs.append(embed_message(store, s))
        except RepresentationError:
            continue
    if not vecs:
        raise RepresentationError("no sample has an embedding")
    return AuthorProfile(np.mean(vecs, axis=0), len(vecs))


def cosine_to_profile(profile: AuthorProfile, message: str, store: VectorStore) -> float:
    v = embed_message(store, message)
    c = profile.centroid
    n = np.linalg.norm(c)
    if n == 0:
        raise RepresentationError("profile centroid is the zero vector")
    return float(np.clip(np.dot(c, v) / n, -1.0, 1.0))


def distinguish(profile: AuthorProfile, message: str, store: VectorStore, epsilon: float,
                coeff: float = DEFAULT_COEFF) -> int:
    """1 if the message matches the profile at threshold ``coeff * epsilon``, else 0."""
    threshold = coeff * epsilon
    if threshold > 1:
        return 0
    return int(cosine_to_profile(profile, message, store) >= max(threshold, -1.0))


@dataclass(frozen=True)
class ExperimentConfig:
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    decoy_counts: tuple[int, ...] = DEFAULT_DECOY_COUNTS
    threshold_coefficient: float = DEFAULT_COEFF
    rng_seed: int = 0

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        if not eps or any(e <= 0 for e in eps):
            raise InputError("epsilons must be positive")
        if any(n < 1 for n in self.decoy_counts) or not self.decoy_counts:
            raise InputError("decoy counts must be positive")
        object.__setattr__(self, "epsilons", tuple(sorted(eps)))
        object.__setattr__(self, "decoy_counts", tuple(int(n) for n in self.decoy_counts))


@dataclass
class ExperimentResult:
    """Counts per (epsilon, decoy count) cell.

    ``author`` and ``context`` hold how many decoys each adversary told
    apart from its profile (cosine below the threshold); ``*_matched`` hold
    the complementary accepted counts.
    """

    config: ExperimentConfig
    category: str
    author: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)
    author_matched: dict = field(default_factory=dict)
    context_matched: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    def column(self, table: str, n: int) -> list[int]:
        """Counts for one decoy count, epsilons ascending."""
        t = getattr(self, table)
        return [t[(e, n)] for e in self.config.epsilons]

    def to_csv(self, table: str = "author") -> str:
        t = getattr(self, table)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["epsilon", *self.config.decoy_counts])
        for e in sorted(self.config.epsilons, reverse=True):
            w.writerow([f"{e:g}", *(t[(e, n)] for n in self.config.decoy_counts)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"category: {self.category}"]
        for table, title in (("author", "author distinguisher"), ("context", "context distinguisher")):
            t = getattr(self, table)
            lines.append(f"{title} (decoys told apart)")
            lines.append("epsilon  " + "".join(f"{n:>8}" for n in self.config.decoy_counts))
            for e in sorted(self.config.epsilons, reverse=True):
                lines.append(f"{e:<9g}" + "".join(f"{t[(e, n)]:>8}" for n in self.config.decoy_counts))
        total_failures = sum(self.failures.values())
        if total_failures:
            lines.append(f"pipeline failures: {total_failures}")
        return "\n".join(lines)


def run_distinguisher_experiment(cfg: ExperimentConfig, pipeline, store: VectorStore,
                                 author_samples: Sequence[str], context_corpus=None,
                                 message: str | None = None) -> ExperimentResult:
    """Generate decoys of ``message`` per cell and count what each adversary catches.

    The author adversary profiles ``author_samples``; the context adversary
    profiles every document of the message's category in ``context_corpus``
    (the pipeline's corpus when omitted). Each cell draws from its own
    generator seeded by ``(rng_seed, epsilon index, count index)``.
    """
    if not author_samples:
        raise InputError("need at least one author sample")
    message = message if message is not None else author_samples[0]
    context_corpus = context_corpus if context_corpus is not None else pipeline.corpus
    author_profile = build_profile(store, author_samples)

    prep_rng = np.random.default_rng([cfg.rng_seed, 2**31 - 1])
    category = pipeline.prepare(message, prep_rng).category or pipeline.classify_text(message)
    docs = context_corpus.documents_in(category)
    context_profile = build_profile(store, [" ".join(d.tokens) for d in docs])

    result = ExperimentResult(cfg, category)
    coeff = cfg.threshold_coefficient
    for i, eps in enumerate(cfg.epsilons):
        cell_pipeline = pipeline.with_config(epsilon=eps)
        for j, n in enumerate(cfg.decoy_counts):
            rng = np.random.default_rng([cfg.rng_seed, i, j])
            ctx = cell_pipeline.prepare(message, rng)
            a_hit = c_hit = fails = 0
            for _ in range(n):
                try:
                    decoy = cell_pipeline.decoy(ctx, rng)
                    a_hit += distinguish(author_profile, decoy, store, eps, coeff)
                    c_hit += distinguish(context_profile, decoy, store, eps, coeff)
                except HoneyError as exc:
                    log.debug("experiment cell (%g, %d): %s", eps, n, exc)
                    fails += 1
            ok = n - fails
            result.author_matched[(eps, n)] = a_hit
            result.context_matched[(eps, n)] = c_hit
            result.author[(eps, n)] = ok - a_hit
            result.context[(eps, n)] = ok - c_hit
            result.failures[(eps, n)] = fails
    return result
