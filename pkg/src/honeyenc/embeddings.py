"""Word vectors, cosine similarity and metric-private word substitution.

Vector file format: a header line ``count dim`` followed by one
``word v1 ... v_dim`` line per word.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from honeyenc.errors import InputError, ParseError, UnknownItemError

log = logging.getLogger(__name__)

CONTINUOUS_LAPLACE = "continuous_laplace"
DISCRETE_EXPONENTIAL = "discrete_exponential"
MECHANISM_MODES = (CONTINUOUS_LAPLACE, DISCRETE_EXPONENTIAL)


@dataclass(frozen=True)
class MechanismConfig:
    epsilon: float
    mode: str = DISCRETE_EXPONENTIAL

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise InputError(f"epsilon must be a positive finite number, got {self.epsilon!r}")
        if self.mode not in MECHANISM_MODES:
            raise InputError(f"unknown mechanism mode {self.mode!r}")


class VectorStore:
    """Immutable word -> vector map with exhaustive similarity queries."""

    def __init__(self, vectors: Mapping[str, Sequence[float]]):
        if not vectors:
            raise InputError("a vector store needs at least one word")
        self.words: tuple[str, ...] = tuple(vectors)
        self.matrix = np.array([np.asarray(vectors[w], dtype=float) for w in self.words])
        if self.matrix.ndim != 2:
            raise InputError("all vectors must have the same length")
        self.dim = self.matrix.shape[1]
        norms = np.linalg.norm(self.matrix, axis=1)
        if np.any(norms == 0):
            bad = self.words[int(np.argmin(norms))]
            raise InputError(f"zero vector for word {bad!r}")
        self.unit = self.matrix / norms[:, None]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.matrix.setflags(write=False)
        self.unit.setflags(write=False)
        self._distances = None
        self._exp_cache: dict[float, np.ndarray] = {}

    def __contains__(self, word):
        return word in self.index

    def __len__(self):
        return len(self.words)

    def idx(self, word: str) -> int:
        try:
            return self.index[word]
        except KeyError:
            raise UnknownItemError(f"word not in vocabulary: {word!r}") from None

    def vector(self, word: str) -> np.ndarray:
        return self.matrix[self.idx(word)]

    def unit_vector(self, word: str) -> np.ndarray:
        return self.unit[self.idx(word)]

    def distances(self) -> np.ndarray:
        """Pairwise Euclidean distances between unit-normalized vectors."""
        if self._distances is None:
            gram = np.clip(self.unit @ self.unit.T, -1.0, 1.0)
            d = np.sqrt(np.maximum(2.0 - 2.0 * gram, 0.0))
            np.fill_diagonal(d, 0.0)
            d = (d + d.T) / 2
            d.setflags(write=False)
            self._distances = d
        return self._distances

    def distance(self, w1: str, w2: str) -> float:
        return float(self.distances()[self.idx(w1), self.idx(w2)])

    def subset(self, words: Sequence[str]) -> "VectorStore":
        return VectorStore({w: self.vector(w) for w in words})


def load_vectors(path: str | Path) -> VectorStore:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read vector file {path}: {exc}") from exc
    if not lines:
        raise ParseError("empty vector file", 1, path)
    header = lines[0].split()
    try:
        count, dim = int(header[0]), int(header[1])
    except (IndexError, ValueError):
        raise ParseError("header must be 'count dim'", 1, path) from None
    if dim < 1:
        raise ParseError("dimension must be positive", 1, path)

    vectors: dict[str, list[float]] = {}
    duplicates = 0
    rows = 0
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts:
            continue
        rows += 1
        word, values = parts[0], parts[1:]
        if len(values) != dim:
            raise ParseError(f"expected {dim} components for {word!r}, got {len(values)}", lineno, path)
        try:
            vec = [float(v) for v in values]
        except ValueError:
            raise ParseError(f"non-numeric component in vector for {word!r}", lineno, path) from None
        if word in vectors:
            duplicates += 1
            del vectors[word]
        vectors[word] = vec
    if duplicates:
        log.warning("%s: %d duplicate word(s); last occurrence kept", path, duplicates)
    if rows != count:
        log.warning("%s: header announces %d vectors, found %d", path, count, rows)
    return VectorStore(vectors)


def default_vectors_path() -> Path:
    return Path(str(resources.files("honeyenc").joinpath("data/vectors.txt")))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise InputError("cosine similarity is undefined for a zero vector")
    return float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0))


def similarity(store: VectorStore, w1: str, w2: str) -> float:
    if w1 == w2:
        store.idx(w1)
        return 1.0
    return float(np.clip(np.dot(store.unit_vector(w1), store.unit_vector(w2)), -1.0, 1.0))


def nearest_neighbors(store: VectorStore, query, k: int,
                      exclude: frozenset[str] | set[str] = frozenset()) -> list[tuple[str, float]]:
    """Exact top-k by cosine similarity; equal scores ordered by word."""
    query = np.asarray(query, dtype=float)
    if query.shape != (store.dim,):
        raise InputError(f"query must have length {store.dim}")
    norm = np.linalg.norm(query)
    if norm == 0:
        raise InputError("zero query vector has no direction")
    sims = np.clip(store.unit @ (query / norm), -1.0, 1.0)
    ranked = sorted(
        ((float(s), w) for w, s in zip(store.words, sims) if w not in exclude),
        key=lambda sw: (-sw[0], sw[1]),
    )
    return [(w, s) for s, w in ranked[:k]]


def exponential_probabilities(store: VectorStore, epsilon: float) -> np.ndarray:
    """Row-stochastic matrix P[i, j] = P(word i -> word j) of the discrete mechanism.

    Weights are ``exp(-epsilon * d / 2)``. The halved exponent is what makes
    the normalized mechanism epsilon-d private: each row's normalizer can
    differ by up to ``exp(epsilon * d / 2)`` between neighbouring inputs.
    """
    cached = store._exp_cache.get(epsilon)
    if cached is not None:
        return cached
    logits = -0.5 * epsilon * store.distances()
    logits = logits - logits.max(axis=1, keepdims=True)
    w = np.exp(logits)
    p = w / w.sum(axis=1, keepdims=True)
    p.setflags(write=False)
    store._exp_cache[epsilon] = p
    return p


def _cumulative(store: VectorStore, epsilon: float) -> np.ndarray:
    key = ("cum", epsilon)
    cached = store._exp_cache.get(key)
    if cached is None:
        cached = np.cumsum(exponential_probabilities(store, epsilon), axis=1)
        store._exp_cache[key] = cached
    return cached


def laplace_noise(dim: int, epsilon: float, rng: np.random.Generator) -> np.ndarray:
    """Sample z in R^dim with density proportional to exp(-epsilon * |z|)."""
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    radius = rng.gamma(shape=dim, scale=1.0 / epsilon)
    return direction * radius


def privatize_word(store: VectorStore, w: str, cfg: MechanismConfig,
                   rng: np.random.Generator | None = None) -> str:
    rng = rng if rng is not None else np.random.default_rng()
    i = store.idx(w)
    if cfg.mode == CONTINUOUS_LAPLACE:
        noisy = store.unit[i] + laplace_noise(store.dim, cfg.epsilon, rng)
        d2 = np.sum((store.unit - noisy) ** 2, axis=1)
        return store.words[int(np.argmin(d2))]
    cum = _cumulative(store, cfg.epsilon)[i]
    j = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return store.words[min(j, len(store.words) - 1)]


def privatize_bag(store: VectorStore, bag: Sequence[str], cfg: MechanismConfig,
                  rng: np.random.Generator | None = None) -> list[str]:
    """Apply the word mechanism independently to every token, keeping order.

    Out-of-vocabulary tokens pass through untouched.
    """
    rng = rng if rng is not None else np.random.default_rng()
    out = []
    missing = 0
    for w in bag:
        if w in store.index:
            out.append(privatize_word(store, w, cfg, rng))
        else:
            missing += 1
            out.append(w)
    if missing:
        log.warning("privatize_bag: %d out-of-vocabulary token(s) passed through", missing)
    return out
