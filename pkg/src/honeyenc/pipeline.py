"""End-to-end decoy synthesis: classify, extract keywords, perturb, privatize, generate."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from honeyenc.classifier import NBModel, classify, train_nb
from honeyenc.config import PipelineConfig
from honeyenc.corpus import (
    CategorizedCorpus,
    TokenBag,
    default_corpus_path,
    load_corpus,
    load_stopwords,
    tokenize,
)
from honeyenc.embeddings import MechanismConfig, VectorStore, default_vectors_path, load_vectors, privatize_word
from honeyenc.generator import GeneratorSpec, NgramModel, generate_decoy, generate_via_external, train_ngram
from honeyenc.keywords import KeywordBag, extract_keywords
from honeyenc.stemmer import stem as stem_word
from honeyenc.synsets import SynsetGraph, default_synset_path, parse_synset_graph, perturb_keywords


@dataclass
class MessageContext:
    """Per-message state shared by every decoy generated for that message."""

    text: str
    tokens: list[str]
    bag: TokenBag
    surface: dict[str, str]
    category: str | None
    max_tokens: int
    _keywords: dict[str, KeywordBag] = field(default_factory=dict)


@dataclass
class DecoyTrace:
    category: str
    keywords: list[str]
    perturbed: list[str]
    privatized: list[str]
    text: str


class DecoyPipeline:
    """Holds the trained models and turns a plaintext into fresh decoys.

    ``prepare`` fixes everything that should be shared by all decoys of one
    encryption (the message, and the category in ``classify`` and
    ``fixed_random`` modes); ``decoy`` draws one decoy with its own rng.
    """

    def __init__(self, corpus: CategorizedCorpus, graph: SynsetGraph, store: VectorStore,
                 config: PipelineConfig | None = None, model: NBModel | None = None):
        self.config = config or PipelineConfig()
        self.corpus = corpus
        self.graph = graph
        self.store = store
        self.model = model if model is not None else train_nb(corpus, self.config.smoothing_alpha)
        self.mechanism = MechanismConfig(self.config.epsilon, self.config.mechanism)
        self._ngrams: dict[str, NgramModel] = {}
        self._bags = {c: corpus.bags_in(c) for c in corpus.categories}

    @classmethod
    def from_config(cls, config: PipelineConfig) -> "DecoyPipeline":
        stopwords = load_stopwords(config.stopword_path)
        corpus = load_corpus(config.corpus_path or default_corpus_path(), stopwords, config.stem)
        graph = parse_synset_graph(config.synset_path or default_synset_path())
        store = load_vectors(config.vector_path or default_vectors_path())
        return cls(corpus, graph, store, config)

    def with_config(self, **changes) -> "DecoyPipeline":
        """A pipeline sharing this one's trained models but with tweaked settings."""
        clone = object.__new__(DecoyPipeline)
        clone.__dict__.update(self.__dict__)
        clone.config = self.config.replace(**changes)
        clone.mechanism = MechanismConfig(clone.config.epsilon, clone.config.mechanism)
        if clone.config.ngram_order != self.config.ngram_order:
            clone._ngrams = {}
        return clone

    @property
    def categories(self) -> list[str]:
        return self.corpus.sorted_categories()

    def ngram(self, category: str) -> NgramModel:
        model = self._ngrams.get(category)
        if model is None:
            model = train_ngram(self.corpus, category, self.config.ngram_order)
            self._ngrams[category] = model
        return model

    def classify_text(self, text: str) -> str:
        return classify(self.model, self.corpus.message_bag(text))

    def prepare(self, message: str, rng: np.random.Generator) -> MessageContext:
        tokens = tokenize(message)
        stopwords = self.corpus.stopwords
        surface_counts: dict[str, Counter] = {}
        kept = []
        for tok in tokens:
            if tok in stopwords:
                continue
            s = stem_word(tok) if self.corpus.stem else tok
            if s in stopwords:
                continue
            kept.append(s)
            surface_counts.setdefault(s, Counter())[tok] += 1
        bag = TokenBag(kept)
        # most frequent surface form; Counter keeps first-seen order for ties
        surface = {s: c.most_common(1)[0][0] for s, c in surface_counts.items()}

        mode = self.config.category_mode
        if mode == "classify":
            category = classify(self.model, bag)
        elif mode == "fixed_random":
            category = self.categories[int(rng.integers(len(self.categories)))]
        else:
            category = None
        max_tokens = self.config.max_tokens or max(1, math.ceil(1.5 * len(tokens)))
        return MessageContext(message, tokens, bag, surface, category, max_tokens)

    def keywords_for(self, ctx: MessageContext, category: str) -> KeywordBag:
        kw = ctx._keywords.get(category)
        if kw is None:
            if ctx.bag.total == 0:
                kw = KeywordBag((), category)
            else:
                kw = extract_keywords(ctx.bag, self._bags[category], self.config.keywords_k, category)
            ctx._keywords[category] = kw
        return kw

    def decoy(self, ctx: MessageContext, rng: np.random.Generator) -> str:
        return self.trace_decoy(ctx, rng).text

    def trace_decoy(self, ctx: MessageContext, rng: np.random.Generator) -> DecoyTrace:
        cfg = self.config
        category = ctx.category
        if category is None:
            category = self.categories[int(rng.integers(len(self.categories)))]
        keywords = [ctx.surface.get(w, w) for w in self.keywords_for(ctx, category).tokens]
        perturbed = perturb_keywords(self.graph, keywords, cfg.p_halt, cfg.per_keyword, rng)
        store = self.store
        privatized = [privatize_word(store, w, self.mechanism, rng) if w in store.index else w
                      for w in perturbed]
        if cfg.generator == "external":
            spec = GeneratorSpec("external", cfg.external_command, ctx.max_tokens, cfg.keyword_boost)
            text = generate_via_external(spec, privatized, category)
        else:
            text = generate_decoy(self.ngram(category), privatized, ctx.max_tokens, cfg.keyword_boost, rng)
        return DecoyTrace(category, keywords, perturbed, privatized, text)

    def filler_word(self, ctx: MessageContext, rng: np.random.Generator) -> str:
        """A plausible extra word, used to break an accidental collision with the plaintext."""
        category = ctx.category or self.categories[int(rng.integers(len(self.categories)))]
        vocab = sorted(self.ngram(category).vocabulary)
        return vocab[int(rng.integers(len(vocab)))]


class FunctionPipeline:
    """Adapter turning ``fn(message, rng) -> str`` into a pipeline handle."""

    def __init__(self, fn: Callable[[str, np.random.Generator], str]):
        self.fn = fn

    def prepare(self, message: str, rng: np.random.Generator) -> str:
        return message

    def decoy(self, ctx: str, rng: np.random.Generator) -> str:
        return self.fn(ctx, rng)

    def filler_word(self, ctx: str, rng: np.random.Generator) -> str:
        return f"x{int(rng.integers(10**6))}"
