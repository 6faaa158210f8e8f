import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from honeyenc.classifier import NBModel, classify, log_posterior, train_nb
from honeyenc.corpus import CategorizedCorpus, TokenBag
from honeyenc.errors import InputError, TrainingError


def test_toy_likelihood_and_priors(ab_corpus):
    model = train_nb(ab_corpus, alpha=1.0)
    assert model.vocabulary == {"x", "y"}
    assert math.exp(model.log_likelihoods["A"]["x"]) == pytest.approx(0.75, abs=1e-12)
    assert math.exp(model.log_likelihoods["B"]["y"]) == pytest.approx(2 / 3, abs=1e-12)
    assert model.log_priors["A"] == pytest.approx(math.log(0.5))
    assert model.log_priors["B"] == pytest.approx(math.log(0.5))


def test_single_category_rejected():
    corpus = CategorizedCorpus.from_records([("A", "1", "x")], stopwords=frozenset(), stem=False)
    with pytest.raises(TrainingError):
        train_nb(corpus)


def test_alpha_must_be_positive(ab_corpus):
    with pytest.raises(InputError):
        train_nb(ab_corpus, alpha=0)


def test_posterior_examples(ab_corpus):
    model = train_nb(ab_corpus)
    assert log_posterior(model, TokenBag()) == model.log_priors
    assert log_posterior(model, TokenBag(["zzz"])) == model.log_priors
    s = log_posterior(model, TokenBag(["x"]))
    # P(x|A) = 3/4, P(x|B) = 1/3 with alpha=1, V={x,y}
    assert s["A"] - s["B"] == pytest.approx(math.log(0.75 / (1 / 3)), abs=1e-12)


def test_log_three_difference_with_symmetric_counts():
    corpus = CategorizedCorpus.from_records([("A", "a", "x x"), ("B", "b", "y y")],
                                            stopwords=frozenset(), stem=False)
    s = log_posterior(train_nb(corpus), TokenBag(["x"]))
    assert s["A"] - s["B"] == pytest.approx(math.log(3), abs=1e-12)


def test_classify_examples(ab_corpus):
    model = train_nb(ab_corpus)
    assert classify(model, TokenBag({"x": 3})) == "A"
    assert classify(model, TokenBag()) == "A"
    assert classify(model, TokenBag({"y": 2})) == "B"


def test_tie_goes_to_first_category():
    corpus = CategorizedCorpus.from_records([("zeta", "1", "p"), ("alpha", "2", "q")],
                                            stopwords=frozenset(), stem=False)
    assert classify(train_nb(corpus), TokenBag()) == "alpha"


def brute_force_scores(docs, alpha, bag):
    """Recompute log posteriors straight from raw (category, tokens) pairs."""
    cats = sorted({c for c, _ in docs})
    vocab = {t for _, toks in docs for t in toks}
    out = {}
    for c in cats:
        mine = [toks for cc, toks in docs if cc == c]
        total = sum(len(t) for t in mine)
        s = math.log(len(mine) / len(docs))
        for w, n in bag.items():
            if w not in vocab:
                continue
            count = sum(t.count(w) for t in mine)
            s += n * math.log((count + alpha) / (total + alpha * len(vocab)))
        out[c] = s
    return out


def disjoint_corpus(seed, per_category=20):
    rng = np.random.default_rng(seed)
    vocab = {"A": [f"alpha{i}" for i in range(12)], "B": [f"beta{i}" for i in range(12)]}
    # letters only so the tokenizer keeps the words whole
    vocab = {c: [w.translate(str.maketrans("0123456789", "abcdefghij")) for w in ws] for c, ws in vocab.items()}
    records = []
    for c, words in vocab.items():
        for i in range(per_category):
            toks = rng.choice(words, size=int(rng.integers(3, 9)))
            records.append((c, f"{c}{i}", " ".join(toks)))
    return records, vocab


def test_disjoint_vocabulary_heldout_accuracy():
    records, vocab = disjoint_corpus(3)
    corpus = CategorizedCorpus.from_records(records, stopwords=frozenset(), stem=False)
    model = train_nb(corpus)
    rng = np.random.default_rng(99)
    for c, words in vocab.items():
        for _ in range(25):
            bag = TokenBag(list(rng.choice(words, size=int(rng.integers(1, 6)))))
            assert classify(model, bag) == c


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), alpha=st.sampled_from([0.5, 1.0, 2.0]))
def test_scores_match_brute_force(seed, alpha):
    records, vocab = disjoint_corpus(seed, per_category=5)
    corpus = CategorizedCorpus.from_records(records, stopwords=frozenset(), stem=False)
    model = train_nb(corpus, alpha)
    docs = [(d.category, list(d.tokens)) for d in corpus.documents]
    rng = np.random.default_rng(seed)
    words = vocab["A"] + vocab["B"] + ["unseen"]
    bag = TokenBag(list(rng.choice(words, size=6)))
    got = log_posterior(model, bag)
    want = brute_force_scores(docs, alpha, bag)
    for c in want:
        assert got[c] == pytest.approx(want[c], abs=1e-9)


def test_scaling_bag_keeps_argmax_when_evidence_agrees(ab_corpus):
    model = train_nb(ab_corpus)
    bag = TokenBag({"x": 2})
    for k in (1, 2, 5, 17):
        assert classify(model, bag.scaled(k)) == "A"


def test_model_json_round_trip(tmp_path, ab_corpus):
    model = train_nb(ab_corpus)
    path = tmp_path / "m.json"
    model.save(path)
    again = NBModel.load(path)
    assert again == model
    with pytest.raises(Exception):
        NBModel.from_json('{"version": 99}')
