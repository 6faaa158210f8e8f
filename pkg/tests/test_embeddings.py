import logging
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from honeyenc.embeddings import (
    MechanismConfig,
    VectorStore,
    cosine,
    default_vectors_path,
    exponential_probabilities,
    laplace_noise,
    load_vectors,
    nearest_neighbors,
    privatize_bag,
    privatize_word,
    similarity,
)
from honeyenc.emd import word_bound_excess
from honeyenc.errors import InputError, ParseError, UnknownItemError

# two unit vectors 60 degrees apart: Euclidean distance exactly 1
UNIT_PAIR = {"a": [1.0, 0.0], "b": [0.5, math.sqrt(3) / 2]}


def test_load_small_file(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("2 3\ncat 1 0 0\ndog 0 1 0\n")
    store = load_vectors(p)
    assert len(store) == 2 and store.dim == 3


def test_load_dimension_mismatch_names_line(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("2 3\ncat 1 0 0\ndog 0 1\n")
    with pytest.raises(ParseError) as info:
        load_vectors(p)
    assert info.value.line == 3


def test_load_header_count_mismatch_warns(tmp_path, caplog):
    p = tmp_path / "v.txt"
    p.write_text("5 2\ncat 1 0\ndog 0 1\n")
    with caplog.at_level(logging.WARNING):
        store = load_vectors(p)
    assert len(store) == 2
    assert "announces 5" in caplog.text


@pytest.mark.parametrize("text", ["", "two 3\n", "1 2\ncat 1 x\n"])
def test_load_bad_files(tmp_path, text):
    p = tmp_path / "v.txt"
    p.write_text(text)
    with pytest.raises(ParseError):
        load_vectors(p)


def test_zero_vector_rejected():
    with pytest.raises(InputError):
        VectorStore({"a": [0.0, 0.0]})


def test_similarity_examples():
    store = VectorStore({"v1": [1.0, 0.0], "v2": [1.0, 1.0], "v3": [0.0, 2.0]})
    assert similarity(store, "v1", "v1") == 1.0
    assert similarity(store, "v1", "v3") == 0.0
    assert similarity(store, "v1", "v2") == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    with pytest.raises(UnknownItemError):
        similarity(store, "v1", "nope")
    with pytest.raises(InputError):
        cosine(np.zeros(2), np.ones(2))


def test_shipped_store_symmetry():
    store = load_vectors(default_vectors_path())
    words = store.words[:12]
    for w in words:
        assert similarity(store, w, w) == 1.0
        for u in words:
            assert similarity(store, w, u) == similarity(store, u, w)
    d = store.distances()
    assert np.allclose(d, d.T) and np.all(np.diag(d) == 0)


def test_nearest_neighbors_examples():
    store = VectorStore({
        "east": [1.0, 0.0],
        "north": [0.0, 1.0],
        "northeast": [1.0, 1.0],
        "west": [-1.0, 0.0],
    })
    assert nearest_neighbors(store, [1.0, 0.0], 1) == [("east", 1.0)]
    # hand ranking for query (2, 1): cos = .894 east, .949 northeast, .447 north, -.894 west
    ranked = nearest_neighbors(store, [2.0, 1.0], 10)
    assert [w for w, _ in ranked] == ["northeast", "east", "north", "west"]
    assert ranked[0][1] == pytest.approx(3 / math.sqrt(10))
    assert [w for w, _ in nearest_neighbors(store, [1.0, 0.0], 2, exclude={"east"})] == ["northeast", "north"]
    with pytest.raises(InputError):
        nearest_neighbors(store, [1.0, 0.0, 0.0], 1)


def test_nearest_neighbors_ties_lexicographic():
    store = VectorStore({"b": [0.0, 1.0], "a": [0.0, -1.0], "c": [1.0, 0.0]})
    assert [w for w, _ in nearest_neighbors(store, [1.0, 0.0], 3)] == ["c", "a", "b"]


def test_nearest_neighbors_total_order():
    store = load_vectors(default_vectors_path())
    ranked = nearest_neighbors(store, store.vector("pizza"), len(store))
    assert len(ranked) == len(store)
    sims = [s for _, s in ranked]
    assert sims == sorted(sims, reverse=True)


def test_discrete_two_word_closed_form():
    store = VectorStore(UNIT_PAIR)
    assert store.distance("a", "b") == pytest.approx(1.0, abs=1e-12)
    # weights exp(-eps * d / 2): P(a->a) = 1 / (1 + exp(-eps / 2))
    p = exponential_probabilities(store, math.log(4))
    assert p[0, 0] == pytest.approx(2 / 3, abs=1e-12)
    p = exponential_probabilities(store, 2 * math.log(4))
    assert p[0, 0] == pytest.approx(0.8, abs=1e-12)


def test_discrete_sampler_matches_probabilities():
    store = VectorStore(UNIT_PAIR)
    cfg = MechanismConfig(2 * math.log(4))
    rng = np.random.default_rng(8)
    hits = sum(privatize_word(store, "a", cfg, rng) == "a" for _ in range(10000))
    sigma = math.sqrt(0.8 * 0.2 / 10000)
    assert abs(hits / 10000 - 0.8) < 4 * sigma


@pytest.mark.parametrize("mode", ["discrete_exponential", "continuous_laplace"])
def test_huge_epsilon_keeps_word(mode):
    store = load_vectors(default_vectors_path())
    cfg = MechanismConfig(1e6, mode)
    rng = np.random.default_rng(3)
    kept = sum(privatize_word(store, "soup", cfg, rng) == "soup" for _ in range(10000))
    assert kept / 10000 >= 0.999


@pytest.mark.parametrize("mode", ["discrete_exponential", "continuous_laplace"])
def test_privatize_replay(mode):
    store = load_vectors(default_vectors_path())
    cfg = MechanismConfig(5.0, mode)
    a = [privatize_word(store, "game", cfg, np.random.default_rng(21)) for _ in range(3)]
    b = [privatize_word(store, "game", cfg, np.random.default_rng(21)) for _ in range(3)]
    assert a == b


def test_laplace_noise_radius_law():
    rng = np.random.default_rng(4)
    dim, eps = 8, 2.0
    radii = np.array([np.linalg.norm(laplace_noise(dim, eps, rng)) for _ in range(20000)])
    # radius ~ Gamma(dim, 1/eps): mean dim/eps, variance dim/eps^2
    assert abs(radii.mean() - dim / eps) < 4 * math.sqrt(dim) / eps / math.sqrt(20000)


def test_privatize_bag_examples(caplog):
    store = VectorStore(UNIT_PAIR)
    cfg = MechanismConfig(1.0)
    assert privatize_bag(store, [], cfg, np.random.default_rng(0)) == []
    one = privatize_bag(store, ["a"], cfg, np.random.default_rng(5))
    assert one == [privatize_word(store, "a", cfg, np.random.default_rng(5))]
    with caplog.at_level(logging.WARNING):
        out = privatize_bag(store, ["zzz", "a"], cfg, np.random.default_rng(0))
    assert out[0] == "zzz" and "out-of-vocabulary" in caplog.text


def test_privatize_bag_product_law():
    store = VectorStore({"a": [1.0, 0.0], "b": [0.0, 1.0], "c": [-1.0, 0.3]})
    cfg = MechanismConfig(1.5)
    p = exponential_probabilities(store, cfg.epsilon)[store.idx("a")]
    rng = np.random.default_rng(17)
    trials = 50000
    counts = Counter(tuple(privatize_bag(store, ["a", "a"], cfg, rng)) for _ in range(trials))
    l1 = 0.0
    for x in store.words:
        for y in store.words:
            l1 += abs(counts[(x, y)] / trials - p[store.idx(x)] * p[store.idx(y)])
    assert l1 < 0.02


def test_mechanism_config_validation():
    with pytest.raises(InputError):
        MechanismConfig(0.0)
    with pytest.raises(InputError):
        MechanismConfig(1.0, "gaussian")


def random_store(seed, n=6, dim=3):
    rng = np.random.default_rng(seed)
    return VectorStore({f"w{chr(97 + i)}": rng.normal(size=dim) for i in range(n)})


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), eps=st.sampled_from([0.1, 0.5, 1.0, 2.0, 5.0, 20.0]))
def test_per_word_bound_holds(seed, eps):
    assert word_bound_excess(random_store(seed), MechanismConfig(eps)) <= 1 + 1e-12


def test_unhalved_exponent_breaks_the_per_word_bound():
    # Why the sampler uses exp(-eps d / 2): with exp(-eps d) the normalizers of
    # two inputs can differ by another exp(eps d) factor and the ratio overshoots.
    worst = 0.0
    for seed in range(200):
        store = random_store(seed)
        d = store.distances()
        eps = 2.0
        w = np.exp(-eps * d)
        p = w / w.sum(axis=1, keepdims=True)
        ratio = p[:, None, :] / p[None, :, :] / np.exp(eps * d)[:, :, None]
        worst = max(worst, ratio.max())
    assert worst > 1.05
