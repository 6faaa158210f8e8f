import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from honeyenc.dte import (
    DecoyTable,
    Seed,
    decode,
    decoy_rng,
    encode,
    estimate_dte_advantage,
    message_builder,
)
from honeyenc.errors import EncodeError, HoneyError, InputError, SeedRangeError
from honeyenc.pipeline import FunctionPipeline


def test_table_of_two(counter_pipeline):
    table, seed = encode("secret", counter_pipeline, 2, np.random.default_rng(0))
    assert table.size == 2 and seed.bit_width == 1
    assert decode(table, seed) == "secret"
    assert table.entries[1 - seed.value] != "secret"


@pytest.mark.parametrize("t", [0, 1, 3, 6, 100])
def test_bad_table_sizes(counter_pipeline, t):
    with pytest.raises(InputError):
        encode("m", counter_pipeline, t, np.random.default_rng(0))


def test_empty_message_rejected(counter_pipeline):
    with pytest.raises(InputError):
        encode("", counter_pipeline, 4)


@pytest.mark.parametrize("t", [2, 4, 8])
def test_true_seed_uniform(counter_pipeline, t):
    rng = np.random.default_rng(t)
    counts = Counter(encode("m", counter_pipeline, t, rng)[1].value for _ in range(10000))
    assert chisquare([counts[i] for i in range(t)]).pvalue > 0.001


def test_fixed_seed_replays(pipeline):
    a = encode("we baked bread", pipeline, 16, np.random.default_rng(5))
    b = encode("we baked bread", pipeline, 16, np.random.default_rng(5))
    assert a == b


def test_decode_every_corpus_message(pipeline, messages):
    rng = np.random.default_rng(9)
    for m in messages:
        table, seed = encode(m, pipeline, 8, rng)
        assert decode(table, seed) == m
        others = [e for i, e in enumerate(table.entries) if i != seed.value]
        assert m not in others


def test_decode_bounds(counter_pipeline):
    table, _ = encode("m", counter_pipeline, 4, np.random.default_rng(0))
    for s in range(4):
        decode(table, s)
    with pytest.raises(SeedRangeError):
        decode(table, 4)
    with pytest.raises(SeedRangeError):
        Seed(4, 2)


def test_collisions_are_broken():
    stubborn = FunctionPipeline(lambda m, rng: m)
    table, seed = encode("same", stubborn, 8, np.random.default_rng(1))
    assert table.entries.count("same") == 1
    assert decode(table, seed) == "same"


def test_pipeline_errors_become_encode_errors():
    def boom(m, rng):
        raise HoneyError("generator down")

    with pytest.raises(EncodeError):
        encode("m", FunctionPipeline(boom), 4, np.random.default_rng(0))


def test_slot_rngs_independent_of_position():
    a = decoy_rng(123, 5).random()
    assert a == decoy_rng(123, 5).random()
    assert a != decoy_rng(123, 6).random()
    assert a != decoy_rng(123, 5, 1).random()


def test_public_table_drops_true_seed(counter_pipeline):
    table, _ = encode("m", counter_pipeline, 4, np.random.default_rng(0))
    assert table.public().true_seed is None
    assert table.public().entries == table.entries
    with pytest.raises(InputError):
        DecoyTable(("a", ""))


def coin_distinguisher(seed):
    rng = np.random.default_rng(seed)
    return lambda m, s: int(rng.integers(2))


def test_constant_distinguisher_has_no_advantage(counter_pipeline):
    build = message_builder(["alpha", "beta"], counter_pipeline, 4)
    assert estimate_dte_advantage(build, lambda m, s: 1, 200, np.random.default_rng(0)) == 0.0


def test_coin_distinguisher_near_zero(counter_pipeline):
    build = message_builder(["alpha", "beta"], counter_pipeline, 4)
    trials = 10000
    adv = estimate_dte_advantage(build, coin_distinguisher(1), trials, np.random.default_rng(2))
    assert adv <= 3 * math.sqrt(0.25 / trials) * math.sqrt(2)


def rigged(counter_pipeline, t):
    honest = message_builder(["alpha", "beta"], counter_pipeline, t)

    def build(rng):
        table, seed = honest(rng)
        entries = list(table.entries)
        entries[0], entries[seed.value] = entries[seed.value], entries[0]
        return DecoyTable(tuple(entries), 0), Seed(0, seed.bit_width)

    return build


@pytest.mark.parametrize("t", [2, 8])
def test_rigged_builder_advantage(counter_pipeline, t):
    # G1 always shows seed 0; G0 shows seed 0 with probability 1/T
    trials = 4000
    adv = estimate_dte_advantage(rigged(counter_pipeline, t), lambda m, s: int(s == 0), trials,
                                 np.random.default_rng(t))
    analytic = 1 - 1 / t
    sigma = math.sqrt((1 / t) * (1 - 1 / t) / trials)
    assert abs(adv - analytic) <= 3 * sigma + 1e-12


def test_message_builder_needs_messages(counter_pipeline):
    with pytest.raises(InputError):
        message_builder([], counter_pipeline)
    with pytest.raises(InputError):
        estimate_dte_advantage(message_builder(["a"], counter_pipeline, 2), lambda m, s: 1, 0)
