import math

import pytest
from hypothesis import given, strategies as st

from honeyenc.corpus import TokenBag
from honeyenc.errors import InputError
from honeyenc.keywords import extract_keywords, idf, tf

# hand-built category: water is everywhere, ice is rare
DOCS = [
    TokenBag({"water": 2, "ice": 1}),
    TokenBag({"water": 1, "steam": 1}),
    TokenBag({"water": 3, "pot": 2}),
]


def test_tf_examples():
    assert tf("ice", TokenBag({"ice": 2, "water": 1})) == pytest.approx(2 / 3)
    assert tf("fire", TokenBag({"ice": 2})) == 0
    with pytest.raises(InputError):
        tf("ice", TokenBag())


def test_idf_examples():
    docs = [TokenBag(["w"]), TokenBag(["w"]), TokenBag(["x"]), TokenBag(["y"])]
    assert idf("w", docs) == pytest.approx(math.log(2))
    assert idf("w", [TokenBag(["w"])] * 4) == 0
    assert idf("zzz", docs) == pytest.approx(math.log(4) + 1)
    with pytest.raises(InputError):
        idf("w", [])


def test_rare_word_ranks_first():
    message = TokenBag({"ice": 2, "water": 1})
    kw = extract_keywords(message, DOCS, k=2)
    assert kw.tokens == ["ice", "water"]
    assert kw.words[0][1] == (2 / 3) * math.log(3)
    assert kw.words[1][1] == 0.0


def test_scores_equal_independent_recomputation():
    message = TokenBag({"ice": 1, "steam": 2, "pot": 1, "lava": 1, "water": 3})
    kw = extract_keywords(message, DOCS, k=10)
    n = len(DOCS)
    for w, score in kw.words:
        containing = sum(1 for d in DOCS if w in d)
        idf_val = math.log(n) + 1 if containing == 0 else math.log(n / containing)
        assert score == (message[w] / message.total) * idf_val


def test_k_larger_than_vocabulary_and_ties():
    kw = extract_keywords(TokenBag({"b": 1, "a": 1}), DOCS, k=50)
    assert kw.tokens == ["a", "b"]
    with pytest.raises(InputError):
        extract_keywords(TokenBag(), DOCS)
    with pytest.raises(InputError):
        extract_keywords(TokenBag(["a"]), DOCS, k=0)


words = st.sampled_from(["ice", "water", "steam", "pot", "lava", "fire"])


@given(st.dictionaries(words, st.integers(1, 5), min_size=2), st.data())
def test_raising_a_count_never_lowers_rank(counts, data):
    target, other = data.draw(st.lists(st.sampled_from(sorted(counts)), min_size=2, max_size=2, unique=True))
    before = extract_keywords(TokenBag(counts), DOCS, k=10).tokens
    bumped = dict(counts)
    bumped[target] += data.draw(st.integers(1, 5))
    after = extract_keywords(TokenBag(bumped), DOCS, k=10).tokens
    if before.index(target) < before.index(other):
        assert after.index(target) < after.index(other)
