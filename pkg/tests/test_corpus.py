import json
import logging

import pytest
from hypothesis import given, strategies as st

from honeyenc.corpus import (
    CategorizedCorpus,
    TokenBag,
    default_corpus_path,
    load_corpus,
    load_stopwords,
    preprocess,
    read_stopwords,
    tokenize,
)
from honeyenc.errors import InputError, ParseError, UnknownItemError
from honeyenc.stemmer import stem


def test_tokenize_examples():
    assert tokenize("The dog ran.") == ["the", "dog", "ran"]
    assert tokenize("") == []
    assert tokenize("ice-cold H2O!") == ["ice-cold"]


def test_tokenize_apostrophes_and_edges():
    assert tokenize("don't 'quoted' -dash- rock’n’roll") == ["don't", "quoted", "dash", "rock'n'roll"]
    assert tokenize("snake_case x2 __") == []
    assert tokenize("Café NAÏVE") == ["café", "naïve"]


@given(st.text(max_size=60))
def test_tokenize_case_insensitive(s):
    assert tokenize(s.upper()) == tokenize(s.lower()) or tokenize(s.upper()) == tokenize(s)


@given(st.text(alphabet=st.characters(codec="ascii"), max_size=60))
def test_tokenize_upper_ascii(s):
    assert tokenize(s.upper()) == tokenize(s)


def test_preprocess_examples():
    assert preprocess(["the", "dog", "the"], {"the"}) == TokenBag({"dog": 1})
    assert preprocess(["running", "runs"], set(), stem=True) == TokenBag({"run": 2})
    empty = preprocess([], set())
    assert empty.total == 0 and len(empty) == 0


def test_preprocess_without_stemming_keeps_forms():
    assert preprocess(["running", "runs"], set(), stem=False).counts == {"running": 1, "runs": 1}


def test_preprocess_drops_stems_that_are_stopwords():
    # "is" survives stopword filtering only if it is not listed; "us"-type stems collapse
    assert preprocess(["others"], {"other"}).total == 0


def test_preprocess_idempotent_on_corpus_vocabulary(pipeline):
    vocab = {t for d in pipeline.corpus.documents for t in d.bag}
    for tok in vocab:
        assert stem(tok) == tok
    bag = preprocess(sorted(vocab), pipeline.corpus.stopwords)
    assert set(bag) == vocab


def test_token_bag_api():
    bag = TokenBag(["a", "b", "a"])
    assert bag.count("a") == 2 and bag.count("zzz") == 0
    assert bag.total == 3
    assert sorted(bag.elements()) == ["a", "a", "b"]
    assert bag.scaled(3).counts == {"a": 6, "b": 3}
    with pytest.raises(InputError):
        bag.scaled(0)
    assert len(TokenBag({"a": 0})) == 0
    with pytest.raises(InputError):
        TokenBag({"a": -1})


def test_stopwords_loading(tmp_path):
    sw = load_stopwords()
    assert {"the", "a", "and"} <= sw
    assert read_stopwords("# header\nThe  # inline\n\nA\n") == frozenset({"the", "a"})
    with pytest.raises(InputError):
        load_stopwords(tmp_path / "missing.txt")


def _write_jsonl(path, rows):
    path.write_text("\n".join(r if isinstance(r, str) else json.dumps(r) for r in rows) + "\n")
    return path


def test_load_corpus_two_records(tmp_path):
    p = _write_jsonl(tmp_path / "c.jsonl", [
        {"category": "news", "doc_id": "1", "text": "markets rallied today"},
        {"category": "sports", "doc_id": "2", "text": "the team won"},
    ])
    corpus = load_corpus(p)
    assert len(corpus.documents) == 2
    assert corpus.categories == {"news", "sports"}


def test_load_corpus_malformed_line_named(tmp_path):
    p = _write_jsonl(tmp_path / "c.jsonl", [
        {"category": "news", "doc_id": "1", "text": "markets"},
        "{not json",
        {"category": "news", "doc_id": "3", "text": "bonds"},
    ])
    with pytest.raises(ParseError) as info:
        load_corpus(p)
    assert info.value.line == 2
    assert "line 2" in str(info.value)


@pytest.mark.parametrize("row", [
    {"category": "news", "doc_id": "1"},
    {"category": "", "doc_id": "1", "text": "x"},
    {"category": "news", "doc_id": 1, "text": "x"},
    ["news", "1", "x"],
])
def test_load_corpus_bad_records(tmp_path, row):
    p = _write_jsonl(tmp_path / "c.jsonl", [row])
    with pytest.raises(ParseError):
        load_corpus(p)


def test_load_corpus_drops_stopword_only_records(tmp_path, caplog):
    p = _write_jsonl(tmp_path / "c.jsonl", [
        {"category": "news", "doc_id": "1", "text": "the of and"},
        {"category": "news", "doc_id": "2", "text": "elections tomorrow"},
    ])
    with caplog.at_level(logging.WARNING):
        corpus = load_corpus(p)
    assert corpus.dropped == 1
    assert [d.doc_id for d in corpus.documents] == ["2"]
    assert "dropped 1" in caplog.text


def test_load_corpus_unreadable(tmp_path):
    with pytest.raises(InputError):
        load_corpus(tmp_path / "nope.jsonl")


def test_shipped_corpus_shape():
    corpus = load_corpus(default_corpus_path())
    assert corpus.sorted_categories() == ["cooking", "politics", "sports"]
    for c in corpus.categories:
        assert len(corpus.documents_in(c)) >= 10
    with pytest.raises(UnknownItemError):
        corpus.documents_in("weather")


def test_message_bag_matches_document_preprocessing():
    corpus = CategorizedCorpus.from_records([("a", "1", "Dogs were running home")])
    assert corpus.documents[0].bag == corpus.message_bag("Dogs were running home")
