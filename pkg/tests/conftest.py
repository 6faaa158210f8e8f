import numpy as np
import pytest

from honeyenc.config import PipelineConfig
from honeyenc.corpus import CategorizedCorpus
from honeyenc.embeddings import VectorStore
from honeyenc.pipeline import DecoyPipeline, FunctionPipeline
from honeyenc.synsets import Synset, build_graph


@pytest.fixture(scope="session")
def pipeline():
    return DecoyPipeline.from_config(PipelineConfig())


@pytest.fixture(scope="session")
def messages(pipeline):
    """One plaintext per shipped corpus document, in raw token order."""
    return [" ".join(d.tokens) for d in pipeline.corpus.documents]


@pytest.fixture
def counter_pipeline():
    """Cheap decoy source: numbered decoys drawn from the slot rng."""
    return FunctionPipeline(lambda m, rng: f"decoy {int(rng.integers(10**9))}")


@pytest.fixture
def chain_graph():
    return build_graph([
        Synset("carnivore.n.01", "noun", ("carnivore",), ()),
        Synset("canine.n.01", "noun", ("canine", "canid"), ("carnivore.n.01",)),
        Synset("dog.n.01", "noun", ("dog",), ("canine.n.01",)),
    ])


@pytest.fixture
def ab_corpus():
    return CategorizedCorpus.from_records([("A", "a1", "x x"), ("B", "b1", "y")],
                                          stopwords=frozenset(), stem=False)


@pytest.fixture
def square_store():
    # unit vectors at the corners of a tilted square; all pairwise distances known
    return VectorStore({
        "a": [1.0, 0.0],
        "b": [0.0, 1.0],
        "c": [-1.0, 0.0],
        "d": [0.0, -1.0],
    })


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
