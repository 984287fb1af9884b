import pytest

from cedlite.corpus import load_corpus
from cedlite.typecheck import check_signature


@pytest.fixture(scope="session")
def corpus_sig():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_report(corpus_sig):
    return check_signature(corpus_sig)


@pytest.fixture()
def fresh_corpus():
    """A corpus signature safe to extend or mutate within one test."""
    return load_corpus()
