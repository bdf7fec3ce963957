from __future__ import annotations

import pytest

from helpers import corpus_records


@pytest.fixture(scope="session")
def corpus():
    return corpus_records()


@pytest.fixture(scope="session")
def corpus_diagrams(corpus):
    return [(rec, rec.diagram()) for rec in corpus]
