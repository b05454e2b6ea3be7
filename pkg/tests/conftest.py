from __future__ import annotations

from pathlib import Path

import pytest

from bcctrust import corpus
from bcctrust.graph import AddressRegistry, build_trust_graph
from bcctrust.search import SuspectList, run_trust_search

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def corpus_records():
    with open(DATA_DIR / "corpus.csv", encoding="utf-8", newline="") as fh:
        result = corpus.parse_email_records(fh, "csv")
    assert result.skipped_count == 0
    return result.records


@pytest.fixture(scope="session")
def bcc_records(corpus_records):
    return corpus.filter_bcc_emails(corpus_records)


@pytest.fixture(scope="session")
def fixture_registry(bcc_records):
    return AddressRegistry()


@pytest.fixture(scope="session")
def k1_graph(bcc_records, fixture_registry):
    return build_trust_graph(corpus.select_k_bcc(bcc_records, 1), fixture_registry)


@pytest.fixture(scope="session")
def k2_graph(bcc_records, fixture_registry, k1_graph):
    # shared registry, built after k1 so id assignment is deterministic
    return build_trust_graph(corpus.select_k_bcc(bcc_records, 2), fixture_registry)


@pytest.fixture(scope="session")
def fixture_suspects():
    return SuspectList.from_file(DATA_DIR / "suspects.txt")


@pytest.fixture(scope="session")
def fixture_trustnet(k1_graph, fixture_suspects):
    return run_trust_search(k1_graph, fixture_suspects)
