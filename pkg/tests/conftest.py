from pathlib import Path

import pytest

from prunetest.deptree import read_conllu

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def examples():
    return {t.sentence_id: t for t in read_conllu(FIXTURES / "examples.conllu")}


@pytest.fixture(scope="session")
def motivating(examples):
    return examples["motivating"]


@pytest.fixture(scope="session")
def corpus():
    return read_conllu(FIXTURES / "corpus.conllu")


def index_of(tree, surface, nth=0):
    hits = [t.index for t in tree.tokens if t.surface == surface]
    return hits[nth]


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
