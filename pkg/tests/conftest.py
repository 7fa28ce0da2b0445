import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chemhyper.generators import complete_graph, figure1  # noqa: E402
from chemhyper.hypergraph import ChemicalHypergraph  # noqa: E402


@pytest.fixture
def fig1():
    return figure1()


@pytest.fixture
def single_edge():
    return ChemicalHypergraph.from_edges(2, [([0], [1])])


@pytest.fixture
def k3():
    return complete_graph(3)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
