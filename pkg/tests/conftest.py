import random
import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gammagraphic import kernels  # noqa: E402
from gammagraphic.abelian import CyclicMod  # noqa: E402
from gammagraphic.io import read_graph  # noqa: E402
from gammagraphic.labelled_graph import LabelledGraph  # noqa: E402

FIXTURES = Path(str(resources.files("gammagraphic") / "fixtures"))

BACKENDS = sorted(kernels.available_backends())


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def k23():
    return read_graph(FIXTURES / "k23.json")


@pytest.fixture
def p4():
    return read_graph(FIXTURES / "p4.json")


def path_graph(n, descriptor=CyclicMod(2), label=1):
    vertices = {f"v{i}": label for i in range(1, n + 1)}
    edges = {f"e{i}": (f"v{i}", f"v{i + 1}") for i in range(1, n)}
    return LabelledGraph(descriptor, vertices, edges)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
