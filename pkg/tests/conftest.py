# ./tests/conftest.py

import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parent.parent))

from burnlab.core.BurnEngine import burning_number_exact
from burnlab.utils import generators as gen


@pytest.fixture
def exact_value():
    def run(G):
        result = burning_number_exact(G, max_nodes=2_000_000, max_seconds=60, threads=1)
        assert result.exact, f"solver did not finish on {G}"
        return result.value
    return run


@pytest.fixture
def small_connected():
    return list(gen.connected_corpus(12, 8, seed=11))


@pytest.fixture
def write_text(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
