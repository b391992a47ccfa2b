import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.dsl.workspace import Bounds  # noqa: E402
from core.marked.marked_set import flat, sharp  # noqa: E402
from core.presheaf.shapes import simplex  # noqa: E402


@pytest.fixture
def small_bounds():
    return Bounds(2, 2, 3)


@pytest.fixture
def interval():
    return simplex(1)


@pytest.fixture
def sharp_interval():
    return sharp(simplex(1))


@pytest.fixture
def flat_interval():
    return flat(simplex(1))


@pytest.fixture
def workspace_file(tmp_path):
    def write(text: str, name: str = "atelier.sb") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write
