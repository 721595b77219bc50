import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def corpus():
    return pathlib.Path(os.environ.get("QUIVERSTAB_CORPUS_DIR", ROOT / "corpus"))


@pytest.fixture(scope="session")
def schemas():
    return ROOT / "schemas"
