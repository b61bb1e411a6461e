from __future__ import annotations

import pytest

from corpus_fidelity.emoji_catalog import default_catalog


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()
