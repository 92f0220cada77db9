from __future__ import annotations

import pytest
from hypothesis import settings

from surreals.core import monomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def omega():
    return monomial(1)
