import pytest
from hypothesis import settings

from g2daha.psi import build_psi_table

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table8():
    return build_psi_table(8)


@pytest.fixture(scope="session")
def table12(table8):
    return build_psi_table(12, base=table8)
