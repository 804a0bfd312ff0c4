from pathlib import Path

import pytest

from pbmonoid.periodic import parse_any

DATA = Path(__file__).parent / "data"


def load(name: str):
    return parse_any((DATA / name).read_text())


@pytest.fixture
def fig2():
    return load("fig2_alpha.pbd")


@pytest.fixture
def fig3():
    return load("fig3_alpha.pbd"), load("fig3_beta.pbd"), load("fig3_product.pbd")


@pytest.fixture
def fig4():
    return load("fig4_alpha.pbd"), load("fig4_beta.pbd"), load("fig4_product.pbd")
