import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ordrep.relation import Relation  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def names(n):
    return [f"e{i}" for i in range(n)]


def to_relation(m) -> Relation:
    return Relation.from_matrix(names(len(m)), m)


@st.composite
def matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return [[draw(st.booleans()) for _ in range(n)] for _ in range(n)]


@st.composite
def preorders(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return oracles.random_preorder(random.Random(seed), n)


@st.composite
def partial_orders(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return oracles.random_partial_order(random.Random(seed), n)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
