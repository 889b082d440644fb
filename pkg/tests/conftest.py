import numpy as np
import pytest
from hypothesis import strategies as st

from boolai.core import BooleanFunction

EXAMPLE1_VECTOR = "0011111100000011"


def random_function(rng: np.random.Generator, n: int) -> BooleanFunction:
    nbytes = max(1, (1 << n) // 8)
    t = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << (1 << n)) - 1)
    return BooleanFunction(n, t)


@st.composite
def functions(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return BooleanFunction(n, draw(st.integers(0, (1 << (1 << n)) - 1)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


# filled by test_acceptance; echoed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
