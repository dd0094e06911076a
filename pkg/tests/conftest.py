import random

import pytest
from hypothesis import strategies as st

from nielsen_bip.exact_linalg import IntMatrix

ACCEPTANCE_LINES: list[str] = []


def int_matrices(max_dim=5, lo=-9, hi=9, square=False):
    @st.composite
    def build(draw):
        rows = draw(st.integers(1, max_dim))
        cols = rows if square else draw(st.integers(1, max_dim))
        entries = draw(st.lists(st.integers(lo, hi), min_size=rows * cols, max_size=rows * cols))
        return IntMatrix(rows, cols, tuple(entries))

    return build()


def random_unimodular(rng: random.Random, n: int, steps: int = 12) -> IntMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if op == 0 and i != j:
            q = rng.randint(-3, 3)
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        elif op == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return IntMatrix.from_rows(rows)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
