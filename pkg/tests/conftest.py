import numpy as np
import pytest
from hypothesis import strategies as st

from dsclust.evidence import make_evidence

ACCEPTANCE_LINES = []


@st.composite
def evidence_lists(draw, max_n=10, max_frame=6, min_n=0):
    frame = draw(st.integers(2, max_frame))
    n = draw(st.integers(min_n, max_n))
    focals = draw(st.lists(st.integers(1, 2 ** frame - 1), min_size=n, max_size=n))
    masses = draw(st.lists(st.floats(0.01, 0.99), min_size=n, max_size=n))
    return [make_evidence(f, m, i) for i, (f, m) in enumerate(zip(focals, masses))]


def random_evidence(rng, n, frame):
    focals = rng.integers(1, 2 ** frame, size=n)
    masses = rng.uniform(0.01, 0.99, size=n)
    return [make_evidence(int(f), float(m), i) for i, (f, m) in enumerate(zip(focals, masses))]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
