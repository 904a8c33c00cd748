import math

import numpy as np
import pytest
from hypothesis import strategies as st

from isoperix.generators import RandomCurveSpec, random_convex
from isoperix.support import SupportFourier

PI = math.pi


@pytest.fixture
def generic_curve():
    return SupportFourier(1.3, ((0.2, -0.1), (0.05, 0.03), (-0.01, 0.02), (0.004, -0.003)))


@pytest.fixture
def worked_curve():
    return SupportFourier(1.0, ((0.0, 0.0), (0.1, 0.0)))


@st.composite
def convex_curves(draw, max_harmonic=12):
    """Strictly convex curves with random scale, translation and rotation."""
    spec = RandomCurveSpec(
        max_harmonic=draw(st.integers(2, max_harmonic)),
        decay=draw(st.floats(2.05, 4.0)),
        budget=draw(st.floats(0.01, 0.95)),
        seed=draw(st.integers(0, 2**63 - 1)),
    )
    c = random_convex(spec)
    s = draw(st.floats(0.1, 10.0))
    return c.scaled(s)


def rel_close(x, y, rtol):
    return abs(x - y) <= rtol * max(1.0, abs(y))


def rng(seed=0):
    return np.random.default_rng(seed)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, text: str) -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
