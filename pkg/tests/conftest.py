import numpy as np
import pytest

from netboids.config import SimConfig
from netboids.swarm.state import SwarmState

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, passed: bool, detail: str) -> str:
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def random_state(n: int, seed: int, w: float = 1000.0, h: float = 1000.0, speed: float = 1.0,
                 time: int = 0) -> SwarmState:
    g = np.random.default_rng(seed)
    pos = g.random((n, 2)) * [w, h]
    th = g.uniform(0, 2 * np.pi, n)
    return SwarmState(time, pos, speed * np.column_stack([np.cos(th), np.sin(th)]))


@pytest.fixture
def cfg():
    return SimConfig()
