import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from einshom import catalog
from einshom.homspace import decompose_isotropy, reductive_complement
from einshom.metrics import moduli_space

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def _space(name, params=None):
    rd = reductive_complement(catalog.build(name, params))
    iso = decompose_isotropy(rd)
    return rd, iso, moduli_space(iso)


@pytest.fixture(scope="session")
def space():
    """space(name, params=None) -> (reductive decomposition, isotropy decomposition, moduli)."""
    return _space


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
