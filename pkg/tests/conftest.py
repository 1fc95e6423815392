import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def warm_engine():
    """Compile the numba kernels once so timed checks measure steady state."""
    from khinlab import MultilinearForm, exact_moment, form_norm

    exact_moment(np.ones((2, 2)), 1.0)
    form_norm(MultilinearForm(np.ones((2, 2)), 2.0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
