import numpy as np
import pytest

from hyperfs.data import load_dataset


@pytest.fixture(scope="session")
def wine():
    return load_dataset("wine")


@pytest.fixture(scope="session")
def sonar():
    return load_dataset("sonar")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def four_points():
    """1-D instance {0:A, 1:A, 10:B, 11:B}."""
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    y = np.array([1, 1, 2, 2])
    return X, y


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import LINES

    if LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(LINES):
            terminalreporter.write_line(LINES[number])
