import numpy as np
import pytest

from uncertainty_lab.explorer import PAULI, make_rng, random_hermitians, random_states

SX, SY, SZ = PAULI["x"], PAULI["y"], PAULI["z"]
I2 = np.eye(2, dtype=complex)

ACCEPTANCE_LINES: list[str] = []


def random_instance(rng, dim, n=3):
    psi = random_states(rng, 1, dim)[0]
    obs = list(random_hermitians(rng, (n,), dim))
    return psi, obs


def random_unitary(rng, dim):
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
