import numpy as np
import pytest

from eurqm.states import fourier_basis, standard_basis


@pytest.fixture
def qubit_mub():
    return standard_basis(2), fourier_basis(2)


def random_matrix(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(rng, n, rank=None):
    g = random_matrix(rng, n, rank or n)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def brute_force_s_profile(u):
    """s_0..s_d straight from the definition, every row/column mask pair."""
    d = u.shape[0]
    s = [0.0] * (d + 1)
    for rmask in range(1, 2**d):
        rows = [i for i in range(d) if rmask >> i & 1]
        for cmask in range(1, 2**d):
            cols = [j for j in range(d) if cmask >> j & 1]
            k = len(rows) + len(cols) - 1
            if k <= d:
                s[k] = max(s[k], np.linalg.svd(u[np.ix_(rows, cols)], compute_uv=False)[0])
    return np.array(s)


# acceptance criteria register their verdict lines here
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
