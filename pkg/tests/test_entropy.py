import math

import numpy as np
import pytest

from eurqm.entropy import (
    conditional_entropies,
    conditional_entropy,
    measurement_distribution,
    memory_conditioned_on_outcome,
    pinch,
    post_measurement_state,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from eurqm.errors import ContractViolation
from eurqm.linalg import Factor, hermitian_eigenvalues
from eurqm.states import (
    BipartiteState,
    MeasurementBasis,
    fourier_basis,
    haar_basis,
    maximally_entangled_state,
    maximally_mixed_state,
    paper_bases,
    paper_state,
    product_state,
    pure_state,
    random_bipartite_state,
    standard_basis,
)

from conftest import random_density


@pytest.mark.parametrize(
    "p, h",
    [
        ([1, 0], 0.0),
        ([0.5, 0.5], 1.0),
        ([0.25] * 4, 2.0),
        # H(1/sqrt2, 1 - 1/sqrt2), evaluated by hand to 5 digits
        ([1 / math.sqrt(2), 1 - 1 / math.sqrt(2)], 0.87243),
    ],
)
def test_shannon(p, h):
    assert shannon_entropy(p) == pytest.approx(h, abs=1e-5)


def test_shannon_rejects_non_distribution():
    with pytest.raises(ContractViolation):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(ContractViolation):
        shannon_entropy([1.1, -0.1])


def test_von_neumann():
    assert von_neumann_entropy(np.diag([1.0, 0, 0])) == 0.0
    assert von_neumann_entropy(np.eye(5) / 5) == pytest.approx(math.log2(5), abs=1e-12)


def test_von_neumann_matches_spectrum():
    rho_b = paper_state(0.5).reduced_measured()
    oracle = shannon_entropy(hermitian_eigenvalues(rho_b))
    assert von_neumann_entropy(rho_b) == pytest.approx(oracle, abs=1e-14)


def test_measurement_distribution_examples():
    r = haar_basis(3, 4)
    np.testing.assert_allclose(measurement_distribution(maximally_mixed_state(3, 2), r), np.full(3, 1 / 3), atol=1e-12)
    st = pure_state(np.kron(r.vector(0), [1, 0]), 3, 2)
    np.testing.assert_allclose(measurement_distribution(st, r), [1, 0, 0], atol=1e-12)


def test_measurement_distribution_matches_diagonal():
    st = paper_state(0.5)
    p = measurement_distribution(st, standard_basis(4))
    np.testing.assert_allclose(p, np.diag(st.reduced_measured()).real, atol=1e-14)
    assert p.sum() == pytest.approx(1, abs=1e-12)


def test_measurement_dimension_mismatch():
    with pytest.raises(ContractViolation):
        measurement_distribution(paper_state(0.5), standard_basis(2))


def test_post_measurement_fixed_point():
    r = haar_basis(2, 8)
    rho = np.kron(np.diag([0.3, 0.7]), np.diag([0.6, 0.4]))
    u = np.kron(r.vectors, np.eye(2))
    st = BipartiteState(u @ rho @ u.conj().T, 2, 2)
    np.testing.assert_allclose(post_measurement_state(st, r).rho, st.rho, atol=1e-12)


def test_post_measurement_dephases_bell_state():
    out = post_measurement_state(maximally_entangled_state(2), standard_basis(2)).rho
    np.testing.assert_allclose(out, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_post_measurement_swapped_orientation_and_memory():
    r, _ = paper_bases()
    st = paper_state(0.3)
    out = post_measurement_state(st, r)
    assert (out.dim_a, out.dim_b, out.measured_factor) == (4, 2, Factor.FIRST)
    assert np.trace(out.rho).real == pytest.approx(1, abs=1e-12)
    np.testing.assert_allclose(out.reduced_memory(), st.reduced_memory(), atol=1e-12)


def test_conditional_entropy_examples():
    phi = maximally_entangled_state(2)
    assert conditional_entropy(phi) == pytest.approx(-1, abs=1e-12)
    h_rb, h_sb, h_ab = conditional_entropies(phi, standard_basis(2), fourier_basis(2))
    assert h_rb == pytest.approx(0, abs=1e-12) and h_sb == pytest.approx(0, abs=1e-12)

    rng = np.random.default_rng(3)
    rho_a, rho_b = random_density(rng, 3), random_density(rng, 2)
    _, vecs = np.linalg.eigh(rho_a)
    eig_basis = MeasurementBasis(vecs)
    st = product_state(rho_a, rho_b)
    h_rb, _, h_ab = conditional_entropies(st, eig_basis, haar_basis(3, 1))
    assert h_rb == pytest.approx(von_neumann_entropy(rho_a), abs=1e-10)
    assert h_ab == pytest.approx(von_neumann_entropy(rho_a), abs=1e-10)


@pytest.mark.parametrize("seed", range(20))
def test_measuring_never_lowers_conditional_entropy(seed):
    rng = np.random.default_rng(seed)
    st = random_bipartite_state(3, 2, int(rng.integers(1, 7)), rng, Factor.SECOND if seed % 2 else Factor.FIRST)
    r, s = haar_basis(st.dim_measured, rng), haar_basis(st.dim_measured, rng)
    h_rb, h_sb, h_ab = conditional_entropies(st, r, s)
    assert h_rb >= h_ab - 1e-9 and h_sb >= h_ab - 1e-9
    assert von_neumann_entropy(post_measurement_state(st, r).rho) >= von_neumann_entropy(st.rho) - 1e-9


def test_relative_entropy_examples():
    rng = np.random.default_rng(0)
    rho = random_density(rng, 3, rank=2)
    assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-12)
    assert relative_entropy(np.diag([1.0, 0]), np.eye(2) / 2) == pytest.approx(1, abs=1e-14)
    # -1 - (log2(1/4) + log2(3/4)) / 2
    assert relative_entropy(np.eye(2) / 2, np.diag([0.25, 0.75])) == pytest.approx(0.20752, abs=1e-5)


def test_relative_entropy_support():
    assert relative_entropy(np.eye(2) / 2, np.diag([1.0, 0])) == math.inf
    with pytest.raises(ContractViolation, match="semidefinite"):
        relative_entropy(np.eye(2) / 2, np.diag([1.0, -0.1]))


@pytest.mark.parametrize("seed", range(20))
def test_relative_entropy_identity_and_data_processing(seed):
    rng = np.random.default_rng(100 + seed)
    st = random_bipartite_state(3, 2, int(rng.integers(1, 7)), rng)
    r, s = haar_basis(3, rng), haar_basis(3, rng)
    _, h_sb, h_ab = conditional_entropies(st, r, s)
    sigma = pinch(st.canonical_rho(), s, st.dim_memory)
    d_full = relative_entropy(st.rho, sigma)
    assert h_sb - h_ab == pytest.approx(d_full, abs=1e-8)
    d_pinched = relative_entropy(pinch(st.rho, r, 2), pinch(sigma, r, 2))
    assert d_pinched <= d_full + 1e-9


def test_pinched_sigma_expansion():
    # pinching the S-dephased state in R gives sum_jk c_jk |u_j><u_j| (x) Tr_A((|v_k><v_k| (x) I) rho)
    rng = np.random.default_rng(9)
    st = random_bipartite_state(3, 2, 3, rng)
    r, s = haar_basis(3, rng), haar_basis(3, rng)
    c = np.abs(r.vectors.conj().T @ s.vectors) ** 2
    blocks = memory_conditioned_on_outcome(st, s)
    expected = sum(c[j, k] * np.kron(r.projector(j), blocks[k]) for j in range(3) for k in range(3))
    got = pinch(pinch(st.rho, s, 2), r, 2)
    np.testing.assert_allclose(got, expected, atol=1e-12)
