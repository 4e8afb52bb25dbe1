import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eurqm.errors import CapacityError
from eurqm.overlap import (
    omega_and_w,
    overlap_matrix,
    overlap_profile,
    overlap_unitary,
    submatrix_count,
    submatrix_s_profile,
    top_overlaps,
)
from eurqm.states import MeasurementBasis, fourier_basis, haar_basis, haar_unitary, paper_bases, standard_basis

from conftest import brute_force_s_profile

# |<u_j|v_k>|^2 for the rational 4-dim basis, as exact fractions
PRINTED_OVERLAPS = [
    [Fraction(144, 205), Fraction(36, 205), Fraction(16, 205), Fraction(9, 205)],
    [Fraction(4356, 172405), Fraction(29584, 172405), Fraction(33489, 172405), Fraction(104976, 172405)],
    [Fraction(121, 250618), Fraction(95481, 250618), Fraction(76050, 125309), Fraction(1458, 125309)],
    [Fraction(81, 298), Fraction(81, 298), Fraction(18, 149), Fraction(50, 149)],
]


def test_overlap_identity_and_mub():
    b = standard_basis(3)
    np.testing.assert_allclose(overlap_matrix(b, b), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(overlap_matrix(standard_basis(2), fourier_basis(2)), np.full((2, 2), 0.5), atol=1e-15)


def test_overlap_matrix_reproduces_printed_fractions():
    c = overlap_matrix(*paper_bases())
    expected = np.array([[float(x) for x in row] for row in PRINTED_OVERLAPS])
    assert np.max(np.abs(c - expected)) < 1e-12
    assert c[0, 0] == pytest.approx(144 / 205, abs=1e-12)


def test_printed_fractions_are_doubly_stochastic():
    for row in PRINTED_OVERLAPS:
        assert sum(row) == 1
    for col in zip(*PRINTED_OVERLAPS):
        assert sum(col) == 1


def test_top_overlaps():
    np.testing.assert_array_equal(top_overlaps(np.eye(4)), np.ones(4))
    np.testing.assert_allclose(top_overlaps(np.full((3, 3), 1 / 3)), np.full(3, 1 / 3))
    ranked = sorted((x for row in PRINTED_OVERLAPS for x in row), reverse=True)[:4]
    np.testing.assert_allclose(top_overlaps(overlap_matrix(*paper_bases())), [float(x) for x in ranked], atol=1e-12)
    assert ranked[1] == Fraction(104976, 172405)
    np.testing.assert_allclose([float(x) for x in ranked], [0.70244, 0.60890, 0.60690, 0.38098], atol=1e-5)


def test_top_overlaps_keeps_multiplicity():
    c = np.array([[0.5, 0.5, 0.0], [0.5, 0.25, 0.25], [0.0, 0.25, 0.75]])
    np.testing.assert_allclose(top_overlaps(c), [0.75, 0.5, 0.5])


def test_s_profile_identity_and_mub():
    np.testing.assert_array_equal(submatrix_s_profile(np.eye(4)), [0, 1, 1, 1, 1])
    h = fourier_basis(2).vectors
    np.testing.assert_allclose(submatrix_s_profile(h), [0, 1 / math.sqrt(2), 1], atol=1e-12)


def test_s_profile_printed_basis():
    u = overlap_unitary(*paper_bases())
    s = submatrix_s_profile(u)
    assert s[1] == pytest.approx(math.sqrt(144 / 205), abs=1e-10)
    np.testing.assert_allclose(s, brute_force_s_profile(u), atol=1e-12)
    assert s[4] == 1.0


def test_printed_basis_saturates_a_two_by_two_block():
    """u_2, u_3 restricted to components 1 and 4 are parallel, forcing s_3 = 1.

    A combination of u_2 and u_3 then lives in span(e_2, e_3); its outcome
    distributions put all weight on two outcomes each, so the four largest
    entries of P + Q sum to 2 and direct-sum majorization needs Omega_4 = 2.
    """
    r, s = paper_bases()
    u2, u3 = r.vector(1), r.vector(2)
    # exact restriction ratio: (-66, -324)/(29 sqrt205) = 6 sqrt(298/205) (-11, -54)/(29 sqrt298)
    ratio = 6 * math.sqrt(298 / 205)
    np.testing.assert_allclose(u2[[0, 3]], ratio * u3[[0, 3]], atol=1e-15)
    psi = u2 - ratio * u3
    psi /= np.linalg.norm(psi)
    np.testing.assert_allclose(psi[[0, 3]], 0, atol=1e-15)
    p = np.abs(r.vectors.conj().T @ psi) ** 2
    q = np.abs(psi) ** 2
    assert np.sort(np.concatenate([p, q]))[::-1][:4].sum() == pytest.approx(2.0, abs=1e-14)

    u = overlap_unitary(r, s)
    assert np.linalg.norm(u[np.ix_([1, 2], [1, 2])], 2) == pytest.approx(1.0, abs=1e-14)
    prof = overlap_profile(r, s)
    assert prof.s_profile[3] == pytest.approx(1.0, abs=1e-14)
    assert prof.omega_k(4) == pytest.approx(2.0, abs=1e-14)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_s_profile_matches_brute_force(d):
    for seed in range(15):
        u = haar_unitary(d, 1000 * d + seed)
        np.testing.assert_allclose(submatrix_s_profile(u), brute_force_s_profile(u), atol=1e-12)


def test_s_profile_enumerated_top_level_is_one():
    # the top tier is set analytically; the brute force enumerates it
    for seed in range(5):
        assert brute_force_s_profile(haar_unitary(4, seed))[4] == pytest.approx(1.0, abs=1e-12)


def test_capacity_error():
    u = np.eye(13)
    with pytest.raises(CapacityError, match=str(submatrix_count(13))):
        submatrix_s_profile(u)
    with pytest.raises(CapacityError):
        submatrix_s_profile(np.eye(5), cap=4)
    assert submatrix_s_profile(np.eye(5), cap=4, allow_large=True)[-1] == 1.0


def test_submatrix_count_small():
    # d = 4, r + s = 2, 3, 4: 1x1; 1x2 + 2x1; 1x3 + 2x2 + 3x1
    assert submatrix_count(4) == 16 + (24 + 24) + (16 + 36 + 16)


def test_omega_and_w():
    omega, w = omega_and_w([0, 1, 1, 1])
    np.testing.assert_array_equal(omega, [1, 2, 2, 2, 2, 2])
    np.testing.assert_array_equal(w, [1, 0, 0])
    omega, w = omega_and_w([0, 1 / math.sqrt(2), 1])
    assert omega[1] == pytest.approx(1.70711, abs=1e-5)
    np.testing.assert_allclose(w, [0.70711, 0.29289], atol=1e-5)
    assert omega[0] == 1.0 and omega[-1] == 2.0


def test_profile_of_printed_basis():
    prof = overlap_profile(*paper_bases())
    prof.check()
    assert prof.omega_k(2) == pytest.approx(1 + math.sqrt(prof.c1), abs=1e-12)
    assert abs(prof.c_sorted[1] - prof.c_sorted[2]) > 1e-6


@settings(max_examples=60, deadline=None)
@given(d=st.integers(2, 6), seed=st.integers(0, 2**32 - 1))
def test_profile_invariants_random(d, seed):
    rng = np.random.default_rng(seed)
    prof = overlap_profile(haar_basis(d, rng), haar_basis(d, rng))
    prof.check()
    assert prof.c_sorted[-1] >= 1 / d - 1e-12
    assert prof.s_profile[0] == 0 and prof.s_profile[d] == 1
    assert np.all(prof.omega[d:] == 2.0)
    for k in range(1, d + 2):
        assert prof.omega_k(k) == pytest.approx(1 + prof.s_profile[k - 1], abs=1e-15)


def test_profile_dimension_mismatch():
    from eurqm.errors import ContractViolation

    with pytest.raises(ContractViolation):
        overlap_matrix(standard_basis(2), standard_basis(3))
