"""Shannon and von Neumann entropies in bits, plus the measurement maps.

Every conditional entropy here conditions on the memory factor of a
:class:`~eurqm.states.BipartiteState`; internally the measured factor is
always rotated into the first slot.
"""

from __future__ import annotations

import math

import numpy as np

from eurqm.errors import ContractViolation
from eurqm.linalg import TOL, Factor, as_matrix, dagger, hermitian_eigenvalues, partial_trace, require_hermitian
from eurqm.states import BipartiteState, MeasurementBasis

#: Eigenvalues below this are treated as zero when deciding support inclusion.
SUPPORT_TOL = 1e-10


def _clamp_spectrum(vals: np.ndarray, name: str) -> np.ndarray:
    if vals.size and vals.min() < -TOL:
        raise ContractViolation(f"{name}: eigenvalue {vals.min():.3e} below -{TOL:g}")
    return np.clip(vals, 0.0, None)


def shannon_entropy(p) -> float:
    """Base-2 Shannon entropy with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if p.size and p.min() < -1e-12:
        raise ContractViolation(f"distribution has negative entry {p.min():.3e}")
    if abs(p.sum() - 1.0) > TOL:
        raise ContractViolation(f"distribution sums to {p.sum()!r}, expected 1")
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0


def von_neumann_entropy(rho) -> float:
    rho = as_matrix(rho, "rho")
    vals = _clamp_spectrum(hermitian_eigenvalues(rho), "rho")
    tr = vals.sum()
    if abs(tr - 1.0) > TOL:
        raise ContractViolation(f"rho has trace {tr!r}, expected 1")
    return shannon_entropy(vals / tr)


def _require_basis_for(state: BipartiteState, basis: MeasurementBasis) -> None:
    if basis.dim != state.dim_measured:
        raise ContractViolation(
            f"basis of dimension {basis.dim} cannot measure a factor of dimension {state.dim_measured}"
        )


def measurement_distribution(state: BipartiteState, basis: MeasurementBasis) -> np.ndarray:
    """Outcome probabilities ``<u_j|rho_A|u_j>`` on the measured marginal."""
    _require_basis_for(state, basis)
    rho_a = state.reduced_measured()
    v = basis.vectors
    p = np.einsum("ij,ik,kj->j", v.conj(), rho_a, v).real
    p[(p < 0) & (p >= -1e-12)] = 0.0
    if p.min() < 0 or abs(p.sum() - 1) > TOL:
        raise ContractViolation(f"measurement produced an invalid distribution {p}")
    return p


def pinch(rho_canonical: np.ndarray, basis: MeasurementBasis, dim_memory: int) -> np.ndarray:
    """``sum_j (P_j (x) I) rho (P_j (x) I)`` on a measured-first operator."""
    eye = np.eye(dim_memory)
    out = np.zeros_like(rho_canonical, dtype=complex)
    for j in range(basis.dim):
        proj = np.kron(basis.projector(j), eye)
        out += proj @ rho_canonical @ proj
    return out


def post_measurement_state(state: BipartiteState, basis: MeasurementBasis) -> BipartiteState:
    """Classical-quantum state ``rho_RB`` after measuring ``basis``.

    The returned state has the measured factor first, whatever the
    orientation of the input.
    """
    _require_basis_for(state, basis)
    rho = pinch(state.canonical_rho(), basis, state.dim_memory)
    rho = 0.5 * (rho + dagger(rho))
    return BipartiteState(rho, state.dim_measured, state.dim_memory, Factor.FIRST)


def conditional_entropy(state: BipartiteState) -> float:
    """``H(A|B) = H(rho_AB) - H(rho_B)`` with ``A`` the measured factor."""
    return von_neumann_entropy(state.rho) - von_neumann_entropy(state.reduced_memory())


def conditional_entropies(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> tuple[float, float, float]:
    """``(H(R|B), H(S|B), H(A|B))`` in bits."""
    h_b = von_neumann_entropy(state.reduced_memory())
    h_ab = von_neumann_entropy(state.rho)
    h_rb = von_neumann_entropy(post_measurement_state(state, r).rho)
    h_sb = von_neumann_entropy(post_measurement_state(state, s).rho)
    return h_rb - h_b, h_sb - h_b, h_ab - h_b


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy ``D(rho||sigma)`` in bits.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``. Both supports are read off eigenvalues above
    :data:`SUPPORT_TOL`.

    Example:
        >>> relative_entropy(np.diag([1.0, 0.0]), np.eye(2) / 2)
        1.0
    """
    rho = as_matrix(rho, "rho")
    sigma = as_matrix(sigma, "sigma")
    require_hermitian(rho, "rho")
    require_hermitian(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ContractViolation(f"rho {rho.shape} and sigma {sigma.shape} differ in shape")
    mu, vecs = np.linalg.eigh(0.5 * (sigma + dagger(sigma)))
    if mu.min() < -TOL:
        raise ContractViolation(f"sigma is not positive semidefinite (eigenvalue {mu.min():.3e})")
    lam = _clamp_spectrum(hermitian_eigenvalues(rho), "rho")
    weights = np.einsum("ij,ik,kj->j", vecs.conj(), rho, vecs).real
    kernel = mu <= SUPPORT_TOL
    if weights[kernel].sum() > SUPPORT_TOL:
        return math.inf
    lam = lam[lam > 0]
    neg_entropy = float((lam * np.log2(lam)).sum())
    cross = float((weights[~kernel] * np.log2(mu[~kernel])).sum())
    return neg_entropy - cross + 0.0


def memory_conditioned_on_outcome(state: BipartiteState, basis: MeasurementBasis) -> list[np.ndarray]:
    """Unnormalised memory operators ``Tr_A((|v_k><v_k| (x) I) rho_AB)`` for each outcome."""
    _require_basis_for(state, basis)
    rho = state.canonical_rho()
    dm = state.dim_memory
    out = []
    for k in range(basis.dim):
        proj = np.kron(basis.projector(k), np.eye(dm))
        out.append(partial_trace(proj @ rho, basis.dim, dm, Factor.FIRST))
    return out
