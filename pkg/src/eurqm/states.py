"""Density matrices, measurement bases and the stock example families.

Random constructors draw from :func:`numpy.random.default_rng` (PCG64), so a
given integer seed reproduces the same matrices on every platform numpy
supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from eurqm.errors import ContractViolation, DomainError
from eurqm.linalg import (
    TOL,
    Factor,
    as_matrix,
    dagger,
    hermitian_eigenvalues,
    nearest_unitary,
    partial_trace,
    require_hermitian,
    swap_factors,
)


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal basis stored as the unitary whose columns are the basis vectors."""

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = as_matrix(self.vectors, "basis")
        if v.shape[0] != v.shape[1]:
            raise ContractViolation(f"basis: expected d x d matrix of column vectors, got {v.shape}")
        gram = dagger(v) @ v
        err = float(np.max(np.abs(gram - np.eye(v.shape[0]))))
        if err > TOL:
            raise ContractViolation(f"basis: vectors not orthonormal (max |<u_j|u_k> - delta_jk| = {err:.3e})")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def vector(self, j: int) -> np.ndarray:
        return self.vectors[:, j]

    def projector(self, j: int) -> np.ndarray:
        v = self.vectors[:, j]
        return np.outer(v, v.conj())


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Density matrix on ``C^dim_a (x) C^dim_b`` with one factor marked as measured.

    The unmeasured factor plays the role of the quantum memory.
    """

    rho: np.ndarray
    dim_a: int
    dim_b: int
    measured_factor: Factor = Factor.FIRST

    def __post_init__(self):
        rho = as_matrix(self.rho, "rho")
        n = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise ContractViolation(f"state: dimensions must be positive, got {self.dim_a}x{self.dim_b}")
        if rho.shape != (n, n):
            raise ContractViolation(f"state: rho has shape {rho.shape}, expected {(n, n)}")
        require_hermitian(rho, "rho")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TOL:
            raise ContractViolation(f"state: trace is {tr!r}, expected 1")
        lam_min = hermitian_eigenvalues(rho)[-1]
        if lam_min < -TOL:
            raise ContractViolation(f"state: negative eigenvalue {lam_min:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "measured_factor", Factor.parse(self.measured_factor))

    @property
    def dim_measured(self) -> int:
        return self.dim_a if self.measured_factor is Factor.FIRST else self.dim_b

    @property
    def dim_memory(self) -> int:
        return self.dim_b if self.measured_factor is Factor.FIRST else self.dim_a

    def canonical_rho(self) -> np.ndarray:
        """rho with the measured factor moved to the first (slow) slot."""
        if self.measured_factor is Factor.FIRST:
            return np.array(self.rho)
        return swap_factors(self.rho, self.dim_a, self.dim_b)

    def canonical(self) -> "BipartiteState":
        if self.measured_factor is Factor.FIRST:
            return self
        return BipartiteState(self.canonical_rho(), self.dim_measured, self.dim_memory, Factor.FIRST)

    def reduced_measured(self) -> np.ndarray:
        return partial_trace(self.canonical_rho(), self.dim_measured, self.dim_memory, Factor.SECOND)

    def reduced_memory(self) -> np.ndarray:
        return partial_trace(self.canonical_rho(), self.dim_measured, self.dim_memory, Factor.FIRST)

    def with_measured(self, factor) -> "BipartiteState":
        return BipartiteState(self.rho, self.dim_a, self.dim_b, Factor.parse(factor))


def standard_basis(d: int) -> MeasurementBasis:
    return MeasurementBasis(np.eye(d, dtype=complex), label="standard")


def fourier_basis(d: int) -> MeasurementBasis:
    """Discrete Fourier basis; mutually unbiased with :func:`standard_basis`."""
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return MeasurementBasis(np.exp(2j * np.pi * j * k / d) / np.sqrt(d), label="fourier")


def product_state(rho_a, rho_b, measured_factor=Factor.FIRST) -> BipartiteState:
    rho_a = as_matrix(rho_a)
    rho_b = as_matrix(rho_b)
    return BipartiteState(np.kron(rho_a, rho_b), rho_a.shape[0], rho_b.shape[0], measured_factor)


def maximally_entangled_state(d: int, measured_factor=Factor.FIRST) -> BipartiteState:
    psi = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    return BipartiteState(np.outer(psi, psi.conj()), d, d, measured_factor)


def maximally_mixed_state(dim_a: int, dim_b: int, measured_factor=Factor.FIRST) -> BipartiteState:
    n = dim_a * dim_b
    return BipartiteState(np.eye(n, dtype=complex) / n, dim_a, dim_b, measured_factor)


def pure_state(psi, dim_a: int, dim_b: int, measured_factor=Factor.FIRST) -> BipartiteState:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return BipartiteState(np.outer(psi, psi.conj()), dim_a, dim_b, measured_factor)


def paper_state(p: float, measured_factor=Factor.SECOND) -> BipartiteState:
    """The 2 x 4 family, entangled for ``0 < p < 1``.

    The qubit (first factor) is the memory and the ququart (second factor)
    is measured, unless ``measured_factor`` says otherwise.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"paper_state: p = {p!r} outside [0, 1]")
    m = np.zeros((8, 8))
    for i in range(3):
        m[i, i] = m[i + 5, i + 5] = p
        m[i, i + 5] = m[i + 5, i] = p
    m[3, 3] = p
    m[4, 4] = m[7, 7] = (1 + p) / 2
    m[4, 7] = m[7, 4] = math.sqrt(1 - p * p) / 2
    return BipartiteState(m / (1 + 7 * p), 2, 4, measured_factor)


def paper_bases() -> tuple[MeasurementBasis, MeasurementBasis]:
    """The rational 4-dimensional basis ``|u_j>`` and the standard basis."""
    a = math.sqrt(205)
    b = math.sqrt(298)
    c = math.sqrt(2 / 149)
    u = np.array(
        [
            [12 / a, 6 / a, 4 / a, 3 / a],
            [-66 / (29 * a), 172 / (29 * a), 183 / (29 * a), -324 / (29 * a)],
            [-11 / (29 * b), 309 / (29 * b), -195 * c / 29, -27 * c / 29],
            [9 / b, -9 / b, -3 * c, -5 * c],
        ]
    ).T
    return MeasurementBasis(u, label="u"), standard_basis(4)


# entries as printed, 4 decimals; only approximately unitary
PRINTED_O = np.array(
    [
        [0.4575, 0.4575, 0.7625],
        [-0.2453, 0.8892, -0.3863],
        [-0.8547, -0.0103, 0.5190],
    ]
)


@dataclass(frozen=True, eq=False)
class ThetaFamily:
    """One member ``U(theta) = M(theta) O M(theta)^dag`` of the qutrit family."""

    theta: float
    m_theta: np.ndarray
    o_matrix: np.ndarray
    o_unitary: np.ndarray
    u: np.ndarray = field(repr=False)

    @property
    def projection_distance(self) -> float:
        """Frobenius distance between the printed O and its nearest unitary."""
        return float(np.linalg.norm(self.o_unitary - self.o_matrix))


def rotation_m(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def theta_family(theta: float) -> ThetaFamily:
    if not 0.0 <= theta <= math.pi / 4 + 1e-15:
        raise DomainError(f"theta = {theta!r} outside [0, pi/4]")
    m = rotation_m(theta)
    o_unitary = nearest_unitary(PRINTED_O)
    u = m @ o_unitary @ m.T
    return ThetaFamily(theta, m, PRINTED_O.copy(), o_unitary, u)


def u_theta(theta: float) -> tuple[MeasurementBasis, MeasurementBasis]:
    """Basis pair whose overlap matrix ``<u_j|v_k>`` is ``U(theta)``.

    The first basis is standard, so the second basis vectors are the
    columns of ``U(theta)`` itself.
    """
    fam = theta_family(theta)
    return standard_basis(3), MeasurementBasis(fam.u, label=f"U({theta:g})")


def haar_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-distributed ``d x d`` unitary.

    QR-decomposes a complex Ginibre matrix and fixes column phases so the
    triangular factor has a positive diagonal, which makes the result
    exactly Haar distributed.

    ``seed`` may be an int or an existing :class:`numpy.random.Generator`.
    """
    if d < 1:
        raise DomainError(f"haar_unitary: d = {d} < 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def haar_basis(d: int, seed=None) -> MeasurementBasis:
    return MeasurementBasis(haar_unitary(d, seed), label="haar")


def random_bipartite_state(dim_a: int, dim_b: int, rank: int, seed=None, measured_factor=Factor.FIRST) -> BipartiteState:
    """Random state from the induced measure.

    A Haar-random pure state on ``dim_a * dim_b * rank`` dimensions is
    reduced by tracing out the ``rank``-dimensional ancilla, so the result
    has rank at most ``rank``; ``rank == 1`` gives a pure state.
    """
    if dim_a < 1 or dim_b < 1:
        raise DomainError(f"random_bipartite_state: bad dimensions {dim_a}x{dim_b}")
    n = dim_a * dim_b
    if not 1 <= rank <= n:
        raise DomainError(f"random_bipartite_state: rank {rank} outside [1, {n}]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    g /= np.linalg.norm(g)
    rho = g @ dagger(g)
    rho = 0.5 * (rho + dagger(rho))
    rho /= np.trace(rho).real
    return BipartiteState(rho, dim_a, dim_b, measured_factor)
