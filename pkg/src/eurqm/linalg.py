"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Tensor products
use one fixed index convention everywhere: the first factor is the slow
index, so row ``i_a * r_b + i_b`` of ``kron(a, b)`` belongs to ``(i_a, i_b)``.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from eurqm.errors import ContractViolation

#: Tolerance for hermiticity and unitarity checks.
TOL = 1e-10


class Factor(str, Enum):
    """Which tensor factor of a bipartite space an operation refers to."""

    FIRST = "first"
    SECOND = "second"

    @classmethod
    def parse(cls, value) -> "Factor":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ContractViolation(f"unknown factor {value!r}; expected 'first' or 'second'") from None


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ContractViolation(f"{name}: expected a 2-d array, got shape {a.shape}")
    if a.size == 0:
        raise ContractViolation(f"{name}: empty matrix")
    if not np.all(np.isfinite(a)):
        raise ContractViolation(f"{name}: non-finite entries")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def require_square(m: np.ndarray, name: str = "matrix") -> None:
    if m.shape[0] != m.shape[1]:
        raise ContractViolation(f"{name}: not square (shape {m.shape})")


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def unitarity_error(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(dagger(m) @ m - np.eye(m.shape[1]))))


def require_hermitian(m: np.ndarray, name: str = "matrix", tol: float = TOL) -> None:
    require_square(m, name)
    err = hermiticity_error(m)
    if err > tol:
        raise ContractViolation(f"{name}: not Hermitian (max |m - m^dag| = {err:.3e} > {tol:g})")


def require_unitary(m: np.ndarray, name: str = "matrix", tol: float = TOL) -> None:
    require_square(m, name)
    err = unitarity_error(m)
    if err > tol:
        raise ContractViolation(f"{name}: not unitary (max |m^dag m - I| = {err:.3e} > {tol:g})")


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    Raises:
        ContractViolation: if ``m`` is not square or deviates from its
            adjoint by more than :data:`TOL` in any entry.
    """
    a = as_matrix(m)
    require_hermitian(a)
    # symmetrise so eigvalsh sees exactly the Hermitian part
    vals = np.linalg.eigvalsh(0.5 * (a + dagger(a)))
    return vals[::-1].copy()


def largest_singular_value(m) -> float:
    """Operator (spectral) norm of ``m``."""
    a = as_matrix(m)
    return float(np.linalg.norm(a, 2))


def kronecker(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace(m, dim_first: int, dim_second: int, traced_factor) -> np.ndarray:
    """Trace out one factor of an operator on a ``dim_first * dim_second`` space.

    Args:
        m: square matrix of size ``dim_first * dim_second``.
        dim_first: dimension of the slow (first) factor.
        dim_second: dimension of the fast (second) factor.
        traced_factor: :class:`Factor` (or ``"first"``/``"second"``) to remove.

    Returns:
        The reduced operator on the kept factor.
    """
    a = as_matrix(m)
    require_square(a)
    n = dim_first * dim_second
    if dim_first < 1 or dim_second < 1 or a.shape[0] != n:
        raise ContractViolation(
            f"partial_trace: matrix of size {a.shape[0]} does not match dims {dim_first}x{dim_second}"
        )
    t = a.reshape(dim_first, dim_second, dim_first, dim_second)
    if Factor.parse(traced_factor) is Factor.FIRST:
        return np.einsum("iaib->ab", t)
    return np.einsum("aibi->ab", t)


def swap_factors(m, dim_first: int, dim_second: int) -> np.ndarray:
    """Reorder a bipartite operator so that the second factor becomes the first."""
    a = as_matrix(m)
    n = dim_first * dim_second
    if a.shape != (n, n):
        raise ContractViolation(f"swap_factors: shape {a.shape} does not match dims {dim_first}x{dim_second}")
    t = a.reshape(dim_first, dim_second, dim_first, dim_second)
    return t.transpose(1, 0, 3, 2).reshape(n, n)


def nearest_unitary(m) -> np.ndarray:
    """Unitary polar factor of a nonsingular square matrix.

    This is the unique unitary closest to ``m`` in Frobenius norm; for
    ``m = W S V^dag`` it equals ``W V^dag``.
    """
    a = as_matrix(m)
    require_square(a)
    w, sv, vh = np.linalg.svd(a)
    if sv[-1] <= TOL * max(sv[0], 1.0):
        raise ContractViolation(f"nearest_unitary: matrix is singular (smallest singular value {sv[-1]:.3e})")
    return w @ vh
