"""Quantities that depend only on the pair of measurement bases.

Given bases ``R = {|u_j>}`` and ``S = {|v_k>}`` the overlap unitary is
``U[j, k] = <u_j|v_k>`` and the overlaps are ``c_jk = |U[j, k]|^2``. From
``U`` we derive the submatrix-norm profile ``s_0..s_d``, the partial sums
``Omega_1..Omega_2d`` of ``{1} + W`` and the distribution ``W`` itself.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from eurqm.errors import CapacityError, ContractViolation
from eurqm.linalg import TOL, as_matrix, dagger, require_unitary
from eurqm.states import MeasurementBasis

#: Largest dimension for which the submatrix enumeration runs by default.
DEFAULT_ENUMERATION_CAP = 12

# guards stacked SVDs against building huge temporary arrays
_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class OverlapProfile:
    dim: int
    c_matrix: np.ndarray
    u_matrix: np.ndarray
    c_sorted: np.ndarray
    s_profile: np.ndarray
    omega: np.ndarray
    w: np.ndarray
    projection_distance: float | None = field(default=None)

    @property
    def c1(self) -> float:
        return float(self.c_sorted[0])

    def omega_k(self, k: int) -> float:
        """``Omega_k`` with the 1-based index used in formulas."""
        return float(self.omega[k - 1])

    def check(self, tol: float = TOL) -> None:
        """Raise :class:`~eurqm.errors.InvariantViolation` if any structural invariant fails."""
        from eurqm.errors import InvariantViolation

        d = self.dim
        problems = []
        if np.max(np.abs(self.c_matrix.sum(axis=0) - 1)) > tol or np.max(np.abs(self.c_matrix.sum(axis=1) - 1)) > tol:
            problems.append("overlap matrix not doubly stochastic")
        c = self.c_sorted
        if c[0] > 1 + tol or np.any(np.diff(c) > 0) or c[-1] < 1 / d - 1e-12:
            problems.append("top overlaps out of order or below 1/d")
        s = self.s_profile
        if s[0] != 0 or abs(s[1] - math.sqrt(c[0])) > tol or abs(s[d] - 1) > tol or np.any(np.diff(s) < 0):
            problems.append("s-profile malformed")
        if np.any(self.omega[d:] != 2.0) or self.omega[0] != 1.0:
            problems.append("Omega endpoints wrong")
        if np.any(self.w < -1e-12) or abs(self.w.sum() - 1) > tol:
            problems.append("W is not a probability vector")
        if problems:
            raise InvariantViolation("; ".join(problems))


def overlap_unitary(r: MeasurementBasis, s: MeasurementBasis) -> np.ndarray:
    """``U[j, k] = <u_j|v_k>``."""
    if r.dim != s.dim:
        raise ContractViolation(f"bases have different dimensions ({r.dim} vs {s.dim})")
    return dagger(r.vectors) @ s.vectors


def overlap_matrix(r: MeasurementBasis, s: MeasurementBasis) -> np.ndarray:
    return np.abs(overlap_unitary(r, s)) ** 2


def top_overlaps(c) -> np.ndarray:
    """The ``d`` largest entries of a ``d x d`` overlap matrix, descending, with multiplicity."""
    c = np.asarray(c, dtype=float)
    d = c.shape[0]
    return np.sort(c.ravel())[::-1][:d].copy()


def submatrix_count(d: int) -> int:
    """Number of submatrices the enumeration inspects for ``s_1..s_{d-1}``."""
    total = 0
    for k in range(1, d):
        for r in range(1, k + 1):
            cols = k + 1 - r
            if r <= d and cols <= d:
                total += math.comb(d, r) * math.comb(d, cols)
    return total


def _max_block_norm(u: np.ndarray, r: int, cols: int) -> float:
    d = u.shape[0]
    row_sets = np.array(list(itertools.combinations(range(d), r)))
    col_sets = np.array(list(itertools.combinations(range(d), cols)))
    if r == 1 or cols == 1:
        # single row/column blocks: the operator norm is the Euclidean norm
        a = np.abs(u) ** 2
        if r == 1:
            return math.sqrt(float(np.max(a[:, col_sets].sum(axis=-1))))
        return math.sqrt(float(np.max(a[row_sets, :].sum(axis=-2))))
    best = 0.0
    for start in range(0, len(row_sets), max(1, _CHUNK // len(col_sets))):
        rows = row_sets[start : start + max(1, _CHUNK // len(col_sets))]
        blocks = u[rows[:, None, :, None], col_sets[None, :, None, :]]
        norms = np.linalg.norm(blocks.reshape(-1, r, cols), ord=2, axis=(1, 2))
        best = max(best, float(norms.max()))
    return best


def submatrix_s_profile(u, cap: int = DEFAULT_ENUMERATION_CAP, allow_large: bool = False) -> np.ndarray:
    """Submatrix-norm profile ``s_0, s_1, ..., s_d`` of a unitary.

    ``s_k`` is the largest spectral norm over all ``r x s`` submatrices with
    ``r + s = k + 1``, rows and columns being arbitrary index subsets.
    ``s_0 = 0`` and ``s_d = 1`` are fixed; the levels in between are found
    by exhaustive enumeration.

    Args:
        u: ``d x d`` unitary.
        cap: largest ``d`` enumerated without ``allow_large``.
        allow_large: bypass the cap.

    Raises:
        CapacityError: if ``d > cap`` and ``allow_large`` is false.
    """
    u = as_matrix(u, "u")
    require_unitary(u, "overlap unitary")
    d = u.shape[0]
    if d > cap and not allow_large:
        raise CapacityError(
            f"submatrix enumeration for d={d} exceeds cap {cap} "
            f"({submatrix_count(d)} submatrices); pass allow_large to override"
        )
    s = np.zeros(d + 1)
    for k in range(1, d):
        best = 0.0
        for r in range(1, k + 1):
            cols = k + 1 - r
            if r > d or cols > d:
                continue
            best = max(best, _max_block_norm(u, r, cols))
        s[k] = best
    s[d] = 1.0
    # rounding can leave s_k a few ulps above 1 or below s_{k-1}
    s = np.maximum.accumulate(np.minimum(s, 1.0))
    return s


def omega_and_w(s) -> tuple[np.ndarray, np.ndarray]:
    """``(Omega_1..Omega_2d, W)`` from an s-profile ``s_0..s_d``.

    ``Omega_k = 1 + s_{k-1}`` up to ``k = d + 1`` and exactly 2 beyond;
    ``W = (s_1, s_2 - s_1, ..., s_d - s_{d-1})``.
    """
    s = np.asarray(s, dtype=float)
    d = len(s) - 1
    omega = np.full(2 * d, 2.0)
    omega[:d] = 1.0 + s[:d]
    w = np.diff(s)
    return omega, w


def overlap_profile(
    r: MeasurementBasis,
    s: MeasurementBasis,
    cap: int = DEFAULT_ENUMERATION_CAP,
    allow_large: bool = False,
    projection_distance: float | None = None,
) -> OverlapProfile:
    u = overlap_unitary(r, s)
    c = np.abs(u) ** 2
    s_prof = submatrix_s_profile(u, cap=cap, allow_large=allow_large)
    omega, w = omega_and_w(s_prof)
    arrays = [c, u, top_overlaps(c), s_prof, omega, w]
    for a in arrays:
        a.setflags(write=False)
    return OverlapProfile(r.dim, *arrays, projection_distance=projection_distance)
