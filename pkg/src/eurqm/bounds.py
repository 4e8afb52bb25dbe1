"""Entropic uncertainty bounds, with and without quantum memory.

All logarithms are base 2. Bounds that involve a memory take the
conditional entropy ``H(A|B)`` of the measured factor given the memory;
the overlap-only parts depend on an :class:`~eurqm.overlap.OverlapProfile`.

Bounds, from weakest to strongest on every instance::

    berta <= coles_piani <= theorem_new <= state_dep_sorted <= state_dep_avg <= H(R|B) + H(S|B)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from eurqm.entropy import (
    conditional_entropies,
    conditional_entropy,
    measurement_distribution,
    pinch,
    post_measurement_state,
    relative_entropy,
    shannon_entropy,
)
from eurqm.errors import InvariantViolation
from eurqm.overlap import DEFAULT_ENUMERATION_CAP, OverlapProfile, overlap_matrix, overlap_profile, top_overlaps
from eurqm.states import BipartiteState, MeasurementBasis

#: Omega coefficients this close to 2 contribute nothing.
COEFF_ZERO_TOL = 1e-12

#: Slack allowed in the ordering checks of :meth:`BoundReport.check`.
CHAIN_TOL = 1e-9


def maassen_uffink(profile: OverlapProfile) -> float:
    return -math.log2(profile.c1) + 0.0


def _cp_term(c1: float, c2: float) -> float:
    coeff = (1 - math.sqrt(c1)) / 2
    if abs(coeff) <= COEFF_ZERO_TOL:
        return 0.0
    return coeff * math.log2(c1 / c2)


def berta(profile: OverlapProfile, state: BipartiteState) -> float:
    return maassen_uffink(profile) + conditional_entropy(state)


def coles_piani_overlap_part(profile: OverlapProfile) -> float:
    """State-independent part of the Coles-Piani bound."""
    c = profile.c_sorted
    if profile.dim < 2:
        return maassen_uffink(profile)
    return maassen_uffink(profile) + _cp_term(c[0], c[1])


def coles_piani(profile: OverlapProfile, state: BipartiteState) -> float:
    return coles_piani_overlap_part(profile) + conditional_entropy(state)


def theorem_terms(profile: OverlapProfile) -> np.ndarray:
    """Per-index terms ``(2 - Omega_{2i})/2 * log(c_i / c_{i+1})`` for ``i = 1..d-1``.

    The coefficient is tested before the logarithm is taken, so indices with
    ``Omega_{2i} = 2`` (all ``2i >= d + 1``) are exactly zero.
    """
    d = profile.dim
    c = profile.c_sorted
    terms = np.zeros(max(d - 1, 0))
    for i in range(1, d):
        k = 2 * i
        coeff = (2.0 - profile.omega_k(k)) / 2 if k <= 2 * d else 0.0
        if abs(coeff) <= COEFF_ZERO_TOL:
            continue
        terms[i - 1] = coeff * math.log2(c[i - 1] / c[i])
    return terms


def corollary_new(profile: OverlapProfile) -> float:
    """State-independent lower bound on ``H(R) + H(S)`` using all ``d`` top overlaps."""
    return maassen_uffink(profile) + float(theorem_terms(profile).sum())


def theorem_new(profile: OverlapProfile, state: BipartiteState) -> float:
    return corollary_new(profile) + conditional_entropy(state)


def direct_sum_majorization(profile: OverlapProfile) -> float:
    """``H(W)``, the Shannon entropy of the s-profile increments."""
    w = np.clip(profile.w, 0.0, None)
    return shannon_entropy(w / w.sum())


def _rowcol_maxima(state, r, s):
    c = overlap_matrix(r, s)
    p = measurement_distribution(state, r)
    q = measurement_distribution(state, s)
    return c, p, q, c.max(axis=1), c.max(axis=0)


def state_dep_avg(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> float:
    """Average of the two row/column-maximum bounds."""
    _, p, q, row_max, col_max = _rowcol_maxima(state, r, s)
    h_ab = conditional_entropy(state)
    return h_ab - 0.5 * (float(p @ np.log2(row_max)) + float(q @ np.log2(col_max))) + 0.0


def sorted_weights(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis):
    """``(c_1..c_d, a)`` with ``a_i = p_{j_i} + q_{k_i}``.

    Rows (columns) are ranked by descending row (column) maximum of the
    overlap matrix, ties going to the lower index.
    """
    c, p, q, row_max, col_max = _rowcol_maxima(state, r, s)
    j_order = np.argsort(-row_max, kind="stable")
    k_order = np.argsort(-col_max, kind="stable")
    return top_overlaps(c), p[j_order] + q[k_order]


def state_dep_sorted(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> float:
    c, a = sorted_weights(state, r, s)
    total = conditional_entropy(state) - math.log2(c[0])
    for i in range(1, len(c)):
        total += a[i] / 2 * math.log2(c[0] / c[i])
    return float(total) + 0.0


def state_dep_sorted_telescoped(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> float:
    """Same value as :func:`state_dep_sorted`, regrouped over consecutive ratios ``c_i / c_{i+1}``."""
    c, a = sorted_weights(state, r, s)
    total = conditional_entropy(state) - math.log2(c[0])
    partial = 0.0
    for i in range(len(c) - 1):
        partial += a[i]
        total += (2 - partial) / 2 * math.log2(c[i] / c[i + 1])
    return float(total) + 0.0


def entropic_lhs(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> tuple[float, float]:
    """``(H(R|B) + H(S|B), H(R) + H(S))``."""
    h_rb, h_sb, _ = conditional_entropies(state, r, s)
    shannon = shannon_entropy(measurement_distribution(state, r)) + shannon_entropy(measurement_distribution(state, s))
    return h_rb + h_sb, shannon


MEMORY_BOUNDS = ("berta", "coles_piani", "theorem_new", "state_dep_sorted", "state_dep_avg")
NO_MEMORY_BOUNDS = ("mu", "corollary_new", "direct_sum_majorization")


@dataclass(frozen=True)
class BoundReport:
    lhs_conditional: float
    lhs_shannon: float
    h_a_given_b: float
    mu: float
    berta: float
    coles_piani: float
    theorem_new: float
    corollary_new: float
    direct_sum_majorization: float
    state_dep_avg: float
    state_dep_sorted: float
    profile: OverlapProfile = field(compare=False, repr=False)

    def gaps(self) -> list[tuple[str, float]]:
        """Each report inequality with its signed gap; positive means violated."""
        out = []
        for name in MEMORY_BOUNDS:
            out.append((f"lhs_conditional >= {name}", getattr(self, name) - self.lhs_conditional))
        for name in NO_MEMORY_BOUNDS:
            out.append((f"lhs_shannon >= {name}", getattr(self, name) - self.lhs_shannon))
        chain = ("state_dep_avg", "state_dep_sorted", "theorem_new", "coles_piani", "berta")
        for hi, lo in zip(chain, chain[1:]):
            out.append((f"{hi} >= {lo}", getattr(self, lo) - getattr(self, hi)))
        return out

    def violations(self, tol: float = CHAIN_TOL) -> list[tuple[str, float]]:
        return [(name, gap) for name, gap in self.gaps() if gap > tol]

    def check(self, tol: float = CHAIN_TOL) -> "BoundReport":
        bad = self.violations(tol)
        if bad:
            raise InvariantViolation("; ".join(f"{n} violated by {g:.3e}" for n, g in bad))
        return self

    def values(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "profile"}


def bound_report(
    state: BipartiteState,
    r: MeasurementBasis,
    s: MeasurementBasis,
    profile: OverlapProfile | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    allow_large: bool = False,
) -> BoundReport:
    """Evaluate every bound and both entropic sums for one instance."""
    if profile is None:
        profile = overlap_profile(r, s, cap=cap, allow_large=allow_large)
    h_rb, h_sb, h_ab = conditional_entropies(state, r, s)
    _, lhs_shannon = entropic_lhs(state, r, s)
    cp = coles_piani_overlap_part(profile)
    cor = corollary_new(profile)
    mu = maassen_uffink(profile)
    return BoundReport(
        lhs_conditional=h_rb + h_sb,
        lhs_shannon=lhs_shannon,
        h_a_given_b=h_ab,
        mu=mu,
        berta=mu + h_ab,
        coles_piani=cp + h_ab,
        theorem_new=cor + h_ab,
        corollary_new=cor,
        direct_sum_majorization=direct_sum_majorization(profile),
        state_dep_avg=state_dep_avg(state, r, s),
        state_dep_sorted=state_dep_sorted(state, r, s),
        profile=profile,
    )


@dataclass(frozen=True)
class ProofChain:
    """Relative-entropy quantities linking ``H(S|B) - H(A|B)`` to the row-maximum bound.

    Expected relations::

        excess == full >= pinched >= maxed == maxed_closed_form
    """

    excess: float
    full: float
    pinched: float
    maxed: float
    maxed_closed_form: float


def proof_chain(state: BipartiteState, r: MeasurementBasis, s: MeasurementBasis) -> ProofChain:
    h_rb, h_sb, h_ab = conditional_entropies(state, r, s)
    rho = state.canonical_rho()
    dm = state.dim_memory
    sigma_s = pinch(rho, s, dm)
    rho_rb = post_measurement_state(state, r).rho
    row_max = overlap_matrix(r, s).max(axis=1)
    rho_b = state.reduced_memory()
    sigma_max = sum(row_max[j] * np.kron(r.projector(j), rho_b) for j in range(r.dim))
    p = measurement_distribution(state, r)
    return ProofChain(
        excess=h_sb - h_ab,
        full=relative_entropy(rho, sigma_s),
        pinched=relative_entropy(rho_rb, pinch(sigma_s, r, dm)),
        maxed=relative_entropy(rho_rb, sigma_max),
        maxed_closed_form=-h_rb - float(p @ np.log2(row_max)),
    )
