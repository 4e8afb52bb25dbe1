"""Entropic uncertainty relations in the presence of quantum memory.

The central object is :func:`eurqm.bounds.bound_report`, which evaluates
every bound for one bipartite state and a pair of measurement bases::

    >>> from eurqm import bound_report, paper_bases, paper_state
    >>> r, s = paper_bases()
    >>> rep = bound_report(paper_state(0.5), r, s)
    >>> rep.lhs_conditional >= rep.theorem_new
    True
"""

from eurqm.bounds import (
    BoundReport,
    berta,
    bound_report,
    coles_piani,
    corollary_new,
    direct_sum_majorization,
    entropic_lhs,
    maassen_uffink,
    state_dep_avg,
    state_dep_sorted,
    theorem_new,
)
from eurqm.entropy import (
    conditional_entropies,
    measurement_distribution,
    post_measurement_state,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from eurqm.errors import CapacityError, ContractViolation, DomainError, InvariantViolation
from eurqm.harness import Grid, monte_carlo_verify, scan_p, scan_theta
from eurqm.linalg import Factor
from eurqm.overlap import OverlapProfile, overlap_matrix, overlap_profile, submatrix_s_profile, top_overlaps
from eurqm.states import (
    BipartiteState,
    MeasurementBasis,
    fourier_basis,
    haar_unitary,
    paper_bases,
    paper_state,
    random_bipartite_state,
    standard_basis,
    u_theta,
)

__version__ = "0.1.0"
