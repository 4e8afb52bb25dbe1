"""Parameter sweeps over the example families and Monte-Carlo verification."""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from eurqm.bounds import (
    BoundReport,
    bound_report,
    coles_piani_overlap_part,
    corollary_new,
    direct_sum_majorization,
    maassen_uffink,
    proof_chain,
    state_dep_sorted,
    state_dep_sorted_telescoped,
)
from eurqm.errors import DomainError, InvariantViolation
from eurqm.io import format_sig
from eurqm.linalg import Factor
from eurqm.overlap import DEFAULT_ENUMERATION_CAP, overlap_profile
from eurqm.states import haar_basis, paper_bases, paper_state, random_bipartite_state, theta_family, u_theta

P_COLUMNS = (
    "parameter",
    "lhs_conditional",
    "berta",
    "coles_piani",
    "theorem_new",
    "corollary_new",
    "direct_sum_majorization",
    "state_dep_avg",
    "state_dep_sorted",
)
# theta sweeps have no state, so only the overlap-only bounds are tabulated
THETA_COLUMNS = ("parameter", "maassen_uffink", "coles_piani", "corollary_new", "direct_sum_majorization")

DEFAULT_IDENTITY_TOL = 1e-8


@dataclass(frozen=True)
class Grid:
    """Evenly spaced grid of ``steps`` points from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def spec(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.steps}"

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``start:stop:steps``; endpoints may be numbers or ``pi``-multiples like ``pi/4``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid {text!r}: expected start:stop:steps")
        try:
            steps = int(parts[2])
        except ValueError:
            raise DomainError(f"grid {text!r}: steps must be an integer") from None
        return cls(_parse_number(parts[0]), _parse_number(parts[1]), steps)


_PI_RE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def _parse_number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse number {text!r}")
    coef = float(m.group(1)) if m.group(1) not in ("", None) else 1.0
    div = float(m.group(2)) if m.group(2) else 1.0
    return coef * math.pi / div


DEFAULT_P_GRID = Grid(0.01, 0.99, 99)
DEFAULT_THETA_GRID = Grid(0.0, math.pi / 4, 200)


@dataclass(frozen=True)
class ScanRecord:
    parameter: float
    values: dict
    metadata: dict = field(default_factory=dict, compare=False)

    def row(self, columns) -> list[str]:
        return [format_sig(self.parameter if c == "parameter" else self.values[c]) for c in columns]


def _check_grid(grid: Grid, lo: float, hi: float, open_ends: bool, what: str) -> None:
    if grid.steps < 1:
        raise DomainError(f"{what} grid needs at least one point")
    if grid.start > grid.stop:
        raise DomainError(f"{what} grid: start {grid.start} > stop {grid.stop}")
    if open_ends:
        ok = lo < grid.start and grid.stop < hi
    else:
        ok = lo <= grid.start and grid.stop <= hi
    if not ok:
        ends = "(" if open_ends else "["
        raise DomainError(f"{what} grid {grid.spec()} outside {ends}{lo:g}, {hi:g}{')' if open_ends else ']'}")


def scan_p(grid: Grid = DEFAULT_P_GRID) -> list[ScanRecord]:
    """Bound report for the 2 x 4 family at every grid value of ``p``."""
    _check_grid(grid, 0.0, 1.0, True, "p")
    r, s = paper_bases()
    profile = overlap_profile(r, s)
    meta = {"family": "paper_state", "grid": grid.spec(), "seed": None, "projection_distance": None}
    records = []
    for p in grid.values():
        rep = bound_report(paper_state(float(p)), r, s, profile=profile).check()
        records.append(ScanRecord(float(p), rep.values(), meta))
    return records


def theta_values(theta: float) -> dict:
    fam = theta_family(theta)
    r, s = u_theta(theta)
    prof = overlap_profile(r, s, projection_distance=fam.projection_distance)
    return {
        "maassen_uffink": maassen_uffink(prof),
        "coles_piani": coles_piani_overlap_part(prof),
        "corollary_new": corollary_new(prof),
        "direct_sum_majorization": direct_sum_majorization(prof),
    }


def scan_theta(grid: Grid = DEFAULT_THETA_GRID) -> list[ScanRecord]:
    """State-independent bounds along ``U(theta)`` for ``theta`` in ``[0, pi/4]``."""
    _check_grid(grid, 0.0, math.pi / 4, False, "theta")
    meta = {
        "family": "u_theta",
        "grid": grid.spec(),
        "seed": None,
        "projection_distance": theta_family(0.0).projection_distance,
    }
    records = []
    for theta in grid.values():
        vals = theta_values(float(theta))
        if not all(math.isfinite(v) for v in vals.values()):
            raise InvariantViolation(f"non-finite bound at theta={theta}")
        records.append(ScanRecord(float(theta), vals, meta))
    return records


def to_csv(records, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in sorted(records, key=lambda r: r.parameter):
        w.writerow(rec.row(columns))
    return buf.getvalue()


def write_csv(records, columns, path) -> None:
    Path(path).write_text(to_csv(records, columns))


@dataclass(frozen=True)
class Violation:
    sample: int
    seed: int
    dims: tuple
    rank: int
    measured_factor: str
    inequality: str
    amount: float


@dataclass(frozen=True)
class VerificationSummary:
    samples: int
    seed: int
    tol: float
    identity_tol: float
    checks: int
    max_violation: float
    max_gap: dict
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations

    def describe_failures(self) -> str:
        if self.passed:
            return "no violations"
        lines = [f"{len(self.violations)} violation(s):"]
        for v in self.violations:
            lines.append(
                f"  sample={v.sample} seed={v.seed} dims={v.dims[0]}x{v.dims[1]} rank={v.rank} "
                f"measured={v.measured_factor}: {v.inequality} by {v.amount:.3e}"
            )
        return "\n".join(lines)

    def to_doc(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "identity_tol": self.identity_tol,
            "checks": self.checks,
            "max_violation": self.max_violation,
            "max_gap": self.max_gap,
            "passed": self.passed,
            "violations": [
                {
                    "sample": v.sample,
                    "seed": v.seed,
                    "dims": list(v.dims),
                    "rank": v.rank,
                    "measured_factor": v.measured_factor,
                    "inequality": v.inequality,
                    "amount": v.amount,
                }
                for v in self.violations
            ],
        }


DEFAULT_DIMS = tuple((dm, db) for dm in (2, 3, 4, 5) for db in (1, 2, 3, 4))


def sample_instance(seed: int, index: int, dims):
    """Draw the ``index``-th random (state, R, S) instance of a run.

    Each instance gets its own generator derived from ``(seed, index)``, so
    instances can be drawn in any order.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    d_meas, d_mem = dims[int(rng.integers(len(dims)))]
    rank = int(rng.integers(1, d_meas * d_mem + 1))
    factor = Factor.FIRST if rng.integers(2) == 0 else Factor.SECOND
    if factor is Factor.FIRST:
        state = random_bipartite_state(d_meas, d_mem, rank, rng, factor)
    else:
        state = random_bipartite_state(d_mem, d_meas, rank, rng, factor)
    r = haar_basis(d_meas, rng)
    s = haar_basis(d_meas, rng)
    return state, r, s, (d_meas, d_mem), rank


def instance_gaps(state, r, s, report: BoundReport | None = None) -> list[tuple[str, float, bool]]:
    """Signed gaps of every checked relation: ``(name, gap, is_identity)``.

    A positive gap is a violation. Identities report their absolute residual.
    """
    if report is None:
        report = bound_report(state, r, s)
    out = [(name, gap, False) for name, gap in report.gaps()]
    pc = proof_chain(state, r, s)
    out.append(("H(S|B)-H(A|B) == D(rho||pinch_S rho)", abs(pc.excess - pc.full), True))
    out.append(("D(rho||sigma) >= D(pinch_R rho||pinch_R sigma)", pc.pinched - pc.full, False))
    out.append(("pinched >= row-max relative entropy", pc.maxed - pc.pinched, False))
    out.append(("row-max relative entropy closed form", abs(pc.maxed - pc.maxed_closed_form), True))
    sorted_a = state_dep_sorted(state, r, s)
    sorted_b = state_dep_sorted_telescoped(state, r, s)
    out.append(("sorted bound == telescoped form", abs(sorted_a - sorted_b), True))
    return out


def monte_carlo_verify(
    samples: int,
    dims=DEFAULT_DIMS,
    seed: int = 0,
    tol: float = 1e-9,
    identity_tol: float = DEFAULT_IDENTITY_TOL,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> VerificationSummary:
    """Check every bound inequality and proof-chain relation on random instances.

    Args:
        samples: number of random (state, basis pair) instances.
        dims: ``(d_measured, d_memory)`` pairs to draw from uniformly.
        seed: master seed; the summary is a pure function of the arguments.
        tol: slack for inequalities.
        identity_tol: slack for the exact identities (they accumulate more
            rounding through matrix logarithms).

    Returns:
        A :class:`VerificationSummary`; ``summary.passed`` is false if any
        relation failed beyond its tolerance.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if tol <= 0 or identity_tol <= 0:
        raise DomainError("tolerances must be positive")
    dims = tuple((int(a), int(b)) for a, b in dims)
    if not dims or any(a < 1 or b < 1 for a, b in dims):
        raise DomainError(f"bad dimension list {dims}")
    checks = 0
    max_gap: dict[str, float] = {}
    violations = []
    max_violation = 0.0
    for i in range(samples):
        state, r, s, dd, rank = sample_instance(seed, i, dims)
        report = bound_report(state, r, s, cap=cap)
        for name, gap, is_identity in instance_gaps(state, r, s, report):
            checks += 1
            max_gap[name] = max(max_gap.get(name, -math.inf), gap)
            limit = identity_tol if is_identity else tol
            max_violation = max(max_violation, gap)
            if gap > limit:
                violations.append(Violation(i, seed, dd, rank, state.measured_factor.value, name, gap))
    return VerificationSummary(samples, seed, tol, identity_tol, checks, max_violation, max_gap, tuple(violations))
