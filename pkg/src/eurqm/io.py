"""JSON documents for matrices, states, bases, overlap profiles and reports.

A matrix document is ``{"rows": r, "cols": c, "data": [[re, im], ...]}``
with entries in row-major order. State documents add ``dim_a``, ``dim_b``
and ``measured_factor``; a basis is stored as the unitary whose columns
are its vectors.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from eurqm.errors import ContractViolation
from eurqm.linalg import Factor
from eurqm.overlap import OverlapProfile
from eurqm.states import BipartiteState, MeasurementBasis

SIG_DIGITS = 12


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    """Round to ``digits`` significant digits; ``-0.0`` becomes ``0.0``."""
    return float(format(float(x), f".{digits}g")) + 0.0


def format_sig(x: float, digits: int = SIG_DIGITS) -> str:
    return format(float(x) + 0.0, f".{digits}g")


def matrix_to_doc(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_doc(doc: dict) -> np.ndarray:
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractViolation(f"matrix document missing or malformed field: {exc}") from None
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise ContractViolation(f"matrix document: {len(data)} entries for a {rows}x{cols} matrix")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in data])
    except (TypeError, ValueError) as exc:
        raise ContractViolation(f"matrix document: bad entry ({exc})") from None
    if not np.all(np.isfinite(arr)):
        raise ContractViolation("matrix document: non-finite entry")
    return arr.reshape(rows, cols)


def state_to_doc(state: BipartiteState) -> dict:
    doc = matrix_to_doc(state.rho)
    doc.update(dim_a=state.dim_a, dim_b=state.dim_b, measured_factor=state.measured_factor.value)
    return doc


def state_from_doc(doc: dict) -> BipartiteState:
    rho = matrix_from_doc(doc)
    try:
        dim_a, dim_b = int(doc["dim_a"]), int(doc["dim_b"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractViolation(f"state document missing dim_a/dim_b: {exc}") from None
    return BipartiteState(rho, dim_a, dim_b, Factor.parse(doc.get("measured_factor", "first")))


def basis_to_doc(basis: MeasurementBasis) -> dict:
    return matrix_to_doc(basis.vectors)


def basis_from_doc(doc: dict) -> MeasurementBasis:
    return MeasurementBasis(matrix_from_doc(doc))


def _floats(a) -> list[float]:
    return [round_sig(x) for x in np.asarray(a, dtype=float).ravel()]


def profile_to_doc(profile: OverlapProfile) -> dict:
    pd = profile.projection_distance
    return {
        "dim": profile.dim,
        "c_sorted": _floats(profile.c_sorted),
        "s_profile": _floats(profile.s_profile),
        "omega": _floats(profile.omega),
        "w": _floats(profile.w),
        "c_matrix": [_floats(row) for row in profile.c_matrix],
        "projection_distance": None if pd is None else round_sig(pd),
    }


def report_to_doc(report) -> dict:
    doc = {k: round_sig(v) for k, v in report.values().items()}
    doc["profile"] = profile_to_doc(report.profile)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_doc(doc: dict, path) -> None:
    Path(path).write_text(dumps(doc))


def read_doc(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ContractViolation(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ContractViolation(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_state(path) -> BipartiteState:
    return state_from_doc(read_doc(path))


def load_basis(path) -> MeasurementBasis:
    return basis_from_doc(read_doc(path))
