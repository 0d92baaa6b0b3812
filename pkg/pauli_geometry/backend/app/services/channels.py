"""Pointwise representation of qubit Pauli maps.

A trace-preserving Pauli map acts as X -> sum_a p_a s_a X s_a and is fixed by
its eigenvalues (lambda1, lambda2, lambda3) on the Pauli matrices. Everything
here is a pure function of those three numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import InvalidState, NonUnitSum, NotAChannel
from app.models.types import ClassificationReport, LdivMode, PauliEigenvalues, PauliProbabilities

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS: Tuple[np.ndarray, ...] = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)


def _check_matrix(matrix: np.ndarray, size: int, what: str) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (size, size):
        raise InvalidState(f"{what} must be {size}x{size}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidState(f"{what} has non-finite entries")
    if np.max(np.abs(m - m.conj().T)) > settings.STATE_TOL:
        raise InvalidState(f"{what} is not Hermitian")
    if abs(np.trace(m) - 1.0) > settings.STATE_TOL:
        raise InvalidState(f"{what} does not have unit trace (trace={np.trace(m).real:.3g})")
    return m


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _check_matrix(self.matrix, 2, "density matrix")
        min_eig = float(np.linalg.eigvalsh(m).min())
        if min_eig < -settings.PSD_TOL:
            raise InvalidState(f"density matrix is not positive semidefinite (min eigenvalue {min_eig:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_bloch(cls, r: Sequence[float]) -> "DensityMatrix":
        rx, ry, rz = (float(v) for v in r)
        return cls(0.5 * (IDENTITY + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z))

    def bloch_vector(self) -> Tuple[float, float, float]:
        return tuple(float(np.trace(self.matrix @ s).real) for s in PAULIS[1:])  # type: ignore[return-value]


@dataclass(frozen=True)
class ChoiMatrix:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _check_matrix(self.matrix, 4, "Choi matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def spectrum(self) -> np.ndarray:
        return np.sort(np.linalg.eigvalsh(self.matrix))

    def is_psd(self) -> bool:
        return bool(self.spectrum()[0] >= -settings.PSD_TOL)


def eigenvalues_from_probabilities(p: PauliProbabilities) -> PauliEigenvalues:
    p0, p1, p2, p3 = p.as_tuple()
    total = p0 + p1 + p2 + p3
    if abs(total - 1.0) > settings.STATE_TOL:
        raise NonUnitSum(f"probabilities must sum to 1, got {total!r}")
    return PauliEigenvalues(p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3)


def probabilities_from_eigenvalues(e: PauliEigenvalues) -> PauliProbabilities:
    # scaled before summing so any finite triple gives finite weights
    l1, l2, l3 = (0.25 * v for v in e.as_tuple())
    return PauliProbabilities(
        0.25 + l1 + l2 + l3,
        0.25 + l1 - l2 - l3,
        0.25 - l1 + l2 - l3,
        0.25 - l1 - l2 + l3,
    )


def _apply(e: PauliEigenvalues, x: np.ndarray) -> np.ndarray:
    weights = probabilities_from_eigenvalues(e).as_tuple()
    return sum(w * s @ x @ s for w, s in zip(weights, PAULIS))


def apply_channel(e: PauliEigenvalues, rho: DensityMatrix) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if not is_positive_tp(e):
        raise NotAChannel(f"{e.as_tuple()} is not a positive map; it does not send states to states")
    return DensityMatrix(_apply(e, rho.matrix))


def choi_state(e: PauliEigenvalues) -> ChoiMatrix:
    """Normalised Choi state 1/2 sum_ij |i><j| (x) Lambda(|i><j|)."""
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[i, j] = 1.0
            choi += np.kron(unit, _apply(e, unit))
    return ChoiMatrix(0.5 * choi)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_positive_tp(e: PauliEigenvalues) -> bool:
    return all(abs(v) <= 1.0 + settings.PREDICATE_TOL for v in e.as_tuple())


def is_cptp(e: PauliEigenvalues) -> bool:
    # Choi positivity: every Pauli weight is nonnegative.
    return min(probabilities_from_eigenvalues(e).as_tuple()) >= -settings.PREDICATE_TOL


def is_entanglement_breaking(e: PauliEigenvalues) -> bool:
    return sum(abs(v) for v in e.as_tuple()) <= 1.0 + settings.PREDICATE_TOL and is_cptp(e)


def is_tlg_obtainable(e: PauliEigenvalues) -> bool:
    return min(e.as_tuple()) >= -settings.PREDICATE_TOL


def _snapped(e: PauliEigenvalues) -> Tuple[float, float, float]:
    return tuple(0.0 if abs(v) < settings.ZERO_SNAP else v for v in e.as_tuple())  # type: ignore[return-value]


def is_invertible(e: PauliEigenvalues) -> bool:
    return all(v != 0.0 for v in _snapped(e))


def _require_channel(e: PauliEigenvalues, what: str) -> None:
    if not is_cptp(e):
        raise NotAChannel(f"{what} is defined for channels only; {e.as_tuple()} is not completely positive")


def is_p_divisible(e: PauliEigenvalues) -> bool:
    _require_channel(e, "P-divisibility")
    l1, l2, l3 = e.as_tuple()
    return l1 * l2 * l3 >= -settings.PREDICATE_TOL


def is_cp_divisible(e: PauliEigenvalues) -> bool:
    _require_channel(e, "CP-divisibility")
    snapped = _snapped(e)
    if all(v != 0.0 for v in snapped):
        product = snapped[0] * snapped[1] * snapped[2]
        return product > 0.0 and all(product <= v * v + settings.PREDICATE_TOL for v in snapped)
    # non-invertible: exactly one eigenvalue survives
    return sum(1 for v in snapped if v != 0.0) == 1


def is_l_divisible(e: PauliEigenvalues, mode: LdivMode = LdivMode.LITERAL) -> bool:
    if LdivMode(mode) is LdivMode.CPDIV:
        return is_cp_divisible(e)
    _require_channel(e, "L-divisibility")
    l1, l2, l3 = e.as_tuple()
    tol = settings.PREDICATE_TOL
    return l1 * l2 <= l3 + tol and l2 * l3 <= l1 + tol and l3 * l1 <= l2 + tol


def _slacks(e: PauliEigenvalues) -> dict:
    l1, l2, l3 = e.as_tuple()
    snapped = _snapped(e)
    product = l1 * l2 * l3
    slack = {
        "positive_tp": 1.0 - max(abs(v) for v in (l1, l2, l3)),
        "cptp": min(probabilities_from_eigenvalues(e).as_tuple()),
        "entanglement_breaking": 1.0 - (abs(l1) + abs(l2) + abs(l3)),
        "tlg_obtainable": min(l1, l2, l3),
        "p_divisible": product,
        "l_divisible_literal": min(l3 - l1 * l2, l1 - l2 * l3, l2 - l3 * l1),
    }
    if all(v != 0.0 for v in snapped):
        slack["cp_divisible"] = min(v * v - product for v in (l1, l2, l3))
    return slack


def classify(e: PauliEigenvalues) -> ClassificationReport:
    """Evaluate every predicate at once; divisibility flags are false (with a note) for non-channels."""
    notes: List[str] = []
    positive_tp = is_positive_tp(e)
    cptp = is_cptp(e)
    flags = {
        "positive_tp": positive_tp,
        "cptp": cptp,
        "entanglement_breaking": is_entanglement_breaking(e),
        "tlg_obtainable": is_tlg_obtainable(e),
        "invertible": is_invertible(e),
    }
    if cptp:
        flags["p_divisible"] = is_p_divisible(e)
        flags["cp_divisible"] = is_cp_divisible(e)
        flags["l_divisible_literal"] = is_l_divisible(e, LdivMode.LITERAL)
        flags["l_divisible_cpdiv_mode"] = flags["cp_divisible"]
        if not flags["invertible"]:
            notes.append("non-invertible: CP-divisible iff exactly one eigenvalue is non-zero")
    else:
        for name in ("p_divisible", "cp_divisible", "l_divisible_literal", "l_divisible_cpdiv_mode"):
            flags[name] = False
        notes.append("not completely positive: divisibility is undefined and reported as false")

    boundary = sorted(
        name
        for name, value in _slacks(e).items()
        if flags.get(name, False) and abs(value) <= settings.BOUNDARY_TOL
    )
    return ClassificationReport(eigenvalues=e.as_tuple(), boundary=boundary, notes=notes, **flags)


def hs_distance(a: PauliEigenvalues, b: PauliEigenvalues) -> float:
    """Hilbert-Schmidt distance of the Choi states, (1/2) |a - b|."""
    return 0.5 * math.dist(a.as_tuple(), b.as_tuple())


def choi_distance(a: PauliEigenvalues, b: PauliEigenvalues) -> float:
    diff = choi_state(a).matrix - choi_state(b).matrix
    return float(math.sqrt(max(np.trace(diff @ diff).real, 0.0)))
