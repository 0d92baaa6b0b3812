from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app.core.errors import DimensionMismatch
from app.models.types import Family, PauliEigenvalues

# Hilbert-Schmidt line element in eigenvalue coordinates: ds^2 = (1/4) sum dlambda_k^2
EIGEN_METRIC = 0.25 * np.eye(3)


@dataclass(frozen=True)
class FamilySpec:
    """Affine embedding lambda = M x + c of a parameter box into eigenvalue space."""

    family: Family
    jacobian: Tuple[Tuple[float, ...], ...]
    offset: Tuple[float, float, float]
    box: Tuple[Tuple[float, float], ...]
    params: Tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.box)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.jacobian, dtype=float).reshape(3, self.dim)

    @property
    def shift(self) -> np.ndarray:
        return np.array(self.offset, dtype=float)


_UNIT = (-1.0, 1.0)
_PROB = (0.0, 1.0)

FAMILIES: Dict[Family, FamilySpec] = {
    Family.AXIAL: FamilySpec(Family.AXIAL, ((1,), (0,), (0,)), (0, 0, 0), (_UNIT,), ("lambda",)),
    Family.PAIR_ZERO: FamilySpec(Family.PAIR_ZERO, ((1,), (1,), (0,)), (0, 0, 0), (_UNIT,), ("lambda",)),
    Family.DEPOLARIZING: FamilySpec(Family.DEPOLARIZING, ((1,), (1,), (1,)), (0, 0, 0), (_UNIT,), ("lambda",)),
    Family.TWO_DISTINCT_ZERO: FamilySpec(
        Family.TWO_DISTINCT_ZERO, ((1, 0), (0, 1), (0, 0)), (0, 0, 0), (_UNIT, _UNIT), ("lambda", "eta")
    ),
    Family.DEGENERATE_PAIR: FamilySpec(
        Family.DEGENERATE_PAIR, ((1, 0), (1, 0), (0, 1)), (0, 0, 0), (_UNIT, _UNIT), ("lambda", "eta")
    ),
    Family.TWO_PAULI: FamilySpec(Family.TWO_PAULI, ((-1,), (-1,), (-2,)), (1, 1, 1), (_PROB,), ("p",)),
    Family.DEPHASING: FamilySpec(Family.DEPHASING, ((0,), (-2,), (-2,)), (1, 1, 1), (_PROB,), ("p",)),
    Family.GENERAL: FamilySpec(
        Family.GENERAL,
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        (0, 0, 0),
        (_UNIT, _UNIT, _UNIT),
        ("lambda1", "lambda2", "lambda3"),
    ),
}


def family_spec(f: Family) -> FamilySpec:
    return FAMILIES[Family(f)]


def dimension(f: Family) -> int:
    return family_spec(f).dim


def embed(f: Family, x: Sequence[float]) -> PauliEigenvalues:
    spec = family_spec(f)
    params = np.atleast_1d(np.asarray(x, dtype=float))
    if params.shape != (spec.dim,):
        raise DimensionMismatch(f"{spec.family.value} takes {spec.dim} parameter(s), got {params.size}")
    return PauliEigenvalues.of(spec.matrix @ params + spec.shift)


def embed_many(f: Family, xs: np.ndarray) -> np.ndarray:
    """Vectorised embed: (n, d) parameters to (n, 3) eigenvalues."""
    spec = family_spec(f)
    xs = np.asarray(xs, dtype=float).reshape(-1, spec.dim)
    return xs @ spec.matrix.T + spec.shift


def metric_scale(f: Family) -> float:
    """Volume element sqrt(det(J^T g J)) induced by the Hilbert-Schmidt metric."""
    jac = family_spec(f).matrix
    return float(math.sqrt(np.linalg.det(jac.T @ EIGEN_METRIC @ jac)))


def parameter_box(f: Family) -> List[Tuple[float, float]]:
    return [tuple(bounds) for bounds in family_spec(f).box]  # type: ignore[misc]


def box_volume(f: Family) -> float:
    return float(np.prod([hi - lo for lo, hi in family_spec(f).box]))
