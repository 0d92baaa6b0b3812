"""Symbolic integration regions.

Every region is a finite union of cells and every cell is a conjunction of
quadratic constraints q(x) = x^T Q x + a.x + b (>=, > or = 0). Regions are
written once in eigenvalue coordinates, with absolute values and sign cases
split into orthant cells, and then pulled back through a family's affine
embedding. Membership evaluates the pulled-back polynomials directly.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from app.core.config import settings
from app.models.types import Family, LdivMode, RegionId
from app.services.families import family_spec

log = logging.getLogger("regions")

_COEFF_EPS = 1e-15
_KEY_DIGITS = 12


class Kind(str, Enum):
    GE = ">="
    GT = ">"
    EQ = "="


@dataclass(frozen=True)
class Constraint:
    quad: Tuple[Tuple[float, ...], ...]
    linear: Tuple[float, ...]
    const: float
    kind: Kind = Kind.GE

    @classmethod
    def build(cls, Q: Optional[np.ndarray], a: Sequence[float], b: float, kind: Kind = Kind.GE) -> "Constraint":
        a = np.asarray(a, dtype=float)
        d = a.size
        Q = np.zeros((d, d)) if Q is None else 0.5 * (np.asarray(Q, dtype=float) + np.asarray(Q, dtype=float).T)
        Q = np.where(np.abs(Q) < _COEFF_EPS, 0.0, Q)
        a = np.where(np.abs(a) < _COEFF_EPS, 0.0, a)
        b = 0.0 if abs(b) < _COEFF_EPS else float(b)
        return cls(tuple(tuple(float(v) for v in row) for row in Q), tuple(float(v) for v in a), b, Kind(kind))

    @property
    def dim(self) -> int:
        return len(self.linear)

    @property
    def Q(self) -> np.ndarray:
        return np.array(self.quad, dtype=float).reshape(self.dim, self.dim)

    @property
    def a(self) -> np.ndarray:
        return np.array(self.linear, dtype=float)

    @property
    def b(self) -> float:
        return self.const

    @property
    def is_affine(self) -> bool:
        return not np.any(self.Q)

    @property
    def is_constant(self) -> bool:
        return self.is_affine and not np.any(self.a)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float).reshape(-1, self.dim)
        value = x @ self.a + self.b
        if not self.is_affine:
            value = value + np.einsum("ni,ij,nj->n", x, self.Q, x)
        return value

    def holds(self, points: np.ndarray) -> np.ndarray:
        return self._satisfied(self.evaluate(points))

    def _satisfied(self, value):
        if self.kind is Kind.GE:
            return value >= -settings.PREDICATE_TOL
        if self.kind is Kind.GT:
            return value > settings.ZERO_SNAP
        return np.abs(value) < settings.ZERO_SNAP

    def pullback(self, M: np.ndarray, c: np.ndarray) -> "Constraint":
        Q, a = self.Q, self.a
        return Constraint.build(
            M.T @ Q @ M,
            2.0 * (c @ Q @ M) + a @ M,
            float(c @ Q @ c + a @ c + self.b),
            self.kind,
        )

    def key(self) -> tuple:
        rounded = tuple(round(v, _KEY_DIGITS) + 0.0 for v in (*itertools.chain(*self.quad), *self.linear, self.b))
        return (self.kind.value, rounded)

    def expression(self, names: Sequence[str]) -> str:
        symbols = sympy.symbols(list(names))
        Q, a = self.Q, self.a
        expr = sympy.nsimplify(self.b, rational=True, tolerance=1e-12)
        for i, si in enumerate(symbols):
            expr += sympy.nsimplify(a[i], rational=True, tolerance=1e-12) * si
            for j, sj in enumerate(symbols):
                if Q[i, j]:
                    expr += sympy.nsimplify(Q[i, j], rational=True, tolerance=1e-12) * si * sj
        return f"{sympy.sstr(sympy.expand(expr))} {self.kind.value} 0"


@dataclass(frozen=True)
class Cell:
    constraints: Tuple[Constraint, ...]

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        mask = np.ones(points.shape[0], dtype=bool)
        for c in self.constraints:
            mask &= c.holds(points)
        return mask

    def key(self) -> tuple:
        return tuple(sorted(c.key() for c in self.constraints))


@dataclass(frozen=True)
class ConstraintSet:
    family: Family
    region: RegionId
    mode: LdivMode
    box: Tuple[Tuple[float, float], ...]
    cells: Tuple[Cell, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.box)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, self.dim)
        mask = np.zeros(points.shape[0], dtype=bool)
        for cell in self.cells:
            mask |= cell.contains(points)
        return mask

    def to_dict(self) -> Dict:
        names = family_spec(self.family).params
        return {
            "family": self.family.value,
            "region": self.region.value,
            "mode": self.mode.value,
            "parameters": list(names),
            "box": [list(b) for b in self.box],
            "cells": [[c.expression(names) for c in cell.constraints] for cell in self.cells],
        }


# ---------------------------------------------------------------------------
# eigenvalue-space building blocks
# ---------------------------------------------------------------------------

_PAIRS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))  # (k, i, j): lambda_k against lambda_i lambda_j
EVEN_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
ALL_SIGNS = tuple(itertools.product((1, -1), repeat=3))


def _affine(a: Sequence[float], b: float, kind: Kind = Kind.GE) -> Constraint:
    return Constraint.build(None, a, b, kind)


def _unit(k: int, s: float = 1.0) -> np.ndarray:
    v = np.zeros(3)
    v[k] = s
    return v


def _bilinear(k: int, i: int, j: int, s: float = 1.0) -> Constraint:
    """s * (lambda_k - lambda_i lambda_j) >= 0."""
    Q = np.zeros((3, 3))
    Q[i, j] = Q[j, i] = -0.5 * s
    return Constraint.build(Q, _unit(k, s), 0.0)


def box_constraints() -> List[Constraint]:
    out = []
    for k in range(3):
        out.append(_affine(_unit(k, -1.0), 1.0))
        out.append(_affine(_unit(k, 1.0), 1.0))
    return out


def cpt_constraints() -> List[Constraint]:
    # p_0 >= 0 and p_k >= 0 with p_k = (1 + lambda_k - lambda_i - lambda_j) / 4
    out = [_affine(np.full(3, 0.25), 0.25)]
    for k in range(3):
        a = np.full(3, -0.25)
        a[k] = 0.25
        out.append(_affine(a, 0.25))
    return out


def tlg_constraints() -> List[Constraint]:
    return [_affine(_unit(k), 0.0) for k in range(3)]


def orthant_constraints(signs: Sequence[int], kind: Kind = Kind.GE) -> List[Constraint]:
    return [_affine(_unit(k, s), 0.0, kind) for k, s in enumerate(signs)]


def _cells_for(region: RegionId, mode: LdivMode) -> List[List[Constraint]]:
    cpt = cpt_constraints()
    if region is RegionId.PT:
        return [box_constraints()]
    if region is RegionId.CPT:
        return [cpt]
    if region is RegionId.EBC:
        return [
            orthant_constraints(s) + [_affine(-np.asarray(s, dtype=float), 1.0)] + cpt
            for s in ALL_SIGNS
        ]
    if region is RegionId.PDIV:
        return [orthant_constraints(s) + cpt for s in EVEN_SIGNS]
    if region is RegionId.CPDIV or (region is RegionId.LDIV and mode is LdivMode.CPDIV):
        cells = [
            orthant_constraints(s, Kind.GT) + [_bilinear(k, i, j, s[k]) for k, i, j in _PAIRS] + cpt
            for s in EVEN_SIGNS
        ]
        for k, i, j in _PAIRS:
            for sigma in (1.0, -1.0):
                cells.append(
                    [
                        _affine(_unit(k, sigma), 0.0, Kind.GT),
                        _affine(_unit(i), 0.0, Kind.EQ),
                        _affine(_unit(j), 0.0, Kind.EQ),
                    ]
                    + cpt
                )
        return cells
    if region is RegionId.LDIV:
        return [[_bilinear(k, i, j) for k, i, j in _PAIRS] + cpt]
    raise ValueError(f"no eigenvalue cells for {region}")


def eigen_cells(region: RegionId, mode: LdivMode = LdivMode.LITERAL) -> List[List[Constraint]]:
    region, mode = RegionId(region), LdivMode(mode)
    cells = _cells_for(region.base, mode)
    if region.with_tlg:
        cells = [cell + tlg_constraints() for cell in cells]
    return cells


def _constant_holds(c: Constraint) -> bool:
    return bool(c._satisfied(np.array([c.b]))[0])


def _pull_cell(constraints: Iterable[Constraint], M: np.ndarray, c: np.ndarray) -> Optional[Cell]:
    kept: Dict[tuple, Constraint] = {}
    for constraint in constraints:
        pulled = constraint.pullback(M, c)
        if pulled.is_constant:
            if not _constant_holds(pulled):
                return None
            continue
        kept.setdefault(pulled.key(), pulled)
    return Cell(tuple(kept.values()))


@lru_cache(maxsize=None)
def region_constraints(f: Family, r: RegionId, mode: LdivMode = LdivMode.LITERAL) -> ConstraintSet:
    """Pull the eigenvalue cells of a region back to the family's parameters."""
    f, r, mode = Family(f), RegionId(r), LdivMode(mode)
    spec = family_spec(f)
    M, c = spec.matrix, spec.shift

    cells: Dict[tuple, Cell] = {}
    for raw in eigen_cells(r, mode):
        cell = _pull_cell(raw, M, c)
        if cell is not None:
            cells.setdefault(cell.key(), cell)

    log.debug("region built", extra={"family": f.value, "region": r.value, "cells": len(cells)})
    return ConstraintSet(family=f, region=r, mode=mode, box=spec.box, cells=tuple(cells.values()))
