from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import UnsupportedRegion, ZeroDenominator
from app.models.types import Family, LdivMode, Method, RatioResult, RegionId, VolumeEstimate
from app.services import geometry
from app.services.families import box_volume, metric_scale
from app.services.regions import Cell, Constraint, ConstraintSet, Kind, region_constraints
from app.services.sampling import tally

log = logging.getLogger("volumes")

_FACTOR_TOL = 1e-10
_ZERO_VOLUME = 1e-15


@dataclass
class ResolvedCell:
    """A cell with every factorable quadratic replaced by its affine cofactor."""

    affine: List[Constraint] = field(default_factory=list)
    curved: List[Constraint] = field(default_factory=list)
    null: bool = False


def factor_against(q: Constraint, g: Constraint) -> Optional[Constraint]:
    """Affine h with q = g * h, if one exists."""
    d = q.dim
    ga, g0 = g.a, g.b
    rows: List[np.ndarray] = []
    rhs: List[float] = []
    Q = q.Q
    for i in range(d):
        for j in range(i, d):
            row = np.zeros(d + 1)
            row[j] += 0.5 * ga[i]
            row[i] += 0.5 * ga[j]
            rows.append(row)
            rhs.append(Q[i, j])
    for i in range(d):
        row = np.zeros(d + 1)
        row[i] = g0
        row[d] = ga[i]
        rows.append(row)
        rhs.append(q.a[i])
    row = np.zeros(d + 1)
    row[d] = g0
    rows.append(row)
    rhs.append(q.b)

    A, y = np.array(rows), np.array(rhs)
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    if np.linalg.norm(A @ sol - y) > _FACTOR_TOL * max(1.0, float(np.linalg.norm(y))):
        return None
    return Constraint.build(None, sol[:d], float(sol[d]), q.kind)


def resolve_cell(cell: Cell) -> ResolvedCell:
    out = ResolvedCell()
    for c in cell.constraints:
        if c.kind is Kind.EQ:
            # a non-constant equality cuts out a null set
            out.null = True
            return out
        if c.is_affine:
            out.affine.append(c)

    signed = list(out.affine)
    for q in (c for c in cell.constraints if not c.is_affine):
        h = next((h for h in (factor_against(q, g) for g in signed) if h is not None), None)
        if h is None:
            out.curved.append(q)
        elif h.is_constant:
            if h.b < 0.0:
                out.null = True
                return out
        else:
            out.affine.append(h)
    return out


# ---------------------------------------------------------------------------
# exact measure per dimension
# ---------------------------------------------------------------------------

def cell_intervals(cell: Cell, box) -> List[Tuple[float, float]]:
    """Closure of a one-parameter cell as disjoint intervals; equalities give the empty set."""
    lo, hi = box[0]
    intervals = [(lo, hi)]
    for c in cell.constraints:
        if c.kind is Kind.EQ:
            return []
        intervals = geometry.intersect_intervals(
            intervals, geometry.superlevel_intervals(float(c.Q[0, 0]), float(c.a[0]), c.b, lo, hi)
        )
        if not intervals:
            break
    return intervals


def _measure_1d(cs: ConstraintSet) -> float:
    union: List[Tuple[float, float]] = []
    for cell in cs.cells:
        union.extend(cell_intervals(cell, cs.box))
    return geometry.total_length(union)


def _univariate_bounds(c: Constraint, box) -> Optional[List[Constraint]]:
    """A concave quadratic in one coordinate is an interval: two affine bounds."""
    Q, a = c.Q, c.a
    diag = np.diag(Q)
    nonzero = [k for k in range(c.dim) if diag[k] != 0.0]
    if len(nonzero) != 1 or np.count_nonzero(Q) != 1:
        return None
    i = nonzero[0]
    if any(a[k] != 0.0 for k in range(c.dim) if k != i):
        return None
    lo, hi = box[i]
    intervals = geometry.superlevel_intervals(float(Q[i, i]), float(a[i]), c.b, lo, hi)
    if len(intervals) > 1:
        return None
    unit = np.zeros(c.dim)
    unit[i] = 1.0
    if not intervals:
        return [Constraint.build(None, np.zeros(c.dim), -1.0)]
    l, h = intervals[0]
    return [Constraint.build(None, unit, -l), Constraint.build(None, -unit, h)]


def _is_parabola(c: Constraint) -> bool:
    Q, a = c.Q, c.a
    diag = np.diag(Q)
    if np.count_nonzero(Q) != 1:
        return False
    i = int(np.argmax(np.abs(diag)))
    return diag[i] < 0.0 and a[1 - i] != 0.0


def clip_box(box, constraints) -> np.ndarray:
    poly = geometry.box_polygon(box)
    for c in constraints:
        poly = geometry.clip_halfplane(poly, c.a, c.b)
    return poly


def _area_of_cell(cell: Cell, box) -> float:
    resolved = resolve_cell(cell)
    if resolved.null:
        return 0.0
    curved: List[Constraint] = []
    affine = list(resolved.affine)
    for c in resolved.curved:
        bounds = _univariate_bounds(c, box)
        if bounds is not None:
            affine.extend(bounds)
        else:
            curved.append(c)

    poly = clip_box(box, affine)
    area = geometry.polygon_area(poly)
    if area <= _ZERO_VOLUME or not curved:
        return area
    if len(curved) > 1 or not _is_parabola(curved[0]):
        raise UnsupportedRegion("planar cell has a curved boundary other than a single parabola")
    c = curved[0]
    return geometry.area_inside_curve(poly, c.Q, c.a, c.b)


def halfspace_system(box, constraints) -> Tuple[np.ndarray, np.ndarray]:
    """Stack affine constraints and box faces as A x + b >= 0."""
    d = len(box)
    rows = [c.a for c in constraints]
    consts = [c.b for c in constraints]
    for k, (lo, hi) in enumerate(box):
        unit = np.zeros(d)
        unit[k] = 1.0
        rows += [unit, -unit]
        consts += [-lo, hi]
    return np.array(rows), np.array(consts)


def _volume_of_cell(cell: Cell, box) -> float:
    resolved = resolve_cell(cell)
    if resolved.null:
        return 0.0
    A, b = halfspace_system(box, resolved.affine)
    if resolved.curved:
        _, radius = geometry.chebyshev_center(A, b)
        if radius <= geometry.EPS:
            return 0.0
        raise UnsupportedRegion("3D cell is not polytopal; use the Monte Carlo engine")
    return geometry.polytope_volume(A, b)


@lru_cache(maxsize=None)
def lebesgue_measure(f: Family, r: RegionId, mode: LdivMode = LdivMode.LITERAL) -> float:
    """Exact Lebesgue measure of a region in the family's parameter box."""
    cs = region_constraints(f, r, mode)
    if cs.dim == 1:
        return _measure_1d(cs)
    if cs.dim == 2:
        return float(sum(_area_of_cell(cell, cs.box) for cell in cs.cells))
    return float(sum(_volume_of_cell(cell, cs.box) for cell in cs.cells))


def supports_exact(f: Family, r: RegionId, mode: LdivMode = LdivMode.LITERAL) -> bool:
    try:
        lebesgue_measure(Family(f), RegionId(r), LdivMode(mode))
    except UnsupportedRegion:
        return False
    return True


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def exact_volume(
    f: Family, r: RegionId, mode: LdivMode = LdivMode.LITERAL, scale: Optional[float] = None
) -> VolumeEstimate:
    f, r, mode = Family(f), RegionId(r), LdivMode(mode)
    scale = metric_scale(f) if scale is None else scale
    value = scale * lebesgue_measure(f, r, mode)
    log.info("exact volume", extra={"family": f.value, "region": r.value, "mode": mode.value, "value": value})
    return VolumeEstimate(family=f, region=r, mode=mode, method=Method.EXACT, value=max(value, 0.0), stderr=0.0)


def _resolve_args(n: Optional[int], seed: Optional[int]) -> Tuple[int, int]:
    n = settings.MC_DEFAULT_SAMPLES if n is None else int(n)
    seed = settings.MC_DEFAULT_SEED if seed is None else int(seed)
    if n < 1:
        raise ValueError("sample count must be at least 1")
    return n, seed


def mc_volume(
    f: Family,
    r: RegionId,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    mode: LdivMode = LdivMode.LITERAL,
    scale: Optional[float] = None,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> VolumeEstimate:
    f, r, mode = Family(f), RegionId(r), LdivMode(mode)
    n, seed = _resolve_args(n, seed)
    scale = metric_scale(f) if scale is None else scale
    cs = region_constraints(f, r, mode)

    hits = int(tally(lambda pts: np.array([cs.contains(pts).sum()]), cs.box, n, seed, batch_size, workers)[0])
    p = hits / n
    weight = scale * box_volume(f)
    value = weight * p
    stderr = weight * math.sqrt(p * (1.0 - p) / n)
    log.info("mc volume", extra={"family": f.value, "region": r.value, "samples": n, "seed": seed, "value": value})
    return VolumeEstimate(
        family=f, region=r, mode=mode, method=Method.MC, value=value, stderr=stderr, samples=n, seed=seed
    )


def default_method(f: Family, *regions: RegionId, mode: LdivMode = LdivMode.LITERAL) -> Method:
    return Method.EXACT if all(supports_exact(f, r, mode) for r in regions) else Method.MC


def volume(
    f: Family,
    r: RegionId,
    method: Optional[Method] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    mode: LdivMode = LdivMode.LITERAL,
) -> VolumeEstimate:
    method = default_method(f, r, mode=mode) if method is None else Method(method)
    if method is Method.EXACT:
        return exact_volume(f, r, mode)
    return mc_volume(f, r, n, seed, mode)


def volume_ratio(
    f: Family,
    numerator: RegionId,
    denominator: RegionId,
    method: Optional[Method] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    mode: LdivMode = LdivMode.LITERAL,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> RatioResult:
    f, numerator, denominator, mode = Family(f), RegionId(numerator), RegionId(denominator), LdivMode(mode)
    method = default_method(f, numerator, denominator, mode=mode) if method is None else Method(method)

    if method is Method.EXACT:
        den = lebesgue_measure(f, denominator, mode)
        if den <= _ZERO_VOLUME:
            raise ZeroDenominator(f"{denominator.value} has zero volume for {f.value}")
        value = lebesgue_measure(f, numerator, mode) / den
        return RatioResult(
            family=f, numerator=numerator, denominator=denominator, mode=mode,
            method=method, value=value, stderr=0.0,
        )

    n, seed = _resolve_args(n, seed)
    num_cs = region_constraints(f, numerator, mode)
    den_cs = region_constraints(f, denominator, mode)

    def count(pts: np.ndarray) -> np.ndarray:
        a = num_cs.contains(pts)
        b = den_cs.contains(pts)
        return np.array([a.sum(), b.sum(), (a & b).sum()])

    hits_a, hits_b, hits_ab = (int(v) for v in tally(count, num_cs.box, n, seed, batch_size, workers))
    if hits_b == 0:
        raise ZeroDenominator(f"no sample hit {denominator.value} for {f.value} (n={n}, seed={seed})")
    pa, pb, pab = hits_a / n, hits_b / n, hits_ab / n
    value = hits_a / hits_b
    # delta method with common random numbers
    var = (pa * (1 - pa) - 2 * value * (pab - pa * pb) + value * value * pb * (1 - pb)) / (n * pb * pb)
    return RatioResult(
        family=f, numerator=numerator, denominator=denominator, mode=mode,
        method=method, value=value, stderr=math.sqrt(max(var, 0.0)), samples=n, seed=seed,
    )
