"""Exact measure of low-dimensional semialgebraic pieces.

Intervals handle d=1. In d=2 shapely clips the straight edges and a
Green's-theorem boundary integral adds at most one parabolic arc. scipy's
half-space intersection handles 3D polytopes.
"""
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection
from shapely.geometry import Polygon
from shapely.geometry.polygon import orient

Interval = Tuple[float, float]

EPS = 1e-12
_ROOT_EPS = 1e-12


# ---------------------------------------------------------------------------
# d = 1
# ---------------------------------------------------------------------------

def _roots(A: float, B: float, C: float) -> List[float]:
    """Real roots of A t^2 + B t + C, sorted."""
    scale = max(abs(A), abs(B), abs(C), 1.0)
    if abs(A) <= EPS * scale:
        if abs(B) <= EPS * scale:
            return []
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < -EPS * scale * scale:
        return []
    sq = math.sqrt(max(disc, 0.0))
    q = -0.5 * (B + math.copysign(sq, B))
    if q == 0.0:
        return [0.0, 0.0]
    return sorted((q / A, C / q))


def superlevel_intervals(A: float, B: float, C: float, lo: float, hi: float) -> List[Interval]:
    """{x in [lo, hi] : A x^2 + B x + C >= 0} as disjoint closed intervals."""
    points = [lo] + [r for r in _roots(A, B, C) if lo < r < hi] + [hi]
    out: List[Interval] = []
    for x0, x1 in zip(points, points[1:]):
        mid = 0.5 * (x0 + x1)
        if A * mid * mid + B * mid + C >= 0.0 and x1 > x0:
            out.append((x0, x1))
    return merge_intervals(out)


def merge_intervals(intervals: Sequence[Interval]) -> List[Interval]:
    merged: List[Interval] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1] + EPS:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def intersect_intervals(a: Sequence[Interval], b: Sequence[Interval]) -> List[Interval]:
    out: List[Interval] = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if hi > lo:
                out.append((lo, hi))
    return merge_intervals(out)


def total_length(intervals: Sequence[Interval]) -> float:
    return float(sum(hi - lo for lo, hi in merge_intervals(intervals)))


# ---------------------------------------------------------------------------
# d = 2
# ---------------------------------------------------------------------------

def box_polygon(box: Sequence[Interval]) -> np.ndarray:
    (x0, x1), (y0, y1) = box
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def clip_halfplane(poly: np.ndarray, a: Sequence[float], b: float) -> np.ndarray:
    """Convex polygon intersected with {p : a.p + b >= 0}, counter-clockwise."""
    if len(poly) < 3:
        return np.empty((0, 2))
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm <= EPS:
        return poly if b >= 0.0 else np.empty((0, 2))
    normal = a / norm
    center = poly.mean(axis=0)
    offset = float(center @ a + b) / norm
    foot = center - offset * normal
    tangent = np.array([-normal[1], normal[0]])
    reach = 2.0 * (float(np.max(np.linalg.norm(poly - center, axis=1))) + abs(offset) + 1.0)
    halfplane = Polygon(
        [
            foot - reach * tangent,
            foot + reach * tangent,
            foot + reach * tangent + reach * normal,
            foot - reach * tangent + reach * normal,
        ]
    )
    return polygon_vertices(Polygon(poly).intersection(halfplane))


def polygon_vertices(shape) -> np.ndarray:
    """Counter-clockwise vertices of a shapely polygon; empty for null or lower-dimensional results."""
    if shape.is_empty or shape.geom_type != "Polygon" or shape.area <= 0.0:
        return np.empty((0, 2))
    coords = np.asarray(orient(shape, sign=1.0).exterior.coords)[:-1]
    return dedupe_vertices(coords)


def dedupe_vertices(poly: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    kept: List[np.ndarray] = []
    for p in poly:
        if not kept or np.max(np.abs(p - kept[-1])) > tol:
            kept.append(p)
    if len(kept) > 1 and np.max(np.abs(kept[0] - kept[-1])) <= tol:
        kept.pop()
    return np.array(kept) if kept else np.empty((0, 2))


def polygon_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    return float(Polygon(poly).area)


def _cross(p: np.ndarray, q: np.ndarray) -> float:
    return float(p[0] * q[1] - p[1] * q[0])


def area_inside_curve(poly: np.ndarray, Q: np.ndarray, a: np.ndarray, b: float) -> float:
    """Area of poly intersected with {x : x^T Q x + a.x + b >= 0}.

    Q must have a single non-zero, negative diagonal entry Q_ii and a_j != 0 for
    the other coordinate, so the boundary is a parabola x_j = g(x_i) and the
    superlevel set is convex. The boundary of the intersection is integrated
    with 1/2 \\oint (x dy - y dx): straight pieces from the polygon, one
    parabolic arc between every exit point and the next entry point.
    """
    if len(poly) < 3:
        return 0.0
    poly = polygon_vertices(Polygon(poly))
    if len(poly) < 3:
        return 0.0
    Q = np.asarray(Q, dtype=float)
    a = np.asarray(a, dtype=float)
    i = int(np.argmax(np.abs(np.diag(Q))))
    j = 1 - i
    alpha, beta, gamma = -Q[i, i] / a[j], -a[i] / a[j], -b / a[j]
    orient = 1.0 if i == 0 else -1.0

    def q(p: np.ndarray) -> float:
        return float(p @ Q @ p + a @ p + b)

    pieces: List[Tuple[np.ndarray, np.ndarray, bool]] = []
    n = len(poly)
    for k in range(n):
        p0, p1 = poly[k], poly[(k + 1) % n]
        d = p1 - p0
        ts = [0.0]
        ts += [t for t in _roots(float(d @ Q @ d), float(2.0 * p0 @ Q @ d + a @ d), q(p0)) if _ROOT_EPS < t < 1.0 - _ROOT_EPS]
        ts.append(1.0)
        for t0, t1 in zip(ts, ts[1:]):
            s, e = p0 + t0 * d, p0 + t1 * d
            pieces.append((s, e, q(0.5 * (s + e)) >= 0.0))

    inside = [flag for _, _, flag in pieces]
    if all(inside):
        return polygon_area(poly)
    if not any(inside):
        return 0.0

    start = next(k for k in range(len(pieces)) if inside[k] and not inside[k - 1])
    pieces = pieces[start:] + pieces[:start]

    total = 0.0
    exit_point: Optional[np.ndarray] = None
    for s, e, flag in pieces:
        if flag:
            if exit_point is not None:
                total += _arc(exit_point, s, i, alpha, gamma, orient)
                exit_point = None
            total += 0.5 * _cross(s, e)
        elif exit_point is None:
            exit_point = s
    if exit_point is not None:
        total += _arc(exit_point, pieces[0][0], i, alpha, gamma, orient)
    return max(total, 0.0)


def _arc(start: np.ndarray, end: np.ndarray, i: int, alpha: float, gamma: float, orient: float) -> float:
    # along x_j = alpha u^2 + beta u + gamma with u = x_i: u g'(u) - g(u) = alpha u^2 - gamma
    u0, u1 = float(start[i]), float(end[i])
    return orient * 0.5 * (alpha * (u1 ** 3 - u0 ** 3) / 3.0 - gamma * (u1 - u0))


# ---------------------------------------------------------------------------
# d = 3
# ---------------------------------------------------------------------------

def chebyshev_center(A: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, float]:
    """Largest ball inside {x : A x + b >= 0}; radius 0 when the set is empty or flat."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    d = A.shape[1]
    norms = np.linalg.norm(A, axis=1)
    cost = np.zeros(d + 1)
    cost[-1] = -1.0
    res = linprog(
        cost,
        A_ub=np.hstack([-A, norms[:, None]]),
        b_ub=b,
        bounds=[(None, None)] * d + [(0.0, None)],
        method="highs",
    )
    if not res.success:
        return np.zeros(d), 0.0
    return res.x[:d], float(res.x[-1])


def polytope_vertices(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vertices of the bounded polytope {x : A x + b >= 0}; empty when it has no interior."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    center, radius = chebyshev_center(A, b)
    if radius <= EPS:
        return np.empty((0, A.shape[1]))
    halfspaces = np.hstack([-A, -b[:, None]])
    points = HalfspaceIntersection(halfspaces, center).intersections
    _, first = np.unique(np.round(points, 12), axis=0, return_index=True)
    return points[np.sort(first)]


def polytope_volume(A: np.ndarray, b: np.ndarray) -> float:
    vertices = polytope_vertices(A, b)
    if len(vertices) <= vertices.shape[1]:
        return 0.0
    return float(ConvexHull(vertices).volume)
