from __future__ import annotations

from typing import List, Tuple

import numpy as np

from app.models.types import CrossSection, Family, LabeledPolygon, RegionId
from app.services import geometry
from app.services.families import family_spec
from app.services.regions import region_constraints
from app.services.volumes import cell_intervals, clip_box, halfspace_system

SECTION_REGIONS: Tuple[Tuple[str, RegionId], ...] = (("cpt", RegionId.CPT), ("cpt-tlg", RegionId.CPT_TLG))


def _clean(points: np.ndarray) -> List[Tuple[float, float, float]]:
    return [tuple(float(v) + 0.0 for v in p) for p in points]  # type: ignore[misc]


def _copies(f: Family) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Distinct images of the embedding under cyclic relabelling of lambda1, lambda2, lambda3."""
    spec = family_spec(f)
    if spec.dim == 3:
        return [(spec.matrix, spec.shift)]
    seen = []
    out = []
    for shift in range(3):
        M = np.roll(spec.matrix, shift, axis=0)
        c = np.roll(spec.shift, shift)
        key = (tuple(np.round(M, 12).ravel()), tuple(np.round(c, 12)))
        if key not in seen:
            seen.append(key)
            out.append((M, c))
    return out


def plane_label(M: np.ndarray, c: np.ndarray) -> str:
    if M.shape[1] == 3:
        return "lambda1,lambda2,lambda3"
    parts: List[str] = []
    used = set()
    for k in range(3):
        if k in used:
            continue
        group = [j for j in range(3) if np.allclose(M[j], M[k]) and np.isclose(c[j], c[k])]
        used.update(group)
        if not np.any(M[k]):
            parts.append("=".join(f"lambda{j + 1}" for j in group) + f"={c[k]:g}")
        elif len(group) > 1:
            parts.append("=".join(f"lambda{j + 1}" for j in group))
    return ", ".join(parts)


def _ordered_face(points: np.ndarray, normal: np.ndarray) -> np.ndarray:
    center = points.mean(axis=0)
    u = points[0] - center
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    angles = np.arctan2((points - center) @ v, (points - center) @ u)
    return points[np.argsort(angles)]


def _polygons(f: Family, region: RegionId, M: np.ndarray, c: np.ndarray) -> List[np.ndarray]:
    cs = region_constraints(f, region)
    if cs.is_empty:
        return []
    # CPT and CPT-with-TLG are single convex cells
    cell = cs.cells[0]
    if cs.dim == 1:
        return [np.array([[lo], [hi]]) @ M.T + c for lo, hi in cell_intervals(cell, cs.box)]
    if cs.dim == 2:
        poly = clip_box(cs.box, cell.constraints)
        return [poly @ M.T + c] if geometry.polygon_area(poly) > 0 else []

    A, b = halfspace_system(cs.box, cell.constraints)
    vertices = geometry.polytope_vertices(A, b)
    faces = []
    for row, const in zip(A, b):
        on_face = vertices[np.abs(vertices @ row + const) < 1e-9]
        if len(on_face) >= 3:
            faces.append(_ordered_face(on_face, row / np.linalg.norm(row)) @ M.T + c)
    return faces


def cross_section(f: Family) -> List[CrossSection]:
    """CPT and CPT-with-TLG boundaries of a family, one entry per relabelled copy, in eigenvalue space."""
    f = Family(f)
    sections = []
    for M, c in _copies(f):
        regions = []
        for label, region in SECTION_REGIONS:
            polys = _polygons(f, region, M, c)
            for k, poly in enumerate(polys):
                name = label if len(polys) == 1 else f"{label}/face-{k}"
                regions.append(LabeledPolygon(label=name, vertices=_clean(poly)))
        sections.append(CrossSection(family=f, plane=plane_label(M, c), regions=regions))
    return sections
