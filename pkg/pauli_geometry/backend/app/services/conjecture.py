"""Sampling check of L-divisibility against CP-divisibility restricted to TLG-obtainable channels.

Draws channels uniformly from the CPTP tetrahedron (distinct eigenvalues only)
and compares membership in the literal L-divisible region with membership in
CPdiv-with-TLG. Disagreements are reported, never filtered.
"""
from __future__ import annotations

import logging
from typing import List, Optional

import numpy as np

from app.core.config import settings
from app.models.types import ConjectureReport, Counterexample, Family, LdivMode, RegionId
from app.services.regions import region_constraints
from app.services.sampling import uniform_block

log = logging.getLogger("conjecture")

MAX_COUNTEREXAMPLES = 10
DISTINCT_GAP = 1e-9


def sample_channels(n: int, seed: int, batch_size: Optional[int] = None) -> np.ndarray:
    """First n CPTP triples with pairwise distinct entries from the seeded stream."""
    batch_size = batch_size or settings.MC_BATCH_SIZE
    cpt = region_constraints(Family.GENERAL, RegionId.CPT)
    box = cpt.box
    kept: List[np.ndarray] = []
    have, start = 0, 0
    while have < n:
        pts = uniform_block(seed, start, batch_size, box)
        start += batch_size
        pts = pts[cpt.contains(pts)]
        gaps = np.abs(pts[:, [0, 1, 2]] - pts[:, [1, 2, 0]]).min(axis=1)
        pts = pts[gaps > DISTINCT_GAP]
        kept.append(pts)
        have += len(pts)
    return np.concatenate(kept)[:n]


def conjecture_report(n: int = 1_000_000, seed: int = 0) -> ConjectureReport:
    if n < 1:
        raise ValueError("sample count must be at least 1")
    pts = sample_channels(n, seed)
    ldiv = region_constraints(Family.GENERAL, RegionId.LDIV, LdivMode.LITERAL).contains(pts)
    cp_tlg = region_constraints(Family.GENERAL, RegionId.CPDIV_TLG).contains(pts)

    differ = np.flatnonzero(ldiv != cp_tlg)
    counterexamples = [
        Counterexample(
            eigenvalues=tuple(float(v) for v in pts[i]),
            l_divisible_literal=bool(ldiv[i]),
            cp_divisible_and_tlg=bool(cp_tlg[i]),
        )
        for i in differ[:MAX_COUNTEREXAMPLES]
    ]
    if len(differ):
        log.warning("L-divisibility and CPdiv-with-TLG disagree", extra={"count": int(len(differ)), "samples": n})
    return ConjectureReport(
        samples=n,
        seed=seed,
        agreement_rate=1.0 - len(differ) / n,
        l_divisible_count=int(ldiv.sum()),
        cp_divisible_tlg_count=int(cp_tlg.sum()),
        counterexamples=counterexamples,
    )
