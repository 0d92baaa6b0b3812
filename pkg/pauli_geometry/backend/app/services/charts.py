from __future__ import annotations

import io
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import pandas as pd

from app.models.types import ChartRow, ChartStatus, Family, LdivMode, RegionId
from app.services.volumes import volume_ratio

STATUS_TOL = 1e-9

# positive trace-preserving maps, then channels
CHART_RATIOS: Tuple[Tuple[str, RegionId, RegionId], ...] = (
    ("cpt/pt", RegionId.CPT, RegionId.PT),
    ("ebc/pt", RegionId.EBC, RegionId.PT),
    ("pt-tlg/pt", RegionId.PT_TLG, RegionId.PT),
    ("ebc/cpt", RegionId.EBC, RegionId.CPT),
    ("cpt-tlg/cpt", RegionId.CPT_TLG, RegionId.CPT),
    ("pdiv/cpt", RegionId.PDIV, RegionId.CPT),
    ("cpdiv/cpt", RegionId.CPDIV, RegionId.CPT),
    ("ldiv/cpt", RegionId.LDIV, RegionId.CPT),
)

CHART_FAMILIES: Tuple[Family, ...] = (
    Family.AXIAL,
    Family.PAIR_ZERO,
    Family.DEPOLARIZING,
    Family.TWO_DISTINCT_ZERO,
    Family.DEGENERATE_PAIR,
    Family.TWO_PAULI,
    Family.DEPHASING,
)


def _row(*values: Optional[str]) -> Dict[str, Optional[Fraction]]:
    return {
        name: (Fraction(v) if v is not None else None)
        for (name, _, _), v in zip(CHART_RATIOS, values)
    }


# Published relative volumes, in CHART_RATIOS order.
PUBLISHED: Dict[Family, Dict[str, Optional[Fraction]]] = {
    Family.AXIAL: _row("1", "1", "1/2", "1", "1/2", "1", "1", "1/2"),
    Family.PAIR_ZERO: _row("1/2", "1/2", "1/2", "1", "1/2", "1/2", "0", "0"),
    Family.DEPOLARIZING: _row("2/3", "1/3", "1/2", "1/2", "3/4", "3/4", "3/4", "3/4"),
    Family.TWO_DISTINCT_ZERO: _row("1/2", "1/2", "1/4", "1", "1/4", "1", "0", "0"),
    Family.DEGENERATE_PAIR: _row("1/2", "1/4", "1/4", "1/2", "3/8", "3/4", "2/3", "2/3"),
    Family.TWO_PAULI: _row("1", "0", "1/2", "0", "1/2", "1", "0", None),
    Family.DEPHASING: _row("1", "1/2", "1/2", "1/2", "1/2", "1", "1", "1"),
}


def status_for(value: float, published: Optional[float]) -> ChartStatus:
    if published is None:
        return ChartStatus.UNREPORTED
    if abs(value - published) <= STATUS_TOL:
        return ChartStatus.CONSISTENT
    return ChartStatus.DISCREPANT


def chart_data(mode: LdivMode = LdivMode.LITERAL) -> List[ChartRow]:
    """Every chart ratio for every family, with the published value and a status."""
    rows: List[ChartRow] = []
    for family in CHART_FAMILIES:
        for name, num, den in CHART_RATIOS:
            value = volume_ratio(family, num, den, method="exact", mode=mode).value
            published = PUBLISHED[family][name]
            published = float(published) if published is not None else None
            rows.append(
                ChartRow(
                    family=family,
                    ratio_name=name,
                    value=value,
                    paper_value=published,
                    status=status_for(value, published),
                )
            )
    return rows


def to_frame(rows: List[ChartRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [row.model_dump(mode="json") for row in rows],
        columns=["family", "ratio_name", "value", "paper_value", "status"],
    )


def to_csv(rows: List[ChartRow]) -> str:
    buf = io.StringIO()
    to_frame(rows).to_csv(buf, index=False, float_format="%.12g", lineterminator="\n")
    return buf.getvalue()
