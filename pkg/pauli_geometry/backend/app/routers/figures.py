from typing import List

from fastapi import APIRouter, Depends

from app.deps.params import get_family, get_mode
from app.models.types import ChartRow, CrossSection, Family, LdivMode
from app.services import charts, cross_sections

router = APIRouter()


@router.get("/charts", response_model=List[ChartRow])
def get_charts(mode: LdivMode = Depends(get_mode)):
    return charts.chart_data(mode)


@router.get("/cross-sections/{family}", response_model=List[CrossSection])
def get_cross_sections(family: Family = Depends(get_family)):
    return cross_sections.cross_section(family)
