from typing import Any, Dict, Optional

from fastapi import APIRouter, Depends, Query

from app.deps.params import get_family, get_method, get_mode, get_region, parse_region
from app.models.types import Family, LdivMode, Method, RatioResult, RegionId, VolumeEstimate
from app.services import regions, volumes
from app.services.sampling import MAX_SEED

router = APIRouter()

MAX_SAMPLES = 10_000_000


@router.get("/volumes/{family}/{region}", response_model=VolumeEstimate)
def get_volume(
    family: Family = Depends(get_family),
    region: RegionId = Depends(get_region),
    method: Optional[Method] = Depends(get_method),
    mode: LdivMode = Depends(get_mode),
    samples: Optional[int] = Query(None, ge=1, le=MAX_SAMPLES),
    seed: Optional[int] = Query(None, ge=0, le=MAX_SEED),
):
    return volumes.volume(family, region, method, samples, seed, mode)


@router.get("/ratios/{family}", response_model=RatioResult)
def get_ratio(
    family: Family = Depends(get_family),
    num: str = Query(...),
    den: str = Query(...),
    method: Optional[Method] = Depends(get_method),
    mode: LdivMode = Depends(get_mode),
    samples: Optional[int] = Query(None, ge=1, le=MAX_SAMPLES),
    seed: Optional[int] = Query(None, ge=0, le=MAX_SEED),
):
    return volumes.volume_ratio(family, parse_region(num), parse_region(den), method, samples, seed, mode)


@router.get("/regions/{family}/{region}")
def get_region_constraints(
    family: Family = Depends(get_family),
    region: RegionId = Depends(get_region),
    mode: LdivMode = Depends(get_mode),
) -> Dict[str, Any]:
    return regions.region_constraints(family, region, mode).to_dict()
