"""Path and query parsing shared by the routers.

Unknown family, region or mode names are a client error (400) rather than a
validation failure of the geometry.
"""
from typing import Optional

from fastapi import HTTPException, Query

from app.models.types import Family, LdivMode, Method, RegionId


def _parse(enum, value: str, what: str):
    try:
        return enum(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum)
        raise HTTPException(status_code=400, detail=f"unknown {what} {value!r}; expected one of: {allowed}")


def get_family(family: str) -> Family:
    return _parse(Family, family, "family")


def get_region(region: str) -> RegionId:
    return _parse(RegionId, region, "region")


def get_mode(ldiv_mode: str = Query(LdivMode.LITERAL.value)) -> LdivMode:
    return _parse(LdivMode, ldiv_mode, "ldiv_mode")


def get_method(method: Optional[str] = Query(None)) -> Optional[Method]:
    return None if method is None else _parse(Method, method, "method")


def parse_region(value: str) -> RegionId:
    return _parse(RegionId, value, "region")
