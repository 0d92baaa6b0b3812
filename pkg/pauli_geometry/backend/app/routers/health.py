from fastapi import APIRouter

from app import __version__

router = APIRouter()


@router.get("")
async def health():
    return {"ok": True, "version": __version__}
