import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app import __version__
from app.core.config import settings
from app.core.errors import PauliGeometryError
from app.core.logging import configure_logging
from app.middleware.audit import audit_middleware
from app.routers import channels, dynamics, figures, health, volumes

configure_logging()
log = logging.getLogger("api")

app = FastAPI(title="Pauli Geometry API", version=__version__)

app.add_middleware(
    CORSMiddleware,
    allow_origins=[o.strip() for o in settings.ALLOWED_ORIGINS.split(",")],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)
app.middleware("http")(audit_middleware)

app.include_router(health.router, prefix="/health", tags=["health"])
app.include_router(channels.router, prefix="/channels", tags=["channels"])
app.include_router(volumes.router, tags=["volumes"])
app.include_router(figures.router, tags=["figures"])
app.include_router(dynamics.router, prefix="/dynamics", tags=["dynamics"])


@app.exception_handler(PauliGeometryError)
async def domain_exception_handler(request: Request, exc: PauliGeometryError):
    log.info("domain error", extra={"path": request.url.path, "code": exc.code})
    return JSONResponse(status_code=422, content={"detail": exc.message, "code": exc.code})
