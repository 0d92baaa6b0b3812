"""
Entry point for serving the geometry API with uvicorn.

Host, port and log level come from the PAULI_* settings; set
UVICORN_RELOAD=1 for auto-reload during development.
"""
from __future__ import annotations

import os
import pathlib
import sys

import uvicorn

BASE_DIR = pathlib.Path(__file__).resolve().parent

if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

from app.core.config import settings  # noqa: E402


def main() -> None:
    reload_enabled = os.environ.get("UVICORN_RELOAD", "").lower() in {"1", "true", "yes"}
    uvicorn.run(
        "app.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=reload_enabled,
        log_level=settings.LOG_LEVEL.lower(),
    )


if __name__ == "__main__":
    main()
