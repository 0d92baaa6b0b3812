import logging
import time
from typing import Awaitable, Callable

from fastapi import Request, Response

log = logging.getLogger("audit")


async def audit_middleware(request: Request, call_next: Callable[[Request], Awaitable[Response]]) -> Response:
    started = time.perf_counter()
    status = 500
    try:
        response = await call_next(request)
        status = response.status_code
        return response
    finally:
        log.info(
            "request",
            extra={
                "method": request.method,
                "path": request.url.path,
                "query": str(request.query_params) if request.query_params else "",
                "status": status,
                "duration_ms": int((time.perf_counter() - started) * 1000),
            },
        )
