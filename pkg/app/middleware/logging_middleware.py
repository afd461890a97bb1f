"""Logging middleware for request/response tracking."""

import time
from collections.abc import Callable

from fastapi import Request, Response

from app.core.logging import get_logger

logger = get_logger(__name__)


async def logging_middleware(request: Request, call_next: Callable) -> Response:
    """Log each request with its status and duration.

    The duration is also returned in the ``X-Process-Time`` header.

    Args:
        request: FastAPI request object
        call_next: Next middleware or route handler

    Returns:
        Response: Response from the route handler
    """
    start = time.perf_counter()
    logger.debug(f"Request: {request.method} {request.url.path}")
    response = await call_next(request)
    elapsed = time.perf_counter() - start
    logger.info(
        f"{request.method} {request.url.path} -> {response.status_code} ({elapsed:.3f}s)"
    )
    response.headers["X-Process-Time"] = f"{elapsed:.6f}"
    return response
