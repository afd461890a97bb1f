"""Global error handling middleware."""

import traceback
from collections.abc import Callable

from fastapi import Request, Response, status
from fastapi.responses import JSONResponse

from app.core.exceptions import InputError, ReductionBudgetExceeded
from app.core.logging import get_logger

logger = get_logger(__name__)


def _bad_request(detail: str, witness: dict[str, object] | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status.HTTP_400_BAD_REQUEST,
        content={"detail": detail, "error": "validation_error", "witness": witness},
    )


async def error_handler_middleware(request: Request, call_next: Callable) -> Response:
    """Turn library exceptions into JSON error bodies.

    ``InputError`` and other ``ValueError`` answer 400 carrying the witness,
    when there is one. A blown reduction budget and anything unexpected
    answer 500.

    Args:
        request: FastAPI request object
        call_next: Next middleware or route handler

    Returns:
        Response: JSON response with error details
    """
    try:
        return await call_next(request)
    except InputError as exc:
        logger.warning(f"{request.url.path}: rejected input: {exc!s}")
        return _bad_request(str(exc), exc.witness)
    except ValueError as exc:
        logger.warning(f"{request.url.path}: validation error: {exc!s}")
        return _bad_request(str(exc))
    except ReductionBudgetExceeded as exc:
        logger.error(f"{request.url.path}: {exc!s}")
        return JSONResponse(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            content={"detail": str(exc), "error": "internal_error"},
        )
    except Exception as exc:
        logger.error(f"Unhandled exception: {exc!s}\n{traceback.format_exc()}")
        return JSONResponse(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            content={
                "detail": "Internal server error",
                "error": "internal_error",
            },
        )
