"""𝒫ℓ element endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import ElementResult
from app.models.requests import PlRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/{op}", response_model=ElementResult)
def pl_operation(
    op: str,
    body: PlRequest,
    ops: OperationsService = Depends(get_operations),
) -> ElementResult:
    """Evaluate reduce, mul, plus, star, ct or canonical.

    Args:
        op: Operation name
        body: Workspace, action and arguments in the textual element syntax
        ops: Operations service

    Returns:
        ElementResult: The rendered value
    """
    return ops.pl(Workspace(body.workspace), body.action, op, body.args)
