"""𝒬ℓ element endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import ElementResult
from app.models.requests import QlRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/{op}", response_model=ElementResult)
def ql_operation(
    op: str,
    body: QlRequest,
    ops: OperationsService = Depends(get_operations),
) -> ElementResult:
    """Evaluate member, sigma-eq or rep."""
    return ops.ql(Workspace(body.workspace), body.context, op, body.args)
