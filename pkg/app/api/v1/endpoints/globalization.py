"""Globalisation endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import GlobalizationReport
from app.models.requests import GlobalizeRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/globalize", response_model=GlobalizationReport)
def globalize(
    body: GlobalizeRequest,
    ops: OperationsService = Depends(get_operations),
) -> GlobalizationReport:
    """Globalise a strong, full, order-preserving partial action."""
    return ops.globalize(Workspace(body.workspace), body.action, verify=body.verify)
