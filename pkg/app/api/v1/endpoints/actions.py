"""Partial action endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import LawReport
from app.models.requests import ActionCheckRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/check", response_model=LawReport)
def check_action(
    body: ActionCheckRequest,
    ops: OperationsService = Depends(get_operations),
) -> LawReport:
    """Check strongness, fullness, order-preservation and conditions (A)/(B).

    Args:
        body: Workspace, action name and the properties to check
        ops: Operations service

    Returns:
        LawReport: One check per requested property
    """
    return ops.check_action(
        Workspace(body.workspace),
        body.action,
        strong=body.strong,
        full=body.full,
        order=body.order,
        ab=body.ab,
    )
