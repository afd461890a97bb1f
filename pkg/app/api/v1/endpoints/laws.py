"""Law suite endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import LawReport
from app.models.requests import LawsRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/check", response_model=LawReport)
def check_laws(
    body: LawsRequest,
    ops: OperationsService = Depends(get_operations),
) -> LawReport:
    """Run one suite against a structure reference.

    Args:
        body: Workspace, suite name, structure reference and optional bound
        ops: Operations service

    Returns:
        LawReport: Per-law verdicts with witnesses
    """
    return ops.laws(Workspace(body.workspace), body.suite, body.structure, body.bound)
