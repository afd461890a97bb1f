"""Reconstruction endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import InducedActionReport, IsoReport
from app.models.requests import ReconstructRequest
from app.routers.deps import get_operations
from app.services.operations import OperationsService
from app.services.workspace import Workspace

router = APIRouter()


@router.post("", response_model=IsoReport | InducedActionReport)
def reconstruct(
    body: ReconstructRequest,
    ops: OperationsService = Depends(get_operations),
) -> IsoReport | InducedActionReport:
    """Rebuild a structure as 𝒬ℓ from its distinguished subset and verify θ.

    With ``induce_only`` set, stop after the induced partial action.
    """
    ws = Workspace(body.workspace)
    if body.induce_only:
        return ops.induce(ws, body.structure, body.bound)
    return ops.reconstruct(ws, body.structure, body.bound)
