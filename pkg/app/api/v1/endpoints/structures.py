"""Workspace validation endpoints."""

from fastapi import APIRouter, Depends

from app.models.reports import LawReport
from app.routers.deps import get_workspace
from app.services.workspace import Workspace

router = APIRouter()


@router.post("/validate", response_model=LawReport)
def validate_workspace(ws: Workspace = Depends(get_workspace)) -> LawReport:
    """Build every object of the workspace, running its construction checks.

    Args:
        ws: Workspace built from the request body

    Returns:
        LawReport: One passing check per object

    Raises:
        InputError: On the first object that fails, answered with 400 and a witness
    """
    return ws.validate()
