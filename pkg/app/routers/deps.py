"""API dependencies for dependency injection."""

from app.models.requests import WorkspaceRequest
from app.services.operations import OperationsService, operations
from app.services.pipeline import PipelineService, pipeline_service
from app.services.workspace import Workspace


def get_workspace(body: WorkspaceRequest) -> Workspace:
    """Build the per-request workspace from the request body.

    Example:
        ```python
        @router.post("/validate")
        def validate(ws: Workspace = Depends(get_workspace)):
            return ws.validate()
        ```
    """
    return Workspace(body.workspace)


def get_operations() -> OperationsService:
    return operations


def get_pipeline_service() -> PipelineService:
    return pipeline_service
