"""Pipeline endpoints."""

from fastapi import APIRouter, Depends

from app.models.pipeline import PipelineDoc
from app.models.reports import PipelineReport
from app.routers.deps import get_pipeline_service
from app.services.pipeline import PipelineService

router = APIRouter()


@router.post("/run", response_model=PipelineReport)
def run_pipeline(
    doc: PipelineDoc,
    service: PipelineService = Depends(get_pipeline_service),
) -> PipelineReport:
    """Run the stages of a pipeline document in order, halting at the first failure."""
    return service.run(doc)
