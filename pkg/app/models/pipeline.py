"""Pipeline document schema."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from app.models.structures import WorkspaceDoc


class StageKind(StrEnum):
    VALIDATE = "validate"
    CHECK_ACTION = "check-action"
    GLOBALIZE = "globalize"
    LAWS = "laws"
    INDUCE = "induce"
    RECONSTRUCT = "reconstruct"


class StageDoc(BaseModel):
    """One stage of a pipeline run."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Stage name reported back")
    kind: StageKind
    action: str | None = Field(default=None, description="Action for check-action and globalize")
    ysub: str | None = Field(default=None, description="Subsemilattice for conditions (A)/(B)")
    structure: str | None = Field(
        default=None, description="Structure reference for laws, induce and reconstruct"
    )
    suites: list[str] = Field(default_factory=list, description="Suites run by a laws stage")
    bound: int | None = Field(default=None, ge=1, description="Overrides the workspace bound")


class PipelineDoc(WorkspaceDoc):
    """A workspace together with the stages to run against it, in order."""

    stages: list[StageDoc] = Field(default_factory=list)
