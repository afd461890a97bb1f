"""Request bodies of the HTTP API.

Every request carries its own workspace document; nothing is stored between
requests.
"""

from pydantic import BaseModel, Field

from app.models.structures import WorkspaceDoc


class WorkspaceRequest(BaseModel):
    workspace: WorkspaceDoc = Field(default_factory=WorkspaceDoc)


class ActionCheckRequest(WorkspaceRequest):
    action: str
    strong: bool = False
    full: bool = False
    order: bool = False
    ab: str | None = Field(default=None, description="Y for conditions (A)/(B), by name or list")


class GlobalizeRequest(WorkspaceRequest):
    action: str
    verify: bool = True


class PlRequest(WorkspaceRequest):
    action: str
    args: list[str] = Field(..., min_length=1, description="Elements or a raw word")


class QlRequest(WorkspaceRequest):
    context: str
    args: list[str] = Field(..., min_length=1)


class LawsRequest(WorkspaceRequest):
    suite: str
    structure: str = Field(..., description="table:NAME, pl:ACTION, ql:CONTEXT or fixture:NAME")
    bound: int | None = Field(default=None, ge=1)


class ReconstructRequest(WorkspaceRequest):
    structure: str
    bound: int | None = Field(default=None, ge=1)
    induce_only: bool = False
