"""Fixture endpoints."""

from fastapi import APIRouter, Depends, Query

from app.models.structures import TableDoc, WordExpansionDoc
from app.routers.deps import get_operations
from app.services.operations import OperationsService

router = APIRouter()


@router.get("/{kind}", response_model=TableDoc | WordExpansionDoc)
def emit_fixture(
    kind: str,
    group: str = "z2",
    k: int = Query(default=2, ge=1),
    bound: int = Query(default=3, ge=1, le=4),
    n: int = Query(default=2, ge=1, le=3),
    alphabet: str = "x",
    ops: OperationsService = Depends(get_operations),
) -> TableDoc | WordExpansionDoc:
    """Emit subset-expansion, fla, relations or free-subset."""
    return ops.emit_fixture(kind, group=group, k=k, bound=bound, n=n, alphabet=alphabet)
