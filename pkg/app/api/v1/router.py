"""API v1 router."""

from fastapi import APIRouter

from app.api.v1.endpoints import (
    actions,
    fixtures,
    globalization,
    laws,
    pipeline,
    pl,
    ql,
    reconstruct,
    structures,
)

api_router = APIRouter()

api_router.include_router(structures.router, prefix="/structures", tags=["Structures"])
api_router.include_router(actions.router, prefix="/actions", tags=["Actions"])
api_router.include_router(globalization.router, prefix="/globalization", tags=["Globalization"])
api_router.include_router(pl.router, prefix="/pl", tags=["Pl"])
api_router.include_router(ql.router, prefix="/ql", tags=["Ql"])
api_router.include_router(laws.router, prefix="/laws", tags=["Laws"])
api_router.include_router(fixtures.router, prefix="/fixtures", tags=["Fixtures"])
api_router.include_router(reconstruct.router, prefix="/reconstruct", tags=["Reconstruct"])
api_router.include_router(pipeline.router, prefix="/pipeline", tags=["Pipeline"])
