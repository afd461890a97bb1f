"""Pytest configuration and fixtures."""

import copy
import json
from collections.abc import AsyncGenerator
from pathlib import Path
from typing import Any

import pytest
from httpx import ASGITransport, AsyncClient

from app.logic.actions import ActionTable
from app.logic.fixtures import (
    build_fla,
    build_free_subset_expansion,
    chain,
    cyclic_monoid,
    diamond_context,
    f1_context,
)
from app.logic.order_core import Subsemilattice
from app.logic.pl import PlContext
from app.logic.ql import QlContext
from app.main import app

F1_WORKSPACE: dict[str, Any] = {
    "config": {"bound": 4, "sample_size": 200, "seed": 7},
    "semilattices": {"E2": {"n": 2, "meet": [[0, 0], [0, 1]], "one": 1}},
    "monoids": {"F": {"n": 2, "mul": [[0, 1], [1, 1]], "one": 0, "labels": ["1", "t"]}},
    "actions": {
        "f1": {"monoid": "F", "space": "E2", "act": [[0, 1], [0, 0]]},
        "f1p": {"monoid": "F", "space": "E2", "act": [[0, 1], [0, None]]},
    },
    "subsemilattices": {"bottom": {"space": "E2", "elements": [0]}},
    "contexts": {"f1q": {"action": "f1"}},
}


@pytest.fixture
def f1() -> PlContext:
    """𝒫ℓ context of T = {1, t}, t² = t, acting on e < 1 by t·x = e."""
    return f1_context()


@pytest.fixture
def f1_ql(f1: PlContext) -> QlContext:
    return QlContext(f1, Subsemilattice(f1.X, (0, 1)))


@pytest.fixture
def diamond_ctx() -> PlContext:
    return diamond_context()


@pytest.fixture
def chain3_ctx() -> PlContext:
    """T = {1, t}, t² = t, acting on 0 < 1 < 2 by t·x = min(x, 1)."""
    return PlContext(ActionTable(cyclic_monoid(1, 1, "t"), chain(3), ((0, 1, 2), (0, 1, 1))))


@pytest.fixture(scope="session")
def fla2():
    return build_fla(2, 2)


@pytest.fixture(scope="session")
def free_subset():
    return build_free_subset_expansion("x", 3)


@pytest.fixture
def workspace_data() -> dict[str, Any]:
    """A fresh copy of the F1 workspace document."""
    return copy.deepcopy(F1_WORKSPACE)


@pytest.fixture
def workspace_file(tmp_path: Path, workspace_data: dict[str, Any]) -> Path:
    path = tmp_path / "workspace.json"
    path.write_text(json.dumps(workspace_data), encoding="utf-8")
    return path


@pytest.fixture(scope="function")
async def client() -> AsyncGenerator[AsyncClient]:
    """Create a test client bound to the ASGI app.

    Yields:
        AsyncClient: Test HTTP client
    """
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as test_client:
        yield test_client
