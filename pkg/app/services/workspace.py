"""Workspace: loads documents, resolves references and hands out structures."""

import json
import tomllib
from collections.abc import Callable
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from app.core.exceptions import InputError, UnresolvedReferenceError
from app.core.logging import get_logger
from app.logic.actions import ActionTable, PartialActionTable
from app.logic.fixtures import (
    build_fla,
    build_free_subset_expansion,
    build_relation_monoid,
    build_subset_expansion,
    cyclic_group,
    diamond_context,
    f1_context,
    non_strong_basis,
)
from app.logic.laws import AtomSet, BiunaryStructure, BiunaryTable
from app.logic.order_core import FinMonoid, Semilattice, Subsemilattice
from app.logic.pl import PlContext, PlStructure
from app.logic.ql import QlContext, QlStructure
from app.logic.reconstruct import AbstractQ
from app.models.reports import CheckResult, LawReport
from app.models.structures import (
    ActionDoc,
    ContextDoc,
    MonoidDoc,
    SemilatticeDoc,
    SubsemilatticeDoc,
    TableDoc,
    WorkspaceConfig,
    WorkspaceDoc,
)
from app.services.registry import RegistryBase

logger = get_logger(__name__)

StructureWithAtoms = tuple[BiunaryStructure[Any], AtomSet[Any]]


def _pl_pair(ctx: PlContext, bound: int, name: str) -> StructureWithAtoms:
    s = PlStructure(ctx, bound, name=name)
    return s, AtomSet(tuple(s.atoms()), s.is_atom)


def _table_pair(table: BiunaryTable) -> StructureWithAtoms:
    return table, AtomSet.of(table.elements())


def _fla_pair(bound: int) -> StructureWithAtoms:
    w = build_fla(2, min(bound, 3))
    return w, w.atom_set()


def _free_pair(bound: int) -> StructureWithAtoms:
    w = build_free_subset_expansion("x", min(bound, 3))
    return w, w.atom_set()


FIXTURE_STRUCTURES: dict[str, Callable[[int], StructureWithAtoms]] = {
    "f1": lambda bound: _pl_pair(f1_context(), bound, "pl(F1)"),
    "diamond": lambda bound: _pl_pair(diamond_context(), bound, "pl(diamond)"),
    "subset-expansion-z2": lambda bound: _table_pair(build_subset_expansion(cyclic_group(2))),
    "relations": lambda bound: _table_pair(build_relation_monoid(2)),
    "fla": _fla_pair,
    "free-subset": _free_pair,
    "non-strong": lambda bound: non_strong_basis(bound),
}


class Workspace:
    """Named objects of one workspace document, validated on first use.

    Args:
        doc: The parsed document; an empty workspace when omitted
    """

    def __init__(self, doc: WorkspaceDoc | None = None) -> None:
        doc = doc or WorkspaceDoc()
        self.config: WorkspaceConfig = doc.config
        self.semilattices = RegistryBase[SemilatticeDoc, Semilattice](
            "semilattice", lambda name, d: d.to_domain()
        )
        self.monoids = RegistryBase[MonoidDoc, FinMonoid]("monoid", lambda name, d: d.to_domain())
        self.actions = RegistryBase[ActionDoc, PartialActionTable | ActionTable](
            "action", self._build_action
        )
        self.subsemilattices = RegistryBase[SubsemilatticeDoc, Subsemilattice](
            "subsemilattice",
            lambda name, d: Subsemilattice(self.semilattices.require(d.space), tuple(d.elements)),
        )
        self.contexts = RegistryBase[ContextDoc, QlContext]("context", self._build_context)
        self.tables = RegistryBase[TableDoc, BiunaryTable](
            "table", lambda name, d: d.to_domain(name)
        )
        registries: list[tuple[dict[str, Any], RegistryBase[Any, Any]]] = [
            (doc.semilattices, self.semilattices),
            (doc.monoids, self.monoids),
            (doc.actions, self.actions),
            (doc.subsemilattices, self.subsemilattices),
            (doc.contexts, self.contexts),
            (doc.tables, self.tables),
        ]
        for docs, registry in registries:
            for name, item in docs.items():
                registry.create(name, item)

    @classmethod
    def from_data(cls, data: dict[str, Any]) -> "Workspace":
        """Parse a workspace from already-decoded JSON or TOML.

        Raises:
            InputError: On a schema violation, with pydantic's error list as witness
        """
        return cls(parse_document(WorkspaceDoc, data))

    @classmethod
    def from_path(cls, path: str | Path) -> "Workspace":
        return cls.from_data(read_document(path))

    def _build_action(self, name: str, doc: ActionDoc) -> PartialActionTable | ActionTable:
        T = self.monoids.require(doc.monoid)
        X = self.semilattices.require(doc.space)
        if doc.is_total:
            return ActionTable(T, X, tuple(tuple(v for v in r if v is not None) for r in doc.act))
        return PartialActionTable(T, X, tuple(tuple(r) for r in doc.act))

    def _build_context(self, name: str, doc: ContextDoc) -> QlContext:
        action = self.action(doc.action)
        if doc.ysub is None:
            ysub = Subsemilattice(action.space, tuple(action.space.elements()))
        elif isinstance(doc.ysub, str):
            ysub = self.ysub(doc.ysub, action)
        else:
            ysub = Subsemilattice(action.space, tuple(doc.ysub))
        return QlContext(PlContext(action), ysub)

    def ysub(self, ref: str, action: ActionTable) -> Subsemilattice:
        """Resolve Y by subsemilattice name or as an inline list such as ``"0,2,3"``.

        Raises:
            InputError: If Y lives on another space or is not a subsemilattice
        """
        if ref in self.subsemilattices:
            ysub = self.subsemilattices.require(ref)
            if ysub.space != action.space:
                raise InputError(f"subsemilattice '{ref}' is not on the space of the action")
            return ysub
        try:
            elements = tuple(int(x) for x in ref.replace(",", " ").split())
        except ValueError as exc:
            raise UnresolvedReferenceError("subsemilattice", ref) from exc
        return Subsemilattice(action.space, elements)

    def action(self, name: str) -> ActionTable:
        """The total action ``name``.

        Raises:
            InputError: If the action has undefined entries
        """
        value = self.actions.require(name)
        if not isinstance(value, ActionTable):
            raise InputError(f"action '{name}' is partial; a total action is required")
        return value

    def partial_action(self, name: str) -> PartialActionTable:
        value = self.actions.require(name)
        return value.as_partial() if isinstance(value, ActionTable) else value

    def pl_context(self, action: str) -> PlContext:
        return PlContext(self.action(action))

    def ql_context(self, name: str) -> QlContext:
        return self.contexts.require(name)

    def structure(self, ref: str, bound: int | None = None) -> StructureWithAtoms:
        """Resolve a structure reference together with its distinguished subset.

        ``ref`` is ``table:NAME`` (or a bare table name), ``pl:ACTION``,
        ``ql:CONTEXT`` or ``fixture:NAME``.

        Raises:
            UnresolvedReferenceError: If the name is not registered
        """
        bound = bound or self.config.bound
        kind, _, name = ref.partition(":")
        if not name:
            kind, name = "table", kind
        if kind == "table":
            table = self.tables.require(name)
            doc = self.tables.get(name)
            atoms = doc.atoms if doc is not None and doc.atoms is not None else table.elements()
            return table, AtomSet.of(atoms)
        if kind == "pl":
            return _pl_pair(self.pl_context(name), bound, f"pl({name})")
        if kind == "ql":
            s = QlStructure(self.ql_context(name), bound, name=f"ql({name})")
            return s, AtomSet(tuple(s.atoms()), s.is_atom)
        if kind == "fixture":
            if name not in FIXTURE_STRUCTURES:
                raise UnresolvedReferenceError("fixture", name)
            return FIXTURE_STRUCTURES[name](bound)
        raise InputError(
            f"unknown structure reference '{ref}'",
            {"expected": ["table:NAME", "pl:ACTION", "ql:CONTEXT", "fixture:NAME"]},
        )

    def abstract_q(self, ref: str, bound: int | None = None) -> AbstractQ[Any]:
        bound = bound or self.config.bound
        structure, atoms = self.structure(ref, bound)
        return AbstractQ(structure, atoms, bound)

    def validate(self) -> LawReport:
        """Build every registered object, running all construction-time checks.

        Raises:
            InputError: On the first object that fails, naming it
        """
        checks: list[CheckResult] = []
        registries: list[RegistryBase[Any, Any]] = [
            self.semilattices,
            self.monoids,
            self.actions,
            self.subsemilattices,
            self.contexts,
            self.tables,
        ]
        for registry in registries:
            for name in registry.get_multi(limit=len(registry)):
                registry.require(name)
                checks.append(CheckResult.ok(f"{registry.kind}:{name}"))
        logger.info(f"Validated {len(checks)} objects")
        return LawReport(suite="validate", structure="workspace", checks=checks)


def read_document(path: str | Path) -> dict[str, Any]:
    """Decode a JSON or TOML file by its extension.

    Raises:
        InputError: If the file is missing or does not parse
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", {"path": str(path)}) from exc
    try:
        data = tomllib.loads(text) if path.suffix == ".toml" else json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}", {"path": str(path)}) from exc
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold an object at the top level")
    return data


def parse_document[M: WorkspaceDoc](model: type[M], data: dict[str, Any]) -> M:
    """Validate decoded data against a document schema.

    Raises:
        InputError: With the schema errors as witness
    """
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        errors = json.loads(exc.json(include_url=False))
        raise InputError("document does not match the schema", {"errors": errors}) from exc
