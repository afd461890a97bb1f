"""Named registries of workspace documents.

Provides a generic registry that stores validated documents by name and
builds their domain objects once, on first use.
"""

from collections.abc import Callable
from typing import Generic, TypeVar

from pydantic import BaseModel

from app.core.exceptions import InputError, UnresolvedReferenceError
from app.core.logging import get_logger

logger = get_logger(__name__)

DocType = TypeVar("DocType", bound=BaseModel)
ValueType = TypeVar("ValueType")


class RegistryBase(Generic[DocType, ValueType]):
    """Base class for a registry of one kind of object.

    Args:
        kind: Name of the object kind, used in error messages
        build: Turns a document (and its name) into the domain object

    Example:
        ```python
        monoids = RegistryBase[MonoidDoc, FinMonoid]("monoid", lambda name, doc: doc.to_domain())
        monoids.create("F1", MonoidDoc(n=2, mul=[[0, 1], [1, 1]]))
        T = monoids.require("F1")
        ```
    """

    def __init__(self, kind: str, build: Callable[[str, DocType], ValueType]) -> None:
        """Initialize an empty registry.

        Args:
            kind: Object kind, e.g. ``"monoid"``
            build: Domain-object factory
        """
        self.kind = kind
        self._build = build
        self._docs: dict[str, DocType] = {}
        self._values: dict[str, ValueType] = {}

    def get(self, name: str) -> DocType | None:
        """Get a document by name.

        Args:
            name: Registered name

        Returns:
            The document or None if not registered
        """
        return self._docs.get(name)

    def get_multi(self, *, skip: int = 0, limit: int = 100) -> list[str]:
        """List registered names in registration order.

        Args:
            skip: Number of names to skip
            limit: Maximum number of names to return

        Returns:
            list[str]: Registered names
        """
        return list(self._docs)[skip : skip + limit]

    def create(self, name: str, doc: DocType) -> DocType:
        """Register a new document.

        Args:
            name: Unique name
            doc: Validated document

        Returns:
            The registered document

        Raises:
            InputError: If the name is already taken
        """
        if name in self._docs:
            raise InputError(
                f"duplicate {self.kind} name '{name}'", {"kind": self.kind, "name": name}
            )
        self._docs[name] = doc
        return doc

    def delete(self, name: str) -> DocType | None:
        """Remove a document and its built object.

        Returns:
            The removed document or None if not registered
        """
        self._values.pop(name, None)
        return self._docs.pop(name, None)

    def require(self, name: str) -> ValueType:
        """Build (once) and return the domain object registered under ``name``.

        Raises:
            UnresolvedReferenceError: If nothing is registered under ``name``
            InputError: If the document fails its construction-time checks
        """
        if name in self._values:
            return self._values[name]
        doc = self._docs.get(name)
        if doc is None:
            raise UnresolvedReferenceError(self.kind, name)
        try:
            value = self._build(name, doc)
        except UnresolvedReferenceError:
            raise
        except InputError as exc:
            raise InputError(f"{self.kind} '{name}': {exc}", exc.witness) from exc
        logger.debug(f"Built {self.kind} '{name}'")
        self._values[name] = value
        return value

    def __contains__(self, name: object) -> bool:
        return name in self._docs

    def __len__(self) -> int:
        return len(self._docs)
