"""Input document schemas.

A workspace document holds named semilattices, monoids, actions,
subsemilattices, 𝒬ℓ contexts and biunary tables. Objects refer to each other by
name; references are resolved by :class:`app.services.workspace.Workspace`.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.exceptions import InputError
from app.logic.fixtures import WordExpansion
from app.logic.laws import BiunaryTable
from app.logic.order_core import FinMonoid, Poset, Semilattice, semilattice_from_poset
from app.utils.constants import (
    DEFAULT_BOUND,
    DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_MAX_WITNESSES,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_SEED,
)


class WorkspaceConfig(BaseModel):
    """Bounds and sampling parameters shared by every check of a run."""

    model_config = ConfigDict(extra="forbid")

    bound: int = Field(default=DEFAULT_BOUND, ge=1, le=12, description="Canonical length bound")
    sample_size: int = Field(
        default=DEFAULT_SAMPLE_SIZE, ge=0, description="Random tuples drawn when sampling"
    )
    seed: int = Field(default=DEFAULT_SEED, description="Seed of every sampler")
    exhaustive_limit: int = Field(
        default=DEFAULT_EXHAUSTIVE_LIMIT,
        ge=1,
        description="Largest tuple count checked exhaustively",
    )
    max_witnesses: int = Field(
        default=DEFAULT_MAX_WITNESSES, ge=0, description="Cap on witnesses listed per check"
    )

    def sampling(self) -> dict[str, int]:
        return {
            "sample_size": self.sample_size,
            "seed": self.seed,
            "exhaustive_limit": self.exhaustive_limit,
        }


class SemilatticeDoc(BaseModel):
    """A semilattice as a meet table, or as a poset whose pairwise meets exist."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1, description="Number of elements")
    meet: list[list[int]] | None = Field(default=None, description="Meet table")
    leq: list[list[bool]] | None = Field(default=None, description="Order table of a poset")
    one: int | None = Field(default=None, description="Greatest element; inferred when omitted")

    @model_validator(mode="after")
    def exactly_one_table(self) -> "SemilatticeDoc":
        if (self.meet is None) == (self.leq is None):
            raise ValueError("give exactly one of 'meet' or 'leq'")
        return self

    def to_domain(self) -> Semilattice:
        if self.leq is not None:
            return semilattice_from_poset(Poset(self.n, tuple(tuple(r) for r in self.leq)))
        assert self.meet is not None
        one = self.one
        if one is None:
            tops = [
                x
                for x in range(self.n)
                if all(0 <= x < len(row) and row[x] == i for i, row in enumerate(self.meet))
            ]
            if not tops:
                raise InputError("semilattice: no element is an identity for meet")
            one = tops[0]
        return Semilattice(self.n, tuple(tuple(r) for r in self.meet), one)

    @classmethod
    def from_domain(cls, X: Semilattice) -> "SemilatticeDoc":
        return cls(n=X.n, meet=[list(r) for r in X.meet], one=X.one)


class MonoidDoc(BaseModel):
    """A finite monoid as its Cayley table."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1)
    mul: list[list[int]]
    one: int = 0
    labels: list[str] | None = None

    def to_domain(self) -> FinMonoid:
        labels = tuple(self.labels) if self.labels is not None else None
        return FinMonoid(self.n, tuple(tuple(r) for r in self.mul), self.one, labels)

    @classmethod
    def from_domain(cls, T: FinMonoid) -> "MonoidDoc":
        return cls(
            n=T.n,
            mul=[list(r) for r in T.mul],
            one=T.one,
            labels=list(T.labels) if T.labels is not None else None,
        )


class ActionDoc(BaseModel):
    """An action table ``act[t][x]``; ``null`` entries make it partial."""

    model_config = ConfigDict(extra="forbid")

    monoid: str = Field(..., description="Name of the acting monoid")
    space: str = Field(..., description="Name of the semilattice acted on")
    act: list[list[int | None]]

    @property
    def is_total(self) -> bool:
        return all(v is not None for row in self.act for v in row)


class SubsemilatticeDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    space: str
    elements: list[int] = Field(..., min_length=1)


class ContextDoc(BaseModel):
    """A 𝒬ℓ context: a total action and a subsemilattice Y of its space.

    ``ysub`` is the name of a registered subsemilattice or an inline element
    list; when omitted, Y is the whole space.
    """

    model_config = ConfigDict(extra="forbid")

    action: str
    ysub: str | list[int] | None = None


class TableDoc(BaseModel):
    """A finite biunary monoid, with an optional distinguished subset H."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1)
    mul: list[list[int]]
    one: int = 0
    plus: list[int]
    star: list[int] | None = None
    labels: list[str] | None = None
    atoms: list[int] | None = Field(default=None, description="H; defaults to every element")

    def to_domain(self, name: str = "table") -> BiunaryTable:
        core = MonoidDoc(n=self.n, mul=self.mul, one=self.one, labels=self.labels).to_domain()
        star = tuple(self.star) if self.star is not None else None
        return BiunaryTable(core, tuple(self.plus), star, name)

    @classmethod
    def from_domain(cls, table: BiunaryTable, atoms: list[int] | None = None) -> "TableDoc":
        core = table.core
        return cls(
            n=core.n,
            mul=[list(r) for r in core.mul],
            one=core.one,
            plus=list(table.plus_map),
            star=list(table.star_map) if table.star_map is not None else None,
            labels=[core.label(x) for x in core.elements()],
            atoms=atoms,
        )


class WorkspaceDoc(BaseModel):
    """A workspace file: configuration plus named objects of each kind."""

    model_config = ConfigDict(extra="forbid")

    config: WorkspaceConfig = Field(default_factory=WorkspaceConfig)
    semilattices: dict[str, SemilatticeDoc] = Field(default_factory=dict)
    monoids: dict[str, MonoidDoc] = Field(default_factory=dict)
    actions: dict[str, ActionDoc] = Field(default_factory=dict)
    subsemilattices: dict[str, SubsemilatticeDoc] = Field(default_factory=dict)
    contexts: dict[str, ContextDoc] = Field(default_factory=dict)
    tables: dict[str, TableDoc] = Field(default_factory=dict)


class WordExpansionDoc(BaseModel):
    """Rendered bounded slice of a word expansion, as emitted by ``fixtures emit``."""

    name: str
    kind: str
    alphabet: str
    bound: int
    elements: list[str]
    atoms: list[str]
    projections: int

    @classmethod
    def from_expansion(cls, w: WordExpansion) -> "WordExpansionDoc":
        return cls(
            name=w.name,
            kind=w.kind,
            alphabet=w.alphabet,
            bound=w.bound,
            elements=[w.render(x) for x in w.elements()],
            atoms=[w.render(x) for x in w.atoms()],
            projections=len(w.projections()),
        )
