"""Finite semilattices, posets, monoids and congruences.

These are the ground types every other module consumes. Elements are plain
indices ``0..n-1``; every structure is validated once at construction and is
immutable afterwards.
"""

from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Generic, TypeVar

from app.core.exceptions import InputError

Table = tuple[tuple[int, ...], ...]
BoolTable = tuple[tuple[bool, ...], ...]

K = TypeVar("K", bound=Hashable)


def _as_table(rows: Sequence[Sequence[int]], n: int, name: str) -> Table:
    if n < 1:
        raise InputError(f"{name}: element count must be positive, got {n}")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise InputError(f"{name}: table must be {n}x{n}")
    for x, row in enumerate(rows):
        for y, value in enumerate(row):
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n:
                raise InputError(
                    f"{name}: entry out of range at ({x}, {y})",
                    {"row": x, "column": y, "value": value},
                )
    return tuple(tuple(row) for row in rows)


def _check_index(x: int, n: int, what: str) -> None:
    if not 0 <= x < n:
        raise InputError(f"{what} index {x} out of range 0..{n - 1}", {"index": x})


class UnionFind(Generic[K]):
    """Disjoint sets with path compression and union by rank."""

    def __init__(self, items: Iterable[K]) -> None:
        self.parent: dict[K, K] = {x: x for x in items}
        self.rank: dict[K, int] = {x: 0 for x in self.parent}

    def find(self, x: K) -> K:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: K, y: K) -> bool:
        """Merge the classes of ``x`` and ``y``; return whether they were distinct."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        del self.rank[y]
        return True

    def reps(self) -> set[K]:
        return set(self.rank)

    def __len__(self) -> int:
        return len(self.rank)


@dataclass(frozen=True)
class Poset:
    """A finite partial order given by its full ``leq`` table."""

    n: int
    leq: BoolTable

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.leq) != self.n or any(len(r) != self.n for r in self.leq):
            raise InputError(f"poset: leq table must be {self.n}x{self.n}")
        object.__setattr__(self, "leq", tuple(tuple(bool(v) for v in row) for row in self.leq))
        for x in range(self.n):
            if not self.leq[x][x]:
                raise InputError("poset: not reflexive", {"x": x})
        for x, y in product(range(self.n), repeat=2):
            if x != y and self.leq[x][y] and self.leq[y][x]:
                raise InputError("poset: not antisymmetric", {"x": x, "y": y})
        for x, y, z in product(range(self.n), repeat=3):
            if self.leq[x][y] and self.leq[y][z] and not self.leq[x][z]:
                raise InputError("poset: not transitive", {"x": x, "y": y, "z": z})

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]]) -> "Poset":
        """Build the reflexive-transitive closure of ``x <= y`` pairs."""
        leq = [[x == y for y in range(n)] for x in range(n)]
        for x, y in covers:
            _check_index(x, n, "poset")
            _check_index(y, n, "poset")
            leq[x][y] = True
        for k, i, j in product(range(n), repeat=3):
            if leq[i][k] and leq[k][j]:
                leq[i][j] = True
        return cls(n, tuple(tuple(row) for row in leq))

    def elements(self) -> range:
        return range(self.n)

    def below(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.leq[y][x])


@dataclass(frozen=True)
class Semilattice:
    """A finite meet-semilattice with identity, stored as its meet table.

    Attributes:
        n: Number of elements
        meet: ``n x n`` table, ``meet[x][y]`` is the index of ``x ∧ y``
        one: Index of the identity (greatest element)
    """

    n: int
    meet: Table
    one: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "meet", _as_table(self.meet, self.n, "semilattice"))
        _check_index(self.one, self.n, "semilattice identity")
        m = self.meet
        for x in range(self.n):
            if m[x][x] != x:
                raise InputError("semilattice: meet not idempotent", {"x": x})
            if m[self.one][x] != x:
                raise InputError("semilattice: identity law fails", {"x": x})
        for x, y in product(range(self.n), repeat=2):
            if m[x][y] != m[y][x]:
                raise InputError("semilattice: meet not commutative", {"x": x, "y": y})
        for x, y, z in product(range(self.n), repeat=3):
            if m[x][m[y][z]] != m[m[x][y]][z]:
                raise InputError(
                    "semilattice: meet not associative", {"x": x, "y": y, "z": z}
                )

    def elements(self) -> range:
        return range(self.n)

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.meet[x][y] == x

    def meet_all(self, items: Iterable[int]) -> int:
        result = self.one
        for x in items:
            result = self.meet[result][x]
        return result

    def poset(self) -> Poset:
        leq = tuple(tuple(self.leq(x, y) for y in range(self.n)) for x in range(self.n))
        return Poset(self.n, leq)

    def bottom(self) -> int:
        return self.meet_all(range(self.n))


@dataclass(frozen=True)
class Subsemilattice:
    """A meet-closed subset of a semilattice that has its own greatest element.

    The greatest element ``top`` plays the role of the identity of the subset;
    it need not be the identity of the ambient semilattice.
    """

    space: Semilattice
    elements: tuple[int, ...]
    top: int = field(init=False)

    def __post_init__(self) -> None:
        items = tuple(sorted(set(self.elements)))
        if not items:
            raise InputError("subsemilattice must be nonempty")
        for x in items:
            _check_index(x, self.space.n, "subsemilattice")
        members = set(items)
        for x, y in product(items, repeat=2):
            if self.space.meet[x][y] not in members:
                raise InputError(
                    "subsemilattice is not meet-closed",
                    {"x": x, "y": y, "meet": self.space.meet[x][y]},
                )
        tops = [x for x in items if all(self.space.leq(y, x) for y in items)]
        if not tops:
            raise InputError("subsemilattice has no greatest element", {"elements": list(items)})
        object.__setattr__(self, "elements", items)
        object.__setattr__(self, "top", tops[0])

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_semilattice(self) -> Semilattice:
        """Relabel the subset as a semilattice; index ``i`` stands for ``elements[i]``."""
        index = {x: i for i, x in enumerate(self.elements)}
        meet = tuple(
            tuple(index[self.space.meet[x][y]] for y in self.elements) for x in self.elements
        )
        return Semilattice(len(self.elements), meet, index[self.top])


@dataclass(frozen=True)
class FinMonoid:
    """A finite monoid given by its Cayley table.

    Attributes:
        n: Number of elements
        mul: ``n x n`` table, ``mul[x][y]`` is the index of ``xy``
        one: Index of the identity
        labels: Optional display names, one per element
    """

    n: int
    mul: Table
    one: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mul", _as_table(self.mul, self.n, "monoid"))
        _check_index(self.one, self.n, "monoid identity")
        if self.labels is not None and len(self.labels) != self.n:
            raise InputError("monoid: one label per element required")
        m = self.mul
        for x in range(self.n):
            if m[self.one][x] != x or m[x][self.one] != x:
                raise InputError("monoid: identity law fails", {"x": x})
        for x, y, z in product(range(self.n), repeat=3):
            if m[x][m[y][z]] != m[m[x][y]][z]:
                raise InputError("monoid: not associative", {"x": x, "y": y, "z": z})

    def elements(self) -> range:
        return range(self.n)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def product(self, items: Iterable[int]) -> int:
        result = self.one
        for x in items:
            result = self.mul[result][x]
        return result

    def closure(self, generators: Iterable[int]) -> frozenset[int]:
        """Submonoid generated by ``generators``."""
        gens = list(generators)
        seen = {self.one}
        frontier = [self.one]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def generators(self) -> tuple[int, ...]:
        """A generating set found greedily in index order."""
        gens: list[int] = []
        covered = self.closure(gens)
        for x in range(self.n):
            if x not in covered:
                gens.append(x)
                covered = self.closure(gens)
        return tuple(gens)

    def left_cancellation_witness(self) -> tuple[int, int, int] | None:
        """Return ``(a, b, c)`` with ``ab = ac`` and ``b != c``, or None."""
        for a in range(self.n):
            seen: dict[int, int] = {}
            for b in range(self.n):
                ab = self.mul[a][b]
                if ab in seen:
                    return a, seen[ab], b
                seen[ab] = b
        return None


@dataclass(frozen=True)
class Congruence:
    """A monoid congruence stored as a class lookup map.

    Class ids are numbered by the smallest member, so the class of the identity
    and the ordering of classes are stable.
    """

    monoid: FinMonoid
    class_of: tuple[int, ...]

    @property
    def classes(self) -> tuple[frozenset[int], ...]:
        buckets: dict[int, set[int]] = {}
        for x, c in enumerate(self.class_of):
            buckets.setdefault(c, set()).add(x)
        return tuple(frozenset(buckets[c]) for c in sorted(buckets))

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def compatibility_witness(self) -> dict[str, Any] | None:
        """Find ``a ≡ b`` and ``c`` with ``ca`` or ``ac`` separated from ``cb`` or ``bc``."""
        m = self.monoid.mul
        for a, b, c in product(self.monoid.elements(), repeat=3):
            if not self.same(a, b):
                continue
            if not (self.same(m[c][a], m[c][b]) and self.same(m[a][c], m[b][c])):
                return {"a": a, "b": b, "c": c}
        return None

    def quotient(self) -> FinMonoid:
        """The quotient monoid; element ``i`` is the ``i``-th class."""
        reps = [min(cls) for cls in self.classes]
        mul = tuple(
            tuple(self.class_of[self.monoid.mul[x][y]] for y in reps) for x in reps
        )
        return FinMonoid(len(reps), mul, self.class_of[self.monoid.one])


def order_ideal(p: Poset, seed: Iterable[int]) -> frozenset[int]:
    """Downward closure of ``seed`` in ``p``.

    Args:
        p: The ambient poset
        seed: Generating elements

    Returns:
        frozenset[int]: ``{x : x <= q for some q in seed}``

    Raises:
        InputError: If a seed element is out of range
    """
    result: set[int] = set()
    for q in seed:
        _check_index(q, p.n, "order ideal seed")
        result.update(x for x in range(p.n) if p.leq[x][q])
    return frozenset(result)


def ideal_key(ideal: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return len(ideal), tuple(sorted(ideal))


def ideal_semilattice(p: Poset) -> tuple[Semilattice, tuple[frozenset[int], ...]]:
    """All order ideals of ``p`` under intersection.

    Ideals are generated by adding one element whose strict down-set is already
    present. They are indexed by ``(size, sorted members)`` so the empty ideal is
    index 0 and the full set is the last index and the identity.

    Returns:
        tuple: The semilattice and the ideal standing for each index
    """
    strictly_below = [p.below(x) - {x} for x in range(p.n)]
    empty: frozenset[int] = frozenset()
    seen = {empty}
    frontier = [empty]
    while frontier:
        ideal = frontier.pop()
        for x in range(p.n):
            if x not in ideal and strictly_below[x] <= ideal:
                grown = ideal | {x}
                if grown not in seen:
                    seen.add(grown)
                    frontier.append(grown)
    ideals = tuple(sorted(seen, key=ideal_key))
    index = {ideal: i for i, ideal in enumerate(ideals)}
    meet = tuple(tuple(index[a & b] for b in ideals) for a in ideals)
    return Semilattice(len(ideals), meet, index[frozenset(range(p.n))]), ideals


def congruence_closure(m: FinMonoid, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence on ``m`` containing ``pairs``.

    Each merge ``a ≡ b`` is propagated to ``ca ≡ cb`` and ``ac ≡ bc`` for every
    element ``c``; the worklist runs until no merge happens.

    Args:
        m: The monoid
        pairs: Generating pairs of element indices

    Returns:
        Congruence: The generated congruence
    """
    uf: UnionFind[int] = UnionFind(m.elements())
    pending: list[tuple[int, int]] = []
    for a, b in pairs:
        _check_index(a, m.n, "congruence pair")
        _check_index(b, m.n, "congruence pair")
        pending.append((a, b))
    while pending:
        a, b = pending.pop()
        if not uf.union(a, b):
            continue
        for c in m.elements():
            pending.append((m.mul[c][a], m.mul[c][b]))
            pending.append((m.mul[a][c], m.mul[b][c]))
    smallest: dict[int, int] = {}
    for x in m.elements():
        smallest.setdefault(uf.find(x), x)
    order = sorted(smallest.values())
    class_id = {uf.find(x): i for i, x in enumerate(order)}
    return Congruence(m, tuple(class_id[uf.find(x)] for x in m.elements()))


def semilattice_from_poset(p: Poset) -> Semilattice:
    """Realize the pairwise meets of ``p`` as a meet table.

    Raises:
        InputError: If some pair has no greatest lower bound, or there is no top
    """
    tops = [x for x in range(p.n) if all(p.leq[y][x] for y in range(p.n))]
    if not tops:
        raise InputError("not a meet-semilattice: no greatest element")
    meet = [[0] * p.n for _ in range(p.n)]
    for x, y in product(range(p.n), repeat=2):
        lower = [z for z in range(p.n) if p.leq[z][x] and p.leq[z][y]]
        greatest = [z for z in lower if all(p.leq[w][z] for w in lower)]
        if not greatest:
            raise InputError("not a meet-semilattice: missing meet", {"x": x, "y": y})
        meet[x][y] = greatest[0]
    return Semilattice(p.n, tuple(tuple(row) for row in meet), tops[0])
