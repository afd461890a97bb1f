"""Worked structures used as test data and exposed through ``fixtures emit``.

Instance families (chains, small monoids, every order-preserving action between
them), the subset expansion of a finite group, the binary-relation monoid, and
bounded slices of the word expansions: the free left ample monoid and the
finite-subset expansion of a free monoid.
"""

import string
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, product
from typing import Literal

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.actions import ActionTable, PartialActionTable, check_conditions_AB, restrict_action
from app.logic.laws import AtomSet, BiunaryTable
from app.logic.order_core import FinMonoid, Semilattice, Subsemilattice
from app.logic.pl import Atom, PlContext, PlElement, PlStructure
from app.logic.ql import QlContext

logger = get_logger(__name__)

DEFAULT_ALPHABET = "xyz" + string.ascii_lowercase[:23]


def chain(n: int) -> Semilattice:
    """The chain ``0 < 1 < … < n-1``; the top ``n-1`` is the identity."""
    if n < 1:
        raise InputError("a chain needs at least one element")
    return Semilattice(n, tuple(tuple(min(x, y) for y in range(n)) for x in range(n)), n - 1)


def diamond() -> Semilattice:
    """The four-element lattice ``0 < a, b < 1`` with indices 0=0, 1=a, 2=b, 3=1."""
    meet = (
        (0, 0, 0, 0),
        (0, 1, 0, 1),
        (0, 0, 2, 2),
        (0, 1, 2, 3),
    )
    return Semilattice(4, meet, 3)


def cyclic_monoid(index: int, period: int, symbol: str = "a") -> FinMonoid:
    """The monogenic monoid ``⟨a | a^(index+period) = a^index⟩``.

    Element ``k`` stands for ``a^k``; ``(0, p)`` is the cyclic group of order p.
    """
    if index < 0 or period < 1:
        raise InputError("cyclic monoid needs index >= 0 and period >= 1")
    n = index + period

    def power(k: int) -> int:
        return k if k < n else index + (k - index) % period

    labels = tuple("1" if k == 0 else symbol if k == 1 else f"{symbol}^{k}" for k in range(n))
    mul = tuple(tuple(power(i + j) for j in range(n)) for i in range(n))
    return FinMonoid(n, mul, 0, labels)


def cyclic_group(order: int) -> FinMonoid:
    return cyclic_monoid(0, order)


def left_zero_monoid(k: int) -> FinMonoid:
    """``k`` left zeros ``z1..zk`` with an adjoined identity ``0``."""
    n = k + 1
    mul = tuple(tuple(y if x == 0 else x for y in range(n)) for x in range(n))
    return FinMonoid(n, mul, 0, ("1",) + tuple(f"z{i}" for i in range(1, n)))


def trivial_monoid() -> FinMonoid:
    return FinMonoid(1, ((0,),), 0, ("1",))


def order_preserving_maps(X: Semilattice) -> list[tuple[int, ...]]:
    """Every monotone self-map of ``X``, as its table of values."""
    return [
        f
        for f in product(X.elements(), repeat=X.n)
        if all(X.leq(f[x], f[y]) for x in X.elements() for y in X.elements() if X.leq(x, y))
    ]


def enumerate_actions(
    T: FinMonoid, X: Semilattice, limit: int | None = None
) -> Iterator[ActionTable]:
    """Every total order-preserving action of ``T`` on ``X``.

    Monotone maps are assigned to a generating set of ``T`` and extended along
    right multiplication by generators; inconsistent assignments are dropped.
    """
    gens = T.generators()
    maps = order_preserving_maps(X)
    identity = tuple(X.elements())
    produced = 0
    for choice in product(maps, repeat=len(gens)):
        table: dict[int, tuple[int, ...]] = {T.one: identity}
        frontier = [T.one]
        consistent = True
        while frontier and consistent:
            w = frontier.pop()
            for g, f in zip(gens, choice, strict=True):
                wg = T.mul[w][g]
                composed = tuple(table[w][f[x]] for x in X.elements())
                if wg not in table:
                    table[wg] = composed
                    frontier.append(wg)
                elif table[wg] != composed:
                    consistent = False
                    break
        if not consistent or len(table) != T.n:
            continue
        try:
            action = ActionTable(T, X, tuple(table[t] for t in T.elements()))
        except InputError:
            continue
        yield action
        produced += 1
        if limit is not None and produced >= limit:
            return


def subsemilattices(X: Semilattice) -> list[Subsemilattice]:
    """Every nonempty meet-closed subset of ``X`` with a greatest element."""
    found: list[Subsemilattice] = []
    for size in range(1, X.n + 1):
        for subset in combinations(X.elements(), size):
            members = set(subset)
            if any(X.meet[x][y] not in members for x in subset for y in subset):
                continue
            if not any(all(X.leq(y, x) for y in subset) for x in subset):
                continue
            found.append(Subsemilattice(X, subset))
    return found


def small_monoids() -> list[FinMonoid]:
    """The monoids of the instance family, all of order at most 4."""
    return [
        trivial_monoid(),
        cyclic_monoid(1, 1, "t"),
        cyclic_group(2),
        cyclic_monoid(2, 1),
        cyclic_monoid(1, 2),
        left_zero_monoid(2),
        cyclic_group(3),
        left_zero_monoid(3),
    ]


def small_spaces() -> list[Semilattice]:
    return [chain(1), chain(2), chain(3), diamond()]


def ql_instances(
    monoids: Sequence[FinMonoid] | None = None,
    spaces: Sequence[Semilattice] | None = None,
    limit: int | None = None,
) -> Iterator[QlContext]:
    """Every (action, Y) pair over the family for which Y satisfies (A) and (B)."""
    produced = 0
    for T in monoids if monoids is not None else small_monoids():
        for X in spaces if spaces is not None else small_spaces():
            for action in enumerate_actions(T, X):
                ctx = PlContext(action)
                for ysub in subsemilattices(X):
                    if not all(check.passed for check in check_conditions_AB(action, ysub)):
                        continue
                    yield QlContext(ctx, ysub)
                    produced += 1
                    if limit is not None and produced >= limit:
                        return


def partial_action_instances(
    monoids: Sequence[FinMonoid] | None = None,
    spaces: Sequence[Semilattice] | None = None,
    limit: int | None = None,
) -> Iterator[PartialActionTable]:
    """Strong, full, order-preserving partial actions.

    Each is the restriction of a total action to a subsemilattice satisfying
    (A) and (B); the subsemilattice keeps at most four elements.
    """
    produced = 0
    for qctx in ql_instances(monoids, spaces):
        if len(qctx.ysub) > 4:
            continue
        yield restrict_action(qctx.pl.act, qctx.ysub)
        produced += 1
        if limit is not None and produced >= limit:
            return


def f1_context() -> PlContext:
    """T = {1, t} with t² = t acting on the chain e < 1 by ``t·x = e``."""
    T = cyclic_monoid(1, 1, "t")
    return PlContext(ActionTable(T, chain(2), ((0, 1), (0, 0))))


def diamond_context() -> PlContext:
    """T = {1, t} with t² = t acting on the diamond by ``t·x = x ∧ a``."""
    T = cyclic_monoid(1, 1, "t")
    X = diamond()
    below_a = tuple(X.meet[x][1] for x in X.elements())
    return PlContext(ActionTable(T, X, (tuple(X.elements()), below_a)))


def non_strong_basis(bound: int = 3) -> tuple[PlStructure, AtomSet[PlElement]]:
    """Atoms of 𝒫ℓ over T = {1 > s > t} acting trivially on ``e < 1``, missing ``s·1``.

    The only atom σ-related to ``s`` has star ``e``, so the induced partial
    action defines ``t·1`` but not ``s·1``; (H5) fails for the same reason.
    """
    T = FinMonoid(3, ((0, 1, 2), (1, 1, 2), (2, 2, 2)), 0, ("1", "s", "t"))
    ctx = PlContext(ActionTable(T, chain(2), ((0, 1), (0, 1), (0, 1))))
    atoms = [Atom(0, 1), Atom(0, 0), Atom(1, 0), Atom(2, 1), Atom(2, 0)]
    structure = PlStructure(ctx, bound, name="non-strong", atoms=atoms)
    return structure, AtomSet(tuple(structure.atoms()), structure.is_atom)


def _mask_label(mask: int, labels: Sequence[str]) -> str:
    return "{" + ",".join(labels[i] for i in range(len(labels)) if mask >> i & 1) + "}"


def build_subset_expansion(M: FinMonoid) -> BiunaryTable:
    """The subset expansion: pairs ``(A, a)`` with ``A ⊆ M``.

    ``(A,a)(B,b) = (A ∪ aB, ab)``, ``(A,a)⁺ = (A,1)`` and ``(A,a)* = (a⁻¹A, 1)``.
    Element ``(A, a)`` has index ``mask(A) * |M| + a``.

    Raises:
        InputError: If ``M`` is not left cancellative
    """
    witness = M.left_cancellation_witness()
    if witness is not None:
        a, b, c = witness
        raise InputError("monoid is not left cancellative", {"a": a, "b": b, "c": c})
    n = M.n

    def translate(a: int, mask: int) -> int:
        return sum(1 << M.mul[a][b] for b in range(n) if mask >> b & 1)

    def pullback(a: int, mask: int) -> int:
        return sum(1 << c for c in range(n) if mask >> M.mul[a][c] & 1)

    size = (1 << n) * n
    mul = tuple(
        tuple(
            ((x // n) | translate(x % n, y // n)) * n + M.mul[x % n][y % n] for y in range(size)
        )
        for x in range(size)
    )
    plus_map = tuple((x // n) * n + M.one for x in range(size))
    star_map = tuple(pullback(x % n, x // n) * n + M.one for x in range(size))
    names = [M.label(i) for i in range(n)]
    labels = tuple(f"({_mask_label(x // n, names)},{M.label(x % n)})" for x in range(size))
    core = FinMonoid(size, mul, M.one, labels)
    logger.debug(f"Subset expansion of a monoid of order {n}: {size} elements")
    return BiunaryTable(core, plus_map, star_map, name=f"subset-expansion[{n}]")


def build_relation_monoid(n: int = 2) -> BiunaryTable:
    """Binary relations on ``{0..n-1}`` under composition.

    ``ρ⁺`` is the identity restricted to the domain of ``ρ`` and ``ρ*`` the
    identity restricted to its image; relation ``ρ`` is the bitmask with bit
    ``i*n + j`` set iff ``(i, j) ∈ ρ``.
    """
    if not 1 <= n <= 3:
        raise InputError("relation monoid is built for 1 <= n <= 3")
    pairs = [(i, j) for i in range(n) for j in range(n)]
    size = 1 << len(pairs)

    def members(mask: int) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(pairs) if mask >> k & 1]

    def encode(rel: set[tuple[int, int]]) -> int:
        return sum(1 << (i * n + j) for i, j in rel)

    def compose(x: int, y: int) -> int:
        right = members(y)
        return encode({(i, k) for i, j in members(x) for j2, k in right if j == j2})

    def diagonal(points: set[int]) -> int:
        return encode({(i, i) for i in points})

    mul = tuple(tuple(compose(x, y) for y in range(size)) for x in range(size))
    plus_map = tuple(diagonal({i for i, _ in members(x)}) for x in range(size))
    star_map = tuple(diagonal({j for _, j in members(x)}) for x in range(size))
    labels = tuple(
        "{" + ",".join(f"{i}{j}" for i, j in members(x)) + "}" for x in range(size)
    )
    core = FinMonoid(size, mul, diagonal(set(range(n))), labels)
    return BiunaryTable(core, plus_map, star_map, name=f"relations[{n}]")


@dataclass(frozen=True, slots=True)
class SubsetElement:
    """A pair ``(A, a)`` of a finite set of words and a word; the empty word renders as 1."""

    A: frozenset[str]
    a: str

    def __str__(self) -> str:
        words = ",".join(w or "1" for w in sorted(self.A, key=lambda w: (len(w), w)))
        return f"({{{words}}},{self.a or '1'})"


def prefixes(word: str) -> frozenset[str]:
    return frozenset(word[:i] for i in range(len(word) + 1))


def _words(alphabet: str, bound: int) -> list[str]:
    return ["".join(w) for n in range(bound + 1) for w in product(alphabet, repeat=n)]


def _prefix_closed_sets(alphabet: str, bound: int) -> list[frozenset[str]]:
    def grow(word: str) -> list[frozenset[str]]:
        options = [frozenset({word})]
        if len(word) == bound:
            return options
        for letter in alphabet:
            branches: list[frozenset[str]] = [frozenset()]
            branches += grow(word + letter)
            options = [o | b for o in options for b in branches]
        return options

    return sorted(grow(""), key=lambda s: (len(s), sorted(s, key=lambda w: (len(w), w))))


class WordExpansion:
    """Bounded slice of an expansion of the free monoid on ``alphabet``.

    ``kind="fla"`` gives the free left ample monoid: ``A`` prefix closed with
    ``a ∈ A``. ``kind="free"`` gives the finite-subset expansion: any finite
    ``A``. Only words of length at most ``bound`` occur in the enumeration;
    the operations themselves are unbounded.
    """

    def __init__(self, kind: Literal["fla", "free"], alphabet: str, bound: int) -> None:
        if not alphabet or len(set(alphabet)) != len(alphabet):
            raise InputError("alphabet must be nonempty without repeated letters")
        if bound < 1:
            raise InputError("bound must be at least 1")
        self.kind = kind
        self.alphabet = alphabet
        self.bound = bound
        self.name = f"{kind}[{alphabet},{bound}]"
        if kind == "fla":
            self._elements = [
                SubsetElement(A, a)
                for A in _prefix_closed_sets(alphabet, bound)
                for a in sorted(A, key=lambda w: (len(w), w))
            ]
        else:
            words = _words(alphabet, bound)
            subsets = [
                frozenset(c) for size in range(len(words) + 1) for c in combinations(words, size)
            ]
            self._elements = [SubsetElement(A, a) for a in words for A in subsets]
        logger.debug(f"{self.name}: {len(self._elements)} elements")

    def elements(self) -> list[SubsetElement]:
        return self._elements

    def identity(self) -> SubsetElement:
        return SubsetElement(frozenset({""}) if self.kind == "fla" else frozenset(), "")

    def projections(self) -> list[SubsetElement]:
        return [x for x in self._elements if x.a == ""]

    def mul(self, x: SubsetElement, y: SubsetElement) -> SubsetElement:
        return SubsetElement(x.A | {x.a + w for w in y.A}, x.a + y.a)

    def plus(self, x: SubsetElement) -> SubsetElement:
        return SubsetElement(x.A, "")

    def star(self, x: SubsetElement) -> SubsetElement:
        k = len(x.a)
        return SubsetElement(frozenset(w[k:] for w in x.A if w.startswith(x.a)), "")

    def sigma_key(self, x: SubsetElement) -> str:
        return x.a

    def render(self, x: SubsetElement) -> str:
        return str(x)

    def is_atom(self, x: SubsetElement) -> bool:
        """For the free left ample monoid: ``A = a↓ ∪ aB`` for a prefix-closed ``B``."""
        if self.kind == "free":
            return True
        return x.a in x.A and all(x.a.startswith(w) or w.startswith(x.a) for w in x.A)

    def atoms(self) -> list[SubsetElement]:
        return [x for x in self._elements if self.is_atom(x)]

    def atom(self, a: str, B: frozenset[str] = frozenset({""})) -> SubsetElement:
        """The atom ``(a↓ ∪ aB, a)``."""
        return SubsetElement(prefixes(a) | {a + w for w in B}, a)

    def atom_set(self) -> AtomSet[SubsetElement]:
        return AtomSet(tuple(self.atoms()), self.is_atom)


def build_fla(k: int, bound: int, alphabet: str | None = None) -> WordExpansion:
    """The free left ample monoid on ``k`` letters, with words up to ``bound``."""
    if k < 1:
        raise InputError("alphabet size must be at least 1")
    letters = alphabet if alphabet is not None else DEFAULT_ALPHABET[:k]
    if len(letters) != k:
        raise InputError(f"alphabet '{letters}' does not have {k} letters")
    return WordExpansion("fla", letters, bound)


def build_free_subset_expansion(alphabet: str = "x", bound: int = 3) -> WordExpansion:
    """Finite subsets paired with words of the free monoid; every element is an atom."""
    return WordExpansion("free", alphabet, bound)


SUBSET_EXPANSION_GROUPS: dict[str, Callable[[], FinMonoid]] = {
    "trivial": trivial_monoid,
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
}
