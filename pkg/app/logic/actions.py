"""Total and partial actions of a finite monoid on a finite semilattice."""

from dataclasses import dataclass
from itertools import product
from typing import Any

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.order_core import FinMonoid, Semilattice, Subsemilattice, Table, order_ideal
from app.models.reports import CheckResult, LawReport

logger = get_logger(__name__)

PartialTable = tuple[tuple[int | None, ...], ...]


def _shape(rows: Any, monoid: FinMonoid, space: Semilattice, allow_undefined: bool) -> None:
    if len(rows) != monoid.n or any(len(row) != space.n for row in rows):
        raise InputError(f"action table must be {monoid.n}x{space.n}")
    for t, row in enumerate(rows):
        for x, value in enumerate(row):
            if value is None and allow_undefined:
                continue
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < space.n:
                raise InputError(
                    f"action table entry out of range at ({t}, {x})",
                    {"t": t, "x": x, "value": value},
                )


@dataclass(frozen=True)
class ActionTable:
    """A total order-preserving left action ``act[t][x] = t·x``."""

    monoid: FinMonoid
    space: Semilattice
    act: Table

    def __post_init__(self) -> None:
        _shape(self.act, self.monoid, self.space, allow_undefined=False)
        object.__setattr__(self, "act", tuple(tuple(row) for row in self.act))
        T, X, act = self.monoid, self.space, self.act
        for x in X.elements():
            if act[T.one][x] != x:
                raise InputError("action: identity does not act trivially", {"x": x})
        for s, t, x in product(T.elements(), T.elements(), X.elements()):
            if act[s][act[t][x]] != act[T.mul[s][t]][x]:
                raise InputError("action: s·(t·x) != st·x", {"s": s, "t": t, "x": x})
        for t, x, y in product(T.elements(), X.elements(), X.elements()):
            if X.leq(x, y) and not X.leq(act[t][x], act[t][y]):
                raise InputError("action: not order-preserving", {"t": t, "x": x, "y": y})

    @classmethod
    def unchecked(cls, monoid: FinMonoid, space: Semilattice, act: Table) -> "ActionTable":
        """Build without validation, for deliberately corrupted tables."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "monoid", monoid)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "act", tuple(tuple(row) for row in act))
        return obj

    def __call__(self, t: int, x: int) -> int:
        return self.act[t][x]

    def as_partial(self) -> "PartialActionTable":
        return PartialActionTable(self.monoid, self.space, self.act)


@dataclass(frozen=True)
class PartialActionTable:
    """A partial left action; ``act[t][x]`` is None where ``t·x`` is undefined.

    Construction enforces the unit law and the partial-action law. Strongness,
    fullness and order-preservation are properties checked separately.
    """

    monoid: FinMonoid
    space: Semilattice
    act: PartialTable

    def __post_init__(self) -> None:
        _shape(self.act, self.monoid, self.space, allow_undefined=True)
        object.__setattr__(self, "act", tuple(tuple(row) for row in self.act))
        T, X, act = self.monoid, self.space, self.act
        for x in X.elements():
            if act[T.one][x] != x:
                raise InputError("partial action: 1·x must be defined and equal x", {"x": x})
        for s, t, x in product(T.elements(), T.elements(), X.elements()):
            tx = act[t][x]
            if tx is None or act[s][tx] is None:
                continue
            if act[T.mul[s][t]][x] != act[s][tx]:
                raise InputError(
                    "partial action: s·(t·x) defined but st·x differs or is undefined",
                    {"s": s, "t": t, "x": x},
                )

    @classmethod
    def unchecked(
        cls, monoid: FinMonoid, space: Semilattice, act: PartialTable
    ) -> "PartialActionTable":
        obj = object.__new__(cls)
        object.__setattr__(obj, "monoid", monoid)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "act", tuple(tuple(row) for row in act))
        return obj

    def defined(self, t: int, x: int) -> bool:
        return self.act[t][x] is not None

    def domain(self, t: int) -> frozenset[int]:
        return frozenset(x for x in self.space.elements() if self.act[t][x] is not None)

    def is_total(self) -> bool:
        return all(v is not None for row in self.act for v in row)


def check_strong(pa: PartialActionTable) -> CheckResult:
    """Strongness: ``∃t·x`` and ``∃st·x`` imply ``∃s·(t·x)``.

    Returns:
        CheckResult: PASS, or FAIL with the violating ``(s, t, x)``
    """
    T, act = pa.monoid, pa.act
    evaluated = 0
    for s, t, x in product(T.elements(), T.elements(), pa.space.elements()):
        tx = act[t][x]
        if tx is None or act[T.mul[s][t]][x] is None:
            continue
        evaluated += 1
        if act[s][tx] is None:
            return CheckResult.fail("strong", {"s": s, "t": t, "x": x}, evaluated)
    return CheckResult.ok("strong", evaluated)


def check_full(pa: PartialActionTable) -> CheckResult:
    """Fullness: every ``t`` acts on at least one point."""
    for t in pa.monoid.elements():
        if not pa.domain(t):
            return CheckResult.fail("full", {"t": t}, pa.monoid.n)
    return CheckResult.ok("full", pa.monoid.n)


def check_order_preserving(pa: PartialActionTable) -> CheckResult:
    """Domains are order ideals and ``x <= y`` gives ``t·x <= t·y`` where defined."""
    X, act = pa.space, pa.act
    poset = X.poset()
    evaluated = 0
    for t in pa.monoid.elements():
        dom = pa.domain(t)
        if order_ideal(poset, dom) != dom:
            x, y = next(
                (x, y) for y in sorted(dom) for x in X.elements() if X.leq(x, y) and x not in dom
            )
            return CheckResult.fail(
                "order_preserving",
                {"t": t, "x": x, "y": y, "reason": "domain not downward closed"},
                evaluated,
            )
        for x, y in product(sorted(dom), repeat=2):
            evaluated += 1
            tx, ty = act[t][x], act[t][y]
            if X.leq(x, y) and tx is not None and ty is not None and not X.leq(tx, ty):
                return CheckResult.fail("order_preserving", {"t": t, "x": x, "y": y}, evaluated)
    return CheckResult.ok("order_preserving", evaluated)


def check_conditions_AB(a: ActionTable, ysub: Subsemilattice) -> list[CheckResult]:
    """Conditions (A) and (B) for a subsemilattice of the acted-on space.

    (A): ``e <= f`` and ``t·f ∈ Y`` imply ``t·e ∈ Y`` for ``e, f ∈ Y``.
    (B): every ``t`` sends some ``g ∈ Y`` into ``Y``.

    Args:
        a: Total action of T on X
        ysub: Meet-closed subset of X with a greatest element

    Returns:
        list[CheckResult]: ``condition_a`` then ``condition_b``

    Raises:
        InputError: If ``ysub`` lives in a different semilattice
    """
    if ysub.space != a.space:
        raise InputError("subsemilattice does not live in the acted-on semilattice")
    X = a.space
    members = set(ysub.elements)
    evaluated = 0
    for t, e, f in product(a.monoid.elements(), ysub.elements, ysub.elements):
        if not X.leq(e, f):
            continue
        evaluated += 1
        if a.act[t][f] in members and a.act[t][e] not in members:
            result_a = CheckResult.fail("condition_a", {"t": t, "e": e, "f": f}, evaluated)
            break
    else:
        result_a = CheckResult.ok("condition_a", evaluated)
    result_b = CheckResult.ok("condition_b", a.monoid.n)
    for t in a.monoid.elements():
        if not any(a.act[t][g] in members for g in ysub.elements):
            result_b = CheckResult.fail("condition_b", {"t": t}, a.monoid.n)
            break
    return [result_a, result_b]


def restrict_action(a: ActionTable, ysub: Subsemilattice) -> PartialActionTable:
    """Restrict a total action to ``Y``: ``t·y`` is defined iff it lands in ``Y``.

    The result acts on ``ysub.to_semilattice()``, whose index ``i`` stands for
    ``ysub.elements[i]``.
    """
    index = {x: i for i, x in enumerate(ysub.elements)}
    act = tuple(
        tuple(index.get(a.act[t][y]) for y in ysub.elements) for t in a.monoid.elements()
    )
    return PartialActionTable(a.monoid, ysub.to_semilattice(), act)


def check_action(
    pa: PartialActionTable,
    *,
    strong: bool = True,
    full: bool = True,
    order: bool = True,
    total: ActionTable | None = None,
    ysub: Subsemilattice | None = None,
    name: str = "action",
) -> LawReport:
    """Run the requested action checks and collect them into one report."""
    checks: list[CheckResult] = []
    if strong:
        checks.append(check_strong(pa))
    if full:
        checks.append(check_full(pa))
    if order:
        checks.append(check_order_preserving(pa))
    if ysub is not None:
        if total is None:
            raise InputError("conditions (A)/(B) need a total action")
        checks.extend(check_conditions_AB(total, ysub))
    report = LawReport(suite="action", structure=name, checks=checks)
    logger.info(f"Action checks on {name}: {'PASS' if report.passed else 'FAIL'}")
    return report
