"""Globalisation of strong, full, order-preserving partial actions.

Pairs ``(t, e)`` of ``T x Y`` are identified by the equivalence generated by
``(mn, e) ≡ (m, n·e)`` whenever ``n·e`` is defined. The classes are preordered
by ``[t, e] ⪯ [t, f]`` for ``e <= f``; collapsing that preorder gives a poset whose
order ideals form the semilattice the partial action globalises into.
"""

from dataclasses import dataclass
from itertools import product

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.actions import (
    ActionTable,
    PartialActionTable,
    check_conditions_AB,
    check_full,
    check_order_preserving,
    check_strong,
)
from app.logic.order_core import (
    BoolTable,
    Poset,
    Semilattice,
    Subsemilattice,
    UnionFind,
    ideal_semilattice,
    order_ideal,
)
from app.models.reports import CheckResult, GlobalizationReport

logger = get_logger(__name__)


@dataclass(frozen=True)
class SigmaQuotient:
    """Classes of ``T x Y`` and the partial order on their collapsed preorder.

    Attributes:
        pa: The partial action the quotient was built from
        equiv_class: ≡-class id of each pair index ``t * |Y| + e``
        preorder: Reflexive-transitive closure of ⪯ on ≡-classes
        tau_class: Class id in the collapsed poset of each pair index
        poset: Partial order on collapsed classes
        representatives: Smallest ``(t, e)`` in each collapsed class
    """

    pa: PartialActionTable
    equiv_class: tuple[int, ...]
    preorder: BoolTable
    tau_class: tuple[int, ...]
    poset: Poset
    representatives: tuple[tuple[int, int], ...]

    @property
    def sigma_count(self) -> int:
        return len(self.preorder)

    @property
    def tau_count(self) -> int:
        return self.poset.n

    def pair(self, t: int, e: int) -> int:
        return t * self.pa.space.n + e

    def equiv(self, t: int, e: int) -> int:
        return self.equiv_class[self.pair(t, e)]

    def cls(self, t: int, e: int) -> int:
        return self.tau_class[self.pair(t, e)]

    def diamond(self, m: int, c: int) -> int:
        """Class of ``(mt, e)`` for the representative ``(t, e)`` of class ``c``."""
        t, e = self.representatives[c]
        return self.cls(self.pa.monoid.mul[m][t], e)

    def members(self, c: int) -> list[tuple[int, int]]:
        ny = self.pa.space.n
        return [divmod(p, ny) for p, cid in enumerate(self.tau_class) if cid == c]


@dataclass(frozen=True)
class GlobalizedAction:
    """The global action of T on the order ideals of the collapsed quotient.

    Attributes:
        sigma: The quotient the ideals are taken in
        space: Semilattice of order ideals under intersection
        ideals: The ideal (set of class ids) standing for each index of ``space``
        embedding: Index in ``space`` of the principal ideal of ``[1, e]``, per ``e``
        action: Total action of T on ``space``
    """

    sigma: SigmaQuotient
    space: Semilattice
    ideals: tuple[frozenset[int], ...]
    embedding: tuple[int, ...]
    action: ActionTable

    def ideal_index(self, ideal: frozenset[int]) -> int:
        return self.ideals.index(ideal)

    def principal(self, c: int) -> int:
        return self.ideal_index(order_ideal(self.sigma.poset, [c]))

    def image(self) -> Subsemilattice:
        return Subsemilattice(self.space, self.embedding)


def _require_globalisable(pa: PartialActionTable) -> None:
    for check in (check_strong(pa), check_full(pa), check_order_preserving(pa)):
        if not check.passed:
            raise InputError(
                f"globalisation needs a strong, full, order-preserving partial action: "
                f"'{check.name}' fails",
                {"axiom": check.name, **(check.witness or {})},
            )


def build_sigma(pa: PartialActionTable) -> SigmaQuotient:
    """Build the quotient of ``T x Y`` and the partial order on its collapsed preorder.

    Args:
        pa: A strong, full, order-preserving partial action

    Returns:
        SigmaQuotient: Classes, preorder and poset

    Raises:
        InputError: If a precondition fails, naming the failing axiom
    """
    _require_globalisable(pa)
    T, Y = pa.monoid, pa.space
    ny = Y.n
    pairs = range(T.n * ny)

    uf: UnionFind[int] = UnionFind(pairs)
    for m, n, e in product(T.elements(), T.elements(), Y.elements()):
        ne = pa.act[n][e]
        if ne is not None:
            uf.union(T.mul[m][n] * ny + e, m * ny + ne)
    first: dict[int, int] = {}
    for p in pairs:
        first.setdefault(uf.find(p), p)
    equiv_id = {root: i for i, root in enumerate(sorted(first, key=first.__getitem__))}
    equiv_class = tuple(equiv_id[uf.find(p)] for p in pairs)
    k = len(equiv_id)

    rel = [[i == j for j in range(k)] for i in range(k)]
    for t, e, f in product(T.elements(), Y.elements(), Y.elements()):
        if Y.leq(e, f):
            rel[equiv_class[t * ny + e]][equiv_class[t * ny + f]] = True
    for w, i, j in product(range(k), repeat=3):
        if rel[i][w] and rel[w][j]:
            rel[i][j] = True

    tau_of_equiv: list[int] = [-1] * k
    tau_reps: list[int] = []
    for i in range(k):
        if tau_of_equiv[i] >= 0:
            continue
        tau_of_equiv[i] = len(tau_reps)
        for j in range(i + 1, k):
            if rel[i][j] and rel[j][i]:
                tau_of_equiv[j] = len(tau_reps)
        tau_reps.append(i)
    tau_class = tuple(tau_of_equiv[c] for c in equiv_class)
    poset = Poset(
        len(tau_reps),
        tuple(tuple(rel[a][b] for b in tau_reps) for a in tau_reps),
    )
    representatives = tuple(
        divmod(min(p for p in pairs if tau_class[p] == c), ny) for c in range(len(tau_reps))
    )
    logger.debug(f"Quotient built: {k} classes, {len(tau_reps)} after collapsing the preorder")
    return SigmaQuotient(
        pa=pa,
        equiv_class=equiv_class,
        preorder=tuple(tuple(row) for row in rel),
        tau_class=tau_class,
        poset=poset,
        representatives=representatives,
    )


def globalize(pa: PartialActionTable, verify: bool = True) -> GlobalizedAction:
    """Globalise a strong, full, order-preserving partial action.

    ``m • I`` is the downward closure of ``{m ⋄ c : c ∈ I}``; the principal-ideal
    formula ``m • (t,e)^ω = (mt,e)^ω`` is only used as a cross-check.

    Args:
        pa: The partial action
        verify: Re-run every globalisation check and raise if one fails

    Returns:
        GlobalizedAction: The ideal semilattice, the embedding and the action

    Raises:
        InputError: If ``pa`` is not globalisable
        RuntimeError: If ``verify`` is set and a check fails
    """
    sigma = build_sigma(pa)
    space, ideals = ideal_semilattice(sigma.poset)
    index = {ideal: i for i, ideal in enumerate(ideals)}
    T = pa.monoid
    act = tuple(
        tuple(
            index[order_ideal(sigma.poset, {sigma.diamond(m, c) for c in ideal})]
            for ideal in ideals
        )
        for m in T.elements()
    )
    embedding = tuple(
        index[order_ideal(sigma.poset, [sigma.cls(T.one, e)])] for e in pa.space.elements()
    )
    g = GlobalizedAction(
        sigma=sigma,
        space=space,
        ideals=ideals,
        embedding=embedding,
        action=ActionTable(T, space, act),
    )
    logger.info(
        f"Globalised: {sigma.sigma_count} classes, {sigma.tau_count} collapsed, "
        f"{space.n} order ideals"
    )
    if verify:
        report = verify_globalisation(g, pa)
        if not report.passed:
            failed = [c.name for c in report.checks if not c.passed]
            raise RuntimeError(f"Globalisation checks failed: {failed}")
    return g


def _first_violation(name: str, cases: list[tuple[bool, dict]]) -> CheckResult:
    for holds, witness in cases:
        if not holds:
            return CheckResult.fail(name, witness, len(cases))
    return CheckResult.ok(name, len(cases))


def verify_globalisation(g: GlobalizedAction, pa: PartialActionTable) -> GlobalizationReport:
    """Exhaustively re-assert every property of the globalisation.

    Args:
        g: Globalisation built from ``pa``
        pa: The partial action

    Returns:
        GlobalizationReport: One check per property, with witnesses on failure
    """
    sigma = g.sigma
    T, Y = pa.monoid, pa.space
    one = T.one
    tpairs = list(product(T.elements(), Y.elements()))
    checks: list[CheckResult] = []

    checks.append(
        _first_violation(
            "points_embed",
            [
                (sigma.equiv(one, e) != sigma.equiv(one, f) or e == f, {"e": e, "f": f})
                for e, f in product(Y.elements(), repeat=2)
            ],
        )
    )

    cases = []
    for (m, e), (n, f) in product(tpairs, repeat=2):
        if sigma.equiv(m, e) == sigma.equiv(n, f):
            cases.append(
                (pa.act[m][e] == pa.act[n][f], {"pair": [m, e], "other": [n, f]})
            )
    checks.append(_first_violation("equivalence_respects_action", cases))

    cases = []
    for m in T.elements():
        for c in range(sigma.tau_count):
            images = {sigma.cls(T.mul[m][t], e) for t, e in sigma.members(c)}
            cases.append((len(images) == 1, {"m": m, "class": c}))
        for c, d in product(range(sigma.tau_count), repeat=2):
            if sigma.poset.leq[c][d]:
                cases.append(
                    (
                        sigma.poset.leq[sigma.diamond(m, c)][sigma.diamond(m, d)],
                        {"m": m, "class": c, "above": d},
                    )
                )
    checks.append(_first_violation("shift_well_defined", cases))

    cases = []
    for (s, x), e in product(tpairs, Y.elements()):
        below = sigma.preorder[sigma.equiv(s, x)][sigma.equiv(one, e)]
        sx = pa.act[s][x]
        cases.append(
            (below == (sx is not None and Y.leq(sx, e)), {"s": s, "g": x, "e": e})
        )
    checks.append(_first_violation("below_point_criterion", cases))

    checks.append(
        _first_violation(
            "point_order_embedding",
            [
                (
                    sigma.preorder[sigma.equiv(one, f)][sigma.equiv(one, e)] == Y.leq(f, e),
                    {"e": e, "f": f},
                )
                for e, f in product(Y.elements(), repeat=2)
            ],
        )
    )

    checks.append(
        _first_violation(
            "collapse_to_point",
            [
                (
                    (sigma.cls(t, e) == sigma.cls(one, f)) == (pa.act[t][e] == f),
                    {"t": t, "e": e, "f": f},
                )
                for (t, e), f in product(tpairs, Y.elements())
            ],
        )
    )

    cases = []
    for (s, x), e in product(tpairs, Y.elements()):
        below = sigma.poset.leq[sigma.cls(s, x)][sigma.cls(one, e)]
        sx = pa.act[s][x]
        cases.append((below == (sx is not None and Y.leq(sx, e)), {"s": s, "g": x, "e": e}))
    point_classes = {sigma.cls(one, e) for e in Y.elements()}
    closure = order_ideal(sigma.poset, point_classes)
    cases.append((closure == point_classes, {"outside": sorted(closure - point_classes)}))
    checks.append(_first_violation("points_form_order_ideal", cases))

    checks.append(
        _first_violation(
            "quotient_point_embedding",
            [
                (
                    sigma.poset.leq[sigma.cls(one, e)][sigma.cls(one, f)] == Y.leq(e, f)
                    and (sigma.cls(one, e) != sigma.cls(one, f) or e == f),
                    {"e": e, "f": f},
                )
                for e, f in product(Y.elements(), repeat=2)
            ],
        )
    )

    kappa = g.embedding
    cases = []
    for e, f in product(Y.elements(), repeat=2):
        cases.append(
            (
                g.space.meet[kappa[e]][kappa[f]] == kappa[Y.meet[e][f]]
                and (kappa[e] != kappa[f] or e == f)
                and g.space.leq(kappa[e], kappa[f]) == Y.leq(e, f),
                {"e": e, "f": f},
            )
        )
    checks.append(_first_violation("embedding_preserves_meets", cases))

    cases = []
    for m, (t, e) in product(T.elements(), tpairs):
        got = g.action.act[m][g.principal(sigma.cls(t, e))]
        want = g.principal(sigma.cls(T.mul[m][t], e))
        cases.append((got == want, {"m": m, "t": t, "e": e, "got": got, "expected": want}))
    checks.append(_first_violation("principal_ideal_action", cases))

    image = set(kappa)
    cases = []
    for t, e in tpairs:
        moved = g.action.act[t][kappa[e]]
        te = pa.act[t][e]
        holds = (te is not None) == (moved in image) and (te is None or kappa[te] == moved)
        cases.append((holds, {"t": t, "e": e}))
    checks.append(_first_violation("globalisation_law", cases))

    try:
        checks.extend(check_conditions_AB(g.action, g.image()))
    except InputError as exc:
        checks.append(CheckResult.fail("condition_a", exc.witness or {}, detail=str(exc)))

    report = GlobalizationReport(
        sigma_classes=sigma.sigma_count,
        tau_classes=sigma.tau_count,
        space_size=g.space.n,
        classes=[list(rep) for rep in sigma.representatives],
        ideals=[sorted(ideal) for ideal in g.ideals],
        embedding=list(kappa),
        action=[list(row) for row in g.action.act],
        checks=checks,
    )
    for check in checks:
        logger.debug(f"{check.name}: {'PASS' if check.passed else 'FAIL'}")
    return report
