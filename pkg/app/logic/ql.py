"""The biunary submonoid 𝒬ℓ(T, X, Y) of 𝒫ℓ(T, X).

𝒬ℓ is generated by the atoms ``te`` with ``e ∈ Y`` and ``t·e ∈ Y``, for a
subsemilattice Y satisfying conditions (A) and (B). It is never materialized:
membership is read off the canonical form.
"""

from dataclasses import dataclass

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.actions import check_conditions_AB
from app.logic.laws import BiunaryTable, table_from_structure
from app.logic.order_core import Subsemilattice
from app.logic.pl import (
    Atom,
    PlContext,
    PlElement,
    atom_element,
    c_T,
    canonical_forms,
    from_h_canonical,
    mul,
    plus,
    star,
    to_h_canonical,
)
from app.models.reports import CheckResult

logger = get_logger(__name__)


@dataclass(frozen=True)
class QlContext:
    """A 𝒫ℓ context together with a subsemilattice Y satisfying (A) and (B)."""

    pl: PlContext
    ysub: Subsemilattice

    def __post_init__(self) -> None:
        if self.ysub.space != self.pl.X:
            raise InputError("Y must be a subsemilattice of the acted-on semilattice")
        for check in check_conditions_AB(self.pl.act, self.ysub):
            if not check.passed:
                raise InputError(f"Y violates {check.name}", check.witness)

    def identity(self) -> PlElement:
        return self.pl.projection(self.ysub.top)

    def is_q_atom(self, h: Atom) -> bool:
        return h.e in self.ysub and self.pl.atom_plus(h) in self.ysub

    def q_atoms(self) -> list[Atom]:
        return [h for h in self.pl.atoms() if self.is_q_atom(h)]


def q_membership(qctx: QlContext, a: PlElement) -> CheckResult:
    """Decide membership: every atom of the canonical form must be a Q-atom.

    Returns:
        CheckResult: PASS, or FAIL naming the first atom outside 𝒬ℓ
    """
    form = to_h_canonical(qctx.pl, a)
    for i, h in enumerate(form):
        if not qctx.is_q_atom(h):
            return CheckResult.fail(
                "q_membership", {"element": str(a), "atom": str(h), "index": i}, len(form)
            )
    return CheckResult.ok("q_membership", len(form))


def is_member(qctx: QlContext, a: PlElement) -> bool:
    return q_membership(qctx, a).passed


def _require_member(qctx: QlContext, a: PlElement) -> None:
    verdict = q_membership(qctx, a)
    if not verdict.passed:
        raise InputError(f"{a} is not a member of the submonoid", verdict.witness)


def q_sigma_eq(qctx: QlContext, a: PlElement, b: PlElement) -> bool:
    """σ on 𝒬ℓ, which is the restriction of σ on 𝒫ℓ.

    Raises:
        InputError: If either argument is not a member
    """
    _require_member(qctx, a)
    _require_member(qctx, b)
    return c_T(qctx.pl, a) == c_T(qctx.pl, b)


def q_normalize_sigma_rep(qctx: QlContext, a: PlElement) -> Atom:
    """A Q-atom σ-related to ``a``.

    Walking the canonical form from the right, the T-part accumulates the
    product of the atoms seen so far and the X-part is met with the first
    ``f ∈ Y`` that the new product sends into Y; every suffix product then maps
    the X-part into Y.

    Raises:
        InputError: If ``a`` is not a member
    """
    _require_member(qctx, a)
    T, X, act = qctx.pl.T, qctx.pl.X, qctx.pl.act.act
    atoms = to_h_canonical(qctx.pl, a).atoms
    w, e = atoms[-1].t, atoms[-1].e
    for h in reversed(atoms[:-1]):
        w = T.mul[h.t][w]
        f = next(g for g in qctx.ysub.elements if act[w][g] in qctx.ysub)
        e = X.meet[e][f]
    rep = Atom(w, e)
    if not qctx.is_q_atom(rep):
        raise RuntimeError(f"σ representative {rep} of {a} left the submonoid")
    return rep


class QlStructure:
    """Bounded enumeration of 𝒬ℓ(T, X, Y) seen as a biunary monoid."""

    def __init__(self, qctx: QlContext, bound: int, name: str = "ql") -> None:
        self.qctx = qctx
        self.bound = bound
        self.name = name
        self._elements = [
            from_h_canonical(qctx.pl, form)
            for form in canonical_forms(qctx.pl, bound, qctx.q_atoms())
        ]

    def elements(self) -> list[PlElement]:
        return self._elements

    def identity(self) -> PlElement:
        return self.qctx.identity()

    def projections(self) -> list[PlElement]:
        return [self.qctx.pl.projection(y) for y in self.qctx.ysub.elements]

    def mul(self, a: PlElement, b: PlElement) -> PlElement:
        return mul(self.qctx.pl, a, b)

    def plus(self, a: PlElement) -> PlElement:
        return plus(self.qctx.pl, a)

    def star(self, a: PlElement) -> PlElement:
        return star(self.qctx.pl, a)

    def sigma_key(self, a: PlElement) -> int:
        return c_T(self.qctx.pl, a)

    def render(self, a: PlElement) -> str:
        return str(a)

    def atoms(self) -> list[PlElement]:
        return [atom_element(self.qctx.pl, h) for h in self.qctx.q_atoms()]

    def is_atom(self, a: PlElement) -> bool:
        form = to_h_canonical(self.qctx.pl, a)
        return len(form) == 1 and self.qctx.is_q_atom(form.atoms[0])


def ql_table(qctx: QlContext, bound: int) -> tuple[BiunaryTable, list[PlElement]]:
    """Materialize 𝒬ℓ(T, X, Y) as a Cayley table when it is finite."""
    return table_from_structure(QlStructure(qctx, bound), name=f"ql[{bound}]")
