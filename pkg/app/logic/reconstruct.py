"""Rebuild a monoid with a proper basis as a 𝒬ℓ and verify the isomorphism.

The input Q comes with a distinguished subset H. Its quotient by σ is the
monoid T; T acts partially on the projections by ``[m]·e = (h e)⁺`` for any
``h ∈ H`` σ-related to ``m`` with ``e <= h*``. That partial action is
globalised, the corresponding 𝒬ℓ is built, and the map θ sending ``h`` to the
atom ``[h] κ(h*)`` is extended along canonical forms and checked.
"""

import random
from collections import Counter
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Generic, TypeVar

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.actions import PartialActionTable, check_action
from app.logic.globalization import GlobalizedAction, globalize, verify_globalisation
from app.logic.laws import (
    AtomSet,
    BiunaryStructure,
    BiunaryTable,
    CanonicalStep,
    canonical_factorizations,
    canonicalize,
    check_atomic,
    check_basis,
    check_proper,
)
from app.logic.order_core import FinMonoid, Semilattice
from app.logic.pl import (
    Atom,
    PlContext,
    PlElement,
    canonical_forms,
    from_h_canonical,
    to_h_canonical,
)
from app.logic.pl import mul as pl_mul
from app.logic.pl import plus as pl_plus
from app.logic.pl import star as pl_star
from app.logic.ql import QlContext, QlStructure
from app.models.reports import CheckResult, InducedActionReport, IsoReport
from app.utils.constants import (
    DEFAULT_BOUND,
    DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_SEED,
)

logger = get_logger(__name__)

E = TypeVar("E", bound=Hashable)


@dataclass(frozen=True)
class AbstractQ(Generic[E]):
    """A biunary monoid with a distinguished subset H and a length bound.

    For a finite table the bound caps the canonical forms searched; for a
    bounded enumeration it is the certificate the report is stated up to.
    """

    structure: BiunaryStructure[E]
    atoms: AtomSet[E]
    bound: int = DEFAULT_BOUND

    @classmethod
    def from_table(
        cls, table: BiunaryTable, atoms: Sequence[int] | None = None, bound: int = DEFAULT_BOUND
    ) -> "AbstractQ[int]":
        """Wrap a table; H defaults to every element."""
        members = list(atoms) if atoms is not None else table.elements()
        for h in members:
            if not 0 <= h < table.core.n:
                raise InputError(f"atom {h} is not an element of {table.name}", {"atom": h})
        return AbstractQ(table, AtomSet.of(members), bound)

    @classmethod
    def from_ql(cls, qctx: QlContext, bound: int = DEFAULT_BOUND) -> "AbstractQ[PlElement]":
        structure = QlStructure(qctx, bound)
        return AbstractQ(structure, AtomSet(tuple(structure.atoms()), structure.is_atom), bound)


@dataclass(frozen=True)
class QuotientT:
    """The monoid Q/σ, one class per σ-key met by H.

    Class 0 is the class of the identity.
    """

    monoid: FinMonoid
    keys: tuple[Hashable, ...]
    checks: tuple[CheckResult, ...]
    index: dict[Hashable, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {key: i for i, key in enumerate(self.keys)})

    def class_of(self, key: Hashable) -> int:
        return self.index[key]


def quotient_T(q: AbstractQ[E]) -> QuotientT:
    """Compute T = Q/σ from the σ-keys of the atoms.

    Raises:
        InputError: If a product of atoms lands in a σ-class that H misses
    """
    s = q.structure
    representatives: dict[Hashable, E] = {s.sigma_key(s.identity()): s.identity()}
    for h in q.atoms.members:
        representatives.setdefault(s.sigma_key(h), h)
    keys = tuple(representatives)
    index = {key: i for i, key in enumerate(keys)}
    reps = [representatives[key] for key in keys]

    def class_of(a: E) -> int:
        key = s.sigma_key(a)
        if key not in index:
            raise InputError("σ-class not met by H", {"element": s.render(a)})
        return index[key]

    mul = tuple(tuple(class_of(s.mul(a, b)) for b in reps) for a in reps)
    labels = tuple(f"[{s.render(rep)}]" if i else "1" for i, rep in enumerate(reps))
    monoid = FinMonoid(len(keys), mul, 0, labels)

    compatible: CheckResult | None = None
    count = 0
    for h, k in product(q.atoms.members, repeat=2):
        count += 1
        if class_of(s.mul(h, k)) != mul[class_of(h)][class_of(k)]:
            compatible = CheckResult.fail(
                "quotient_well_defined", {"h": s.render(h), "k": s.render(k)}, count
            )
            break
    projections = list(s.projections())
    stray = next((e for e in projections if class_of(e) != 0), None)
    checks = (
        compatible or CheckResult.ok("quotient_well_defined", count),
        CheckResult.ok("quotient_reduced", len(projections))
        if stray is None
        else CheckResult.fail("quotient_reduced", {"e": s.render(stray)}, len(projections)),
    )
    logger.info(f"Quotient of {s.name} by σ has {monoid.n} elements")
    return QuotientT(monoid, keys, checks)


@dataclass(frozen=True)
class InducedPartialAction(Generic[E]):
    """T = Q/σ acting partially on the semilattice of projections of Q."""

    quotient: QuotientT
    projections: tuple[E, ...]
    space: Semilattice
    action: PartialActionTable
    report: InducedActionReport

    def projection_index(self, e: E) -> int:
        return self.projections.index(e)


def _projection_semilattice(s: BiunaryStructure[E]) -> tuple[tuple[E, ...], Semilattice]:
    projections = tuple(s.projections())
    index = {e: i for i, e in enumerate(projections)}
    try:
        meet = tuple(tuple(index[s.mul(e, f)] for f in projections) for e in projections)
        one = index[s.identity()]
    except KeyError as exc:
        raise InputError(f"projections of {s.name} are not closed under multiplication") from exc
    return projections, Semilattice(len(projections), meet, one)


def induce_partial_action(
    q: AbstractQ[E], quotient: QuotientT | None = None
) -> InducedPartialAction[E]:
    """Build the partial action of Q/σ on E and check it.

    Every atom qualifying for an entry is used to recompute it, so a clash
    between two atoms is detected rather than hidden.

    Raises:
        InputError: If two σ-related atoms give different values, which
            requires H to be improper
    """
    s = q.structure
    quotient = quotient or quotient_T(q)
    projections, space = _projection_semilattice(s)
    index = {e: i for i, e in enumerate(projections)}
    by_class: dict[int, list[E]] = {}
    for h in q.atoms.members:
        by_class.setdefault(quotient.class_of(s.sigma_key(h)), []).append(h)

    rows: list[tuple[int | None, ...]] = []
    for m in quotient.monoid.elements():
        row: list[int | None] = []
        for e in projections:
            value: int | None = None
            source: Any = None
            for h in by_class.get(m, []):
                if s.mul(e, s.star(h)) != e:
                    continue
                image = s.plus(s.mul(h, e))
                if image not in index:
                    raise InputError(
                        "(h e)⁺ is not an enumerated projection",
                        {"h": s.render(h), "e": s.render(e)},
                    )
                if value is None:
                    value, source = index[image], h
                elif value != index[image]:
                    raise InputError(
                        "σ-related atoms disagree on a projection below both stars",
                        {"h": s.render(source), "k": s.render(h), "e": s.render(e)},
                    )
            row.append(value)
        rows.append(tuple(row))

    action = PartialActionTable(quotient.monoid, space, tuple(rows))
    law_report = check_action(action, name=f"{s.name}/σ")
    report = InducedActionReport(
        t_size=quotient.monoid.n,
        t_table=[list(r) for r in quotient.monoid.mul],
        e_size=space.n,
        act=[list(r) for r in action.act],
        checks=list(quotient.checks) + law_report.checks,
    )
    verdict = "PASS" if report.passed else "FAIL"
    logger.info(f"Induced partial action on {space.n} projections: {verdict}")
    return InducedPartialAction(quotient, projections, space, action, report)


@dataclass
class _Theta(Generic[E]):
    q: AbstractQ[E]
    induced: InducedPartialAction[E]
    g: GlobalizedAction
    ctx: PlContext

    def atom(self, h: E) -> Atom:
        s = self.q.structure
        t = self.induced.quotient.class_of(s.sigma_key(h))
        e = self.g.embedding[self.induced.projection_index(s.star(h))]
        return Atom(t, e)

    def extend(self, form: Sequence[E]) -> PlElement:
        return from_h_canonical(self.ctx, [self.atom(h) for h in form])


def certify_basis(
    q: AbstractQ[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> list[CheckResult]:
    """Run the atomic, proper and basis suites on H, which θ presupposes."""
    s, H = q.structure, q.atoms
    atomic = check_atomic(s, H)
    proper = check_proper(s, H, atomic=atomic.passed)
    basis = check_basis(
        s, H, q.bound, sample_size=sample_size, seed=seed, exhaustive_limit=exhaustive_limit
    )
    return [*atomic.checks, *proper.checks, *basis.checks]


def _fail_report(q: AbstractQ[Any], checks: list[CheckResult], **fields: Any) -> IsoReport:
    report = IsoReport(bound=q.bound, checks=checks, **fields)
    failed = [c.name for c in report.checks if not c.passed]
    logger.warning(f"Reconstruction of {q.structure.name} stopped: {failed}")
    return report


def rebuild_and_theta(
    q: AbstractQ[E],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> IsoReport:
    """Globalise the induced action, build 𝒬ℓ and verify θ up to ``q.bound``.

    H is certified first with the atomic, proper and basis suites; when it
    fails, the report stops after the induced action and carries no θ checks.
    θ is defined on the canonical forms found up to the bound. Multiplicativity
    is checked on every pair of such elements whose product is also reached,
    or on a seeded sample of pairs when there are more than
    ``exhaustive_limit``; each pair also counts which canonical step its
    product takes.

    Returns:
        IsoReport: Sizes, tables, the atom map and every verdict; a failure
            before θ can be built is reported rather than raised
    """
    s = q.structure
    checks = certify_basis(q, sample_size=sample_size, seed=seed, exhaustive_limit=exhaustive_limit)
    certified = all(check.passed for check in checks)
    try:
        induced = induce_partial_action(q)
    except InputError:
        if certified:
            raise
        return _fail_report(q, checks)
    fields: dict[str, Any] = {
        "t_table": induced.report.t_table,
        "partial_action": induced.report.act,
    }
    checks.extend(induced.report.checks)
    if not (certified and induced.report.passed):
        return _fail_report(q, checks, **fields)

    g = globalize(induced.action, verify=False)
    greport = verify_globalisation(g, induced.action)
    checks.extend(greport.checks)
    fields.update(
        sigma_classes=greport.sigma_classes,
        tau_classes=greport.tau_classes,
        space_size=greport.space_size,
    )
    try:
        qctx = QlContext(PlContext(g.action), g.image())
    except InputError as exc:
        witness = {"detail": str(exc), **(exc.witness or {})}
        checks.append(CheckResult.fail("rebuilt_conditions_AB", witness))
        return _fail_report(q, checks, **fields)
    checks.append(CheckResult.ok("rebuilt_conditions_AB"))

    theta = _Theta(q, induced, g, qctx.pl)
    atom_images = [(h, theta.atom(h)) for h in q.atoms.members]
    fields["atom_map"] = [{"atom": s.render(h), "image": str(a)} for h, a in atom_images]
    stray = next((h for h, a in atom_images if not qctx.is_q_atom(a)), None)
    checks.append(
        CheckResult.ok("atoms_to_basis", len(atom_images))
        if stray is None
        else CheckResult.fail("atoms_to_basis", {"atom": s.render(stray)}, len(atom_images))
    )

    groups = canonical_factorizations(s, q.atoms, q.bound)
    forms: dict[E, tuple[E, ...]] = {}
    images: dict[E, PlElement] = {}
    broken: CheckResult | None = None
    for value, found in groups.items():
        forms[value] = found[0]
        try:
            images[value] = theta.extend(found[0])
        except InputError as exc:
            broken = broken or CheckResult.fail(
                "canonical_forms_preserved",
                {"element": s.render(value), "detail": str(exc)},
                len(forms),
            )
    checks.append(broken or CheckResult.ok("canonical_forms_preserved", len(forms)))
    fields["elements"] = len(forms)

    missing = next((a for a in s.elements() if a not in forms), None)
    checks.append(
        CheckResult.ok("elements_reached", len(s.elements()))
        if missing is None
        else CheckResult.fail(
            "elements_reached",
            {"element": s.render(missing)},
            len(s.elements()),
            detail=f"no canonical form of length at most {q.bound}",
        )
    )

    target = {
        from_h_canonical(qctx.pl, form)
        for form in canonical_forms(qctx.pl, q.bound, qctx.q_atoms())
    }
    image_set = set(images.values())
    if len(image_set) != len(images):
        seen: dict[PlElement, E] = {}
        witness: dict[str, Any] = {}
        for value, image in images.items():
            if image in seen:
                witness = {"a": s.render(seen[image]), "b": s.render(value), "image": str(image)}
                break
            seen[image] = value
        checks.append(CheckResult.fail("theta_bijective", witness, len(images)))
    elif image_set != target:
        extra = sorted(str(x) for x in target ^ image_set)[:5]
        checks.append(
            CheckResult.fail(
                "theta_bijective",
                {"unmatched": extra},
                len(images),
                detail=f"{len(image_set)} images against {len(target)} targets",
            )
        )
    else:
        checks.append(CheckResult.ok("theta_bijective", len(images)))

    length = next(
        (a for a, img in images.items() if len(to_h_canonical(qctx.pl, img)) != len(forms[a])), None
    )
    checks.append(
        CheckResult.ok("theta_preserves_length", len(images))
        if length is None
        else CheckResult.fail("theta_preserves_length", {"element": s.render(length)}, len(images))
    )

    unary: dict[str, CheckResult | None] = {"theta_plus": None, "theta_star": None}
    for a, img in images.items():
        for name, op, pl_op in (("theta_plus", s.plus, pl_plus), ("theta_star", s.star, pl_star)):
            if unary[name] is not None:
                continue
            value = op(a)
            if value not in images or images[value] != pl_op(qctx.pl, img):
                unary[name] = CheckResult.fail(name, {"a": s.render(a)}, len(images))
    checks.extend(result or CheckResult.ok(name, len(images)) for name, result in unary.items())

    domain = list(images)
    pairs: list[tuple[E, E]]
    if len(domain) ** 2 <= exhaustive_limit:
        pairs = list(product(domain, repeat=2))
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(domain), rng.choice(domain)) for _ in range(sample_size)]
    steps: Counter[CanonicalStep] = Counter()
    multiplicative: CheckResult | None = None
    evaluated = 0
    for a, b in pairs:
        _, used = canonicalize(s, forms[a] + forms[b])
        steps.update(used)
        ab = s.mul(a, b)
        if ab not in images:
            continue
        evaluated += 1
        if multiplicative is None and images[ab] != pl_mul(qctx.pl, images[a], images[b]):
            multiplicative = CheckResult.fail(
                "theta_multiplicative", {"a": s.render(a), "b": s.render(b)}, evaluated
            )
    checks.append(multiplicative or CheckResult.ok("theta_multiplicative", evaluated))
    fields["branch_counts"] = {step.value: steps[step] for step in CanonicalStep}

    first_hit: dict[str, int] = {}
    T = induced.quotient.monoid
    for value, form in sorted(forms.items(), key=lambda item: len(item[1])):
        first_hit.setdefault(T.label(induced.quotient.class_of(s.sigma_key(value))), len(form))
    fields["first_hit_length"] = first_hit
    surjective = len(first_hit) == T.n
    checks.append(
        CheckResult.ok("classes_reached", T.n)
        if surjective
        else CheckResult.fail(
            "classes_reached",
            {"missing": [T.label(t) for t in T.elements() if T.label(t) not in first_hit]},
            T.n,
        )
    )

    report = IsoReport(bound=q.bound, checks=checks, **fields)
    logger.info(
        f"Reconstruction of {s.name} up to {q.bound}: {len(images)} elements, "
        f"{'PASS' if report.passed else 'FAIL'}"
    )
    return report
