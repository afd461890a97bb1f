"""Axiom checkers for finite or bounded-enumerated biunary monoids.

A structure is anything implementing :class:`BiunaryStructure`: finite Cayley
tables, bounded slices of 𝒫ℓ and 𝒬ℓ, and the word fixtures. Identities are
evaluated over all tuples when that is affordable, otherwise over the tuples of
a short prefix of the enumeration plus a seeded random sample.
"""

import random
from collections import Counter
from collections.abc import Callable, Hashable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import product
from typing import Any, Generic, Protocol, TypeVar

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.order_core import Congruence, FinMonoid, congruence_closure
from app.models.reports import CheckResult, LawReport
from app.utils.constants import (
    DEFAULT_BOUND,
    DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_MAX_WITNESSES,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_SEED,
)

logger = get_logger(__name__)

E = TypeVar("E", bound=Hashable)


class BiunaryStructure(Protocol[E]):
    """Operations every checked structure provides."""

    name: str
    bound: int | None

    def elements(self) -> Sequence[E]: ...

    def identity(self) -> E: ...

    def projections(self) -> Sequence[E]: ...

    def mul(self, a: E, b: E) -> E: ...

    def plus(self, a: E) -> E: ...

    def star(self, a: E) -> E: ...

    def sigma_key(self, a: E) -> Hashable: ...

    def render(self, a: E) -> str: ...


@dataclass(frozen=True)
class BiunaryTable:
    """A finite biunary monoid: a Cayley table with ⁺ and optional * maps.

    σ is the congruence generated by all pairs of projections.
    """

    core: FinMonoid
    plus_map: tuple[int, ...]
    star_map: tuple[int, ...] | None = None
    name: str = "table"
    sigma: Congruence = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.core.n
        for label, values in (("plus", self.plus_map), ("star", self.star_map)):
            if values is None:
                continue
            if len(values) != n or any(not 0 <= v < n for v in values):
                raise InputError(f"{label} map must send each of the {n} elements into range")
        object.__setattr__(self, "plus_map", tuple(self.plus_map))
        if self.star_map is not None:
            object.__setattr__(self, "star_map", tuple(self.star_map))
        projections = sorted(set(self.plus_map))
        object.__setattr__(
            self, "sigma", congruence_closure(self.core, product(projections, repeat=2))
        )

    @property
    def bound(self) -> int | None:
        return None

    def elements(self) -> list[int]:
        return list(self.core.elements())

    def identity(self) -> int:
        return self.core.one

    def projections(self) -> list[int]:
        return sorted(set(self.plus_map))

    def mul(self, a: int, b: int) -> int:
        return self.core.mul[a][b]

    def plus(self, a: int) -> int:
        return self.plus_map[a]

    def star(self, a: int) -> int:
        if self.star_map is None:
            raise InputError(f"{self.name} has no * operation")
        return self.star_map[a]

    def sigma_key(self, a: int) -> int:
        return self.sigma.class_of[a]

    def render(self, a: int) -> str:
        return self.core.label(a)


@dataclass(frozen=True)
class AtomSet(Generic[E]):
    """A distinguished generating subset H with a membership predicate.

    ``contains`` decides membership for any element, including products that
    fall outside ``members`` in a bounded enumeration.
    """

    members: tuple[E, ...]
    contains: Callable[[E], bool]

    @classmethod
    def of(cls, members: Sequence[E]) -> "AtomSet[E]":
        frozen = frozenset(members)
        return cls(tuple(members), frozen.__contains__)


class CanonicalStep(StrEnum):
    """How an atom combines with the first atom ``h1`` of a canonical form."""

    PREPEND = "prepend"
    MERGE_PROJECTION = "merge_projection"
    ABSORB = "absorb"
    RESTRICT = "restrict"


def _leq(s: BiunaryStructure[E], e: E, f: E) -> bool:
    return s.mul(e, f) == e


def _is_projection(s: BiunaryStructure[E], a: E) -> bool:
    return s.plus(a) == a


def _tuples(
    elements: Sequence[E], arity: int, rng: random.Random, sample_size: int, exhaustive_limit: int
) -> tuple[list[tuple[E, ...]], bool]:
    if len(elements) ** arity <= exhaustive_limit:
        return list(product(elements, repeat=arity)), True
    short = elements[: max(1, int(exhaustive_limit ** (1 / arity)))]
    tuples = list(product(short, repeat=arity))
    tuples.extend(tuple(rng.choice(elements) for _ in range(arity)) for _ in range(sample_size))
    return tuples, False


def _identity_check(
    s: BiunaryStructure[E],
    name: str,
    tuples: Sequence[tuple[E, ...]],
    lhs: Callable[..., E],
    rhs: Callable[..., E],
) -> CheckResult:
    for count, args in enumerate(tuples, start=1):
        left, right = lhs(*args), rhs(*args)
        if left != right:
            witness = {var: s.render(a) for var, a in zip("xyz", args, strict=False)}
            witness.update(lhs=s.render(left), rhs=s.render(right))
            return CheckResult.fail(name, witness, count)
    return CheckResult.ok(name, len(tuples))


class _Sampler:
    def __init__(
        self, s: BiunaryStructure[Any], sample_size: int, seed: int, exhaustive_limit: int
    ) -> None:
        self.elements = list(s.elements())
        self.rng = random.Random(seed)
        self.sample_size = sample_size
        self.exhaustive_limit = exhaustive_limit
        self.exhaustive = True

    def tuples(self, arity: int) -> list[tuple[Any, ...]]:
        tuples, exhaustive = _tuples(
            self.elements, arity, self.rng, self.sample_size, self.exhaustive_limit
        )
        self.exhaustive = self.exhaustive and exhaustive
        return tuples


def _report(
    suite: str, s: BiunaryStructure[Any], checks: list[CheckResult], sampler: _Sampler | None
) -> LawReport:
    exhaustive = sampler is None or sampler.exhaustive
    report = LawReport(
        suite=suite,
        structure=s.name,
        bound=s.bound,
        exhaustive=exhaustive,
        sample_size=None if exhaustive or sampler is None else sampler.sample_size,
        checks=checks,
    )
    verdict = "PASS" if report.passed else "FAIL"
    logger.info(f"Suite {suite} on {s.name} (bound={s.bound}): {verdict}")
    for check in report.failures():
        logger.warning(f"{suite}/{check.name} failed: {check.witness}")
    return report


def _left_checks(s: BiunaryStructure[E], sampler: _Sampler) -> list[CheckResult]:
    m, p = s.mul, s.plus
    ones, twos = sampler.tuples(1), sampler.tuples(2)
    checks = [
        _identity_check(s, "plus_left_identity", ones, lambda x: m(p(x), x), lambda x: x),
        _identity_check(
            s,
            "plus_projections_closed",
            twos,
            lambda x, y: p(m(p(x), p(y))),
            lambda x, y: m(p(x), p(y)),
        ),
        _identity_check(
            s,
            "plus_projections_commute",
            twos,
            lambda x, y: m(p(x), p(y)),
            lambda x, y: m(p(y), p(x)),
        ),
        _identity_check(
            s, "plus_left_congruence", twos, lambda x, y: p(m(x, y)), lambda x, y: p(m(x, p(y)))
        ),
        _identity_check(s, "plus_idempotent", ones, lambda x: m(p(x), p(x)), lambda x: p(x)),
        _identity_check(s, "plus_of_plus", ones, lambda x: p(p(x)), lambda x: p(x)),
    ]
    projections = list(s.projections())
    evaluated = 0
    verdict: CheckResult | None = None
    for a in sampler.elements:
        for e in projections:
            if m(e, a) != a:
                continue
            evaluated += 1
            if not _leq(s, p(a), e):
                verdict = CheckResult.fail(
                    "plus_least_left_identity", {"a": s.render(a), "e": s.render(e)}, evaluated
                )
                break
        if verdict is not None:
            break
    checks.append(verdict or CheckResult.ok("plus_least_left_identity", evaluated))
    return checks


def _star_checks(s: BiunaryStructure[E], sampler: _Sampler) -> list[CheckResult]:
    m, p, st = s.mul, s.plus, s.star
    ones, twos = sampler.tuples(1), sampler.tuples(2)
    checks = [
        _identity_check(s, "star_right_identity", ones, lambda x: m(x, st(x)), lambda x: x),
        _identity_check(s, "star_of_star", ones, lambda x: st(st(x)), lambda x: st(x)),
        _identity_check(
            s,
            "star_projections_commute",
            twos,
            lambda x, y: m(st(x), st(y)),
            lambda x, y: m(st(y), st(x)),
        ),
        _identity_check(
            s,
            "star_weak_right_congruence",
            twos,
            lambda x, y: m(st(m(x, st(y))), st(y)),
            lambda x, y: st(m(x, st(y))),
        ),
        _identity_check(s, "star_is_projection", ones, lambda x: p(st(x)), lambda x: st(x)),
        _identity_check(s, "plus_fixed_by_star", ones, lambda x: st(p(x)), lambda x: p(x)),
    ]
    projections = list(s.projections())
    evaluated = 0
    verdict: CheckResult | None = None
    for a in sampler.elements:
        for e in projections:
            if m(a, e) != a:
                continue
            evaluated += 1
            if not _leq(s, st(a), e):
                verdict = CheckResult.fail(
                    "star_least_right_identity", {"a": s.render(a), "e": s.render(e)}, evaluated
                )
                break
        if verdict is not None:
            break
    checks.append(verdict or CheckResult.ok("star_least_right_identity", evaluated))
    return checks


def _right_checks(s: BiunaryStructure[E], sampler: _Sampler) -> list[CheckResult]:
    m, st = s.mul, s.star
    ones, twos = sampler.tuples(1), sampler.tuples(2)
    return [
        _identity_check(s, "star_right_identity", ones, lambda x: m(x, st(x)), lambda x: x),
        _identity_check(
            s,
            "star_projections_closed",
            twos,
            lambda x, y: st(m(st(x), st(y))),
            lambda x, y: m(st(x), st(y)),
        ),
        _identity_check(
            s,
            "star_projections_commute",
            twos,
            lambda x, y: m(st(x), st(y)),
            lambda x, y: m(st(y), st(x)),
        ),
        _identity_check(
            s, "star_right_congruence", twos, lambda x, y: st(m(x, y)), lambda x, y: st(m(st(x), y))
        ),
    ]


def check_left_ehresmann(
    b: BiunaryStructure[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    """Left Ehresmann identities and the least-left-identity property of ⁺.

    Args:
        b: Structure to check
        sample_size: Random tuples drawn when exhaustive evaluation is too large
        seed: Seed of the sampler
        exhaustive_limit: Largest tuple count evaluated exhaustively

    Returns:
        LawReport: One check per identity
    """
    sampler = _Sampler(b, sample_size, seed, exhaustive_limit)
    return _report("left-ehresmann", b, _left_checks(b, sampler), sampler)


def check_star_left_ehresmann(
    b: BiunaryStructure[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    """The * identities, including ``a*`` being the least right identity from E."""
    sampler = _Sampler(b, sample_size, seed, exhaustive_limit)
    return _report("star", b, _star_checks(b, sampler), sampler)


def check_right_ehresmann(
    b: BiunaryStructure[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    sampler = _Sampler(b, sample_size, seed, exhaustive_limit)
    return _report("right-ehresmann", b, _right_checks(b, sampler), sampler)


def check_ehresmann(
    b: BiunaryStructure[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    """Both one-sided suites plus the compatibility of ⁺ and *."""
    sampler = _Sampler(b, sample_size, seed, exhaustive_limit)
    ones = sampler.tuples(1)
    checks = _left_checks(b, sampler) + _right_checks(b, sampler)
    checks.append(
        _identity_check(b, "plus_fixed_by_star", ones, lambda x: b.star(b.plus(x)), b.plus)
    )
    checks.append(
        _identity_check(b, "star_is_projection", ones, lambda x: b.plus(b.star(x)), b.star)
    )
    return _report("ehresmann", b, checks, sampler)


def check_ample(
    b: BiunaryStructure[Any],
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    """The ample identity ``x y⁺ = (x y)⁺ x``; it holds in left restriction monoids only."""
    sampler = _Sampler(b, sample_size, seed, exhaustive_limit)
    m, p = b.mul, b.plus
    check = _identity_check(
        b, "ample", sampler.tuples(2), lambda x, y: m(x, p(y)), lambda x, y: m(p(m(x, y)), x)
    )
    return _report("ample", b, [check], sampler)


def _atomic_checks(s: BiunaryStructure[E], H: AtomSet[E]) -> list[CheckResult]:
    m, p, st, key = s.mul, s.plus, s.star, s.sigma_key
    projections = list(s.projections())
    atoms = list(H.members)
    checks: list[CheckResult] = []

    missing = next((e for e in projections if not H.contains(e)), None)
    checks.append(
        CheckResult.ok("H1_projections_in_H", len(projections))
        if missing is None
        else CheckResult.fail("H1_projections_in_H", {"e": s.render(missing)}, len(projections))
    )

    verdict: CheckResult | None = None
    count = 0
    for h, e in product(atoms, projections):
        count += 1
        he = m(h, e)
        if not H.contains(he) or st(he) != m(st(h), e):
            verdict = CheckResult.fail(
                "H2_restriction", {"h": s.render(h), "e": s.render(e)}, count
            )
            break
    checks.append(verdict or CheckResult.ok("H2_restriction", count))

    verdict, count = None, 0
    for h, k in product(atoms, repeat=2):
        if _is_projection(s, k) or not _leq(s, p(k), st(h)):
            continue
        count += 1
        hk = m(h, k)
        if not H.contains(hk) or st(hk) != st(k):
            verdict = CheckResult.fail("H3_absorption", {"h": s.render(h), "k": s.render(k)}, count)
            break
    checks.append(verdict or CheckResult.ok("H3_absorption", count))

    atom_keys = {key(h) for h in atoms}
    stray = next((a for a in s.elements() if key(a) not in atom_keys), None)
    checks.append(
        CheckResult.ok("H4_classes_meet_H", len(s.elements()))
        if stray is None
        else CheckResult.fail("H4_classes_meet_H", {"a": s.render(stray)}, len(s.elements()))
    )

    stars_by_key: dict[Hashable, list[E]] = {}
    shapes: set[tuple[Hashable, E]] = set()
    for w in atoms:
        stars_by_key.setdefault(key(w), []).append(st(w))
        shapes.add((key(w), st(w)))
    verdict, count = None, 0
    for h, k in product(atoms, repeat=2):
        if (key(m(h, k)), st(k)) not in shapes:
            continue
        count += 1
        if not any(_leq(s, p(k), u_star) for u_star in stars_by_key[key(h)]):
            verdict = CheckResult.fail("H5_lift", {"h": s.render(h), "k": s.render(k)}, count)
            break
    checks.append(verdict or CheckResult.ok("H5_lift", count))
    return checks


def check_atomic(b: BiunaryStructure[E], H: AtomSet[E]) -> LawReport:
    """Axioms H1 to H5 for the distinguished subset ``H``.

    (H5) is searched exhaustively over ``H.members``.
    """
    return _report("atomic", b, _atomic_checks(b, H), None)


def check_proper(
    b: BiunaryStructure[E],
    H: AtomSet[E],
    *,
    atomic: bool | None = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> LawReport:
    """σ together with equal * separates the members of ``H``.

    When ``H`` is atomic, also asserts ``h σ k ⇔ h k* = k h*`` and
    ``h σ 1 ⇔ h ∈ E``.

    Args:
        b: Structure
        H: Distinguished subset
        atomic: Whether ``H`` is atomic; computed when None
        max_witnesses: Cap on the violating pairs listed
    """
    m, st, key = b.mul, b.star, b.sigma_key
    atoms = list(H.members)
    groups: dict[tuple[Hashable, Any], list[E]] = {}
    for h in atoms:
        groups.setdefault((key(h), st(h)), []).append(h)
    clashes = [
        {"h": b.render(group[0]), "k": b.render(other), "star": b.render(st(group[0]))}
        for group in groups.values()
        for other in group[1:]
    ]
    checks = [
        CheckResult.ok("proper", len(atoms))
        if not clashes
        else CheckResult.fail("proper", clashes[0], len(atoms), witnesses=clashes[1:max_witnesses])
    ]

    if atomic is None:
        atomic = all(check.passed for check in _atomic_checks(b, H))
    if atomic:
        verdict: CheckResult | None = None
        count = 0
        for h, k in product(atoms, repeat=2):
            count += 1
            if (key(h) == key(k)) != (m(h, st(k)) == m(k, st(h))):
                verdict = CheckResult.fail(
                    "sigma_by_stars", {"h": b.render(h), "k": b.render(k)}, count
                )
                break
        checks.append(verdict or CheckResult.ok("sigma_by_stars", count))
        one_key = key(b.identity())
        stray = next((h for h in atoms if (key(h) == one_key) != _is_projection(b, h)), None)
        checks.append(
            CheckResult.ok("sigma_identity_class", len(atoms))
            if stray is None
            else CheckResult.fail("sigma_identity_class", {"h": b.render(stray)}, len(atoms))
        )
    return _report("proper", b, checks, None)


def canonical_step(
    s: BiunaryStructure[E], h: E, form: tuple[E, ...]
) -> tuple[tuple[E, ...], CanonicalStep]:
    """Left-multiply a canonical form by an atom, returning a canonical form."""
    h1 = form[0]
    if _is_projection(s, h1):
        return (s.mul(h, h1),) + form[1:], CanonicalStep.MERGE_PROJECTION
    p, hs = s.plus(h1), s.star(h)
    if _leq(s, p, hs):
        return (s.mul(h, h1),) + form[1:], CanonicalStep.ABSORB
    if _leq(s, hs, p):
        return (h,) + form, CanonicalStep.PREPEND
    return (s.mul(h, p),) + form, CanonicalStep.RESTRICT


def canonicalize(
    s: BiunaryStructure[E], word: Sequence[E]
) -> tuple[tuple[E, ...], Counter[CanonicalStep]]:
    """Canonical form of a nonempty product of atoms, folding from the right."""
    if not word:
        raise InputError("cannot canonicalize an empty product")
    steps: Counter[CanonicalStep] = Counter()
    form: tuple[E, ...] = (word[-1],)
    for h in reversed(word[:-1]):
        form, step = canonical_step(s, h, form)
        steps[step] += 1
    return form, steps


def canonical_violation(s: BiunaryStructure[E], H: AtomSet[E], form: Sequence[E]) -> int | None:
    """Index of the first atom breaking canonical form, or None."""
    for i, h in enumerate(form):
        if not H.contains(h):
            return i
        if i > 0 and (
            _is_projection(s, h) or not _strictly_below(s, s.star(form[i - 1]), s.plus(h))
        ):
            return i
    return None


def _strictly_below(s: BiunaryStructure[E], e: E, f: E) -> bool:
    return e != f and _leq(s, e, f)


def evaluate(s: BiunaryStructure[E], word: Sequence[E]) -> E:
    result = s.identity()
    for a in word:
        result = s.mul(result, a)
    return result


def canonical_factorizations(
    s: BiunaryStructure[E], H: AtomSet[E], max_length: int
) -> dict[E, list[tuple[E, ...]]]:
    """Every canonical form of length at most ``max_length``, grouped by its value."""
    followers = [k for k in H.members if not _is_projection(s, k)]
    result: dict[E, list[tuple[E, ...]]] = {}
    layer: list[tuple[tuple[E, ...], E]] = [((h,), h) for h in H.members]
    for _ in range(max_length):
        for form, value in layer:
            result.setdefault(value, []).append(form)
        layer = [
            (form + (k,), s.mul(value, k))
            for form, value in layer
            for k in followers
            if _strictly_below(s, s.star(form[-1]), s.plus(k))
        ]
        if not layer:
            break
    return result


def short_forms(forms: Sequence[tuple[E, ...]]) -> list[tuple[E, ...]]:
    """The canonical forms of globally minimal length among ``forms``."""
    shortest = min(len(form) for form in forms)
    return [form for form in forms if len(form) == shortest]


def _atom_words(
    H: AtomSet[E], bound: int, rng: random.Random, sample_size: int, exhaustive_limit: int
) -> tuple[list[tuple[E, ...]], bool]:
    atoms = list(H.members)
    total = sum(len(atoms) ** n for n in range(1, bound + 1))
    if total <= exhaustive_limit:
        return [w for n in range(1, bound + 1) for w in product(atoms, repeat=n)], True
    words = [w for n in range(1, min(bound, 2) + 1) for w in product(atoms, repeat=n)]
    words.extend(
        tuple(rng.choice(atoms) for _ in range(rng.randint(1, bound))) for _ in range(sample_size)
    )
    return words, False


def check_basis(
    b: BiunaryStructure[E],
    H: AtomSet[E],
    bound: int = DEFAULT_BOUND,
    *,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> LawReport:
    """Verify canonical forms exist and are unique up to ``bound`` atoms.

    Every product of at most ``bound`` atoms is folded into canonical form by
    :func:`canonical_step` and compared with the direct product; every
    canonical form of length at most ``bound`` is enumerated and grouped by
    value to detect non-uniqueness.
    """
    rng = random.Random(seed)
    words, exhaustive = _atom_words(H, bound, rng, sample_size, exhaustive_limit)
    render = b.render
    steps: Counter[CanonicalStep] = Counter()
    reduction: CheckResult | None = None
    length: CheckResult | None = None
    ends: CheckResult | None = None
    for count, word in enumerate(words, start=1):
        form, used = canonicalize(b, word)
        steps.update(used)
        value = evaluate(b, word)
        witness = {"word": [render(a) for a in word], "form": [render(a) for a in form]}
        if reduction is None and (
            canonical_violation(b, H, form) is not None or evaluate(b, form) != value
        ):
            reduction = CheckResult.fail("reduces_to_canonical", witness, count)
        if length is None and len(form) > len(word):
            length = CheckResult.fail("reduction_length", witness, count)
        if ends is None and (b.plus(value) != b.plus(form[0]) or b.star(value) != b.star(form[-1])):
            ends = CheckResult.fail("canonical_ends", witness, count)
    counts = ", ".join(f"{step.value}={steps[step]}" for step in CanonicalStep)
    checks = [
        reduction or CheckResult.ok("reduces_to_canonical", len(words), detail=counts),
        length or CheckResult.ok("reduction_length", len(words)),
        ends or CheckResult.ok("canonical_ends", len(words)),
    ]

    groups = canonical_factorizations(b, H, bound)
    duplicates = [
        {"element": render(value), "forms": [[render(a) for a in form] for form in forms]}
        for value, forms in groups.items()
        if len(forms) > 1
    ]
    checks.append(
        CheckResult.ok("unique_canonical_forms", len(groups), detail=f"verified up to {bound}")
        if not duplicates
        else CheckResult.fail(
            "unique_canonical_forms",
            duplicates[0],
            len(groups),
            detail=f"{len(duplicates)} elements with several canonical forms up to {bound}",
            witnesses=duplicates[1:max_witnesses],
        )
    )

    verdict: CheckResult | None = None
    count = 0
    for h, k in product(H.members, repeat=2):
        if _is_projection(b, k):
            continue
        count += 1
        if H.contains(b.mul(h, k)) != _leq(b, b.plus(k), b.star(h)):
            verdict = CheckResult.fail(
                "atom_product_criterion", {"h": render(h), "k": render(k)}, count
            )
            break
    checks.append(verdict or CheckResult.ok("atom_product_criterion", count))

    report = LawReport(
        suite="basis",
        structure=b.name,
        bound=bound,
        exhaustive=exhaustive,
        sample_size=None if exhaustive else sample_size,
        checks=checks,
    )
    logger.info(f"Suite basis on {b.name} (bound={bound}): {'PASS' if report.passed else 'FAIL'}")
    return report


def table_from_structure(
    s: BiunaryStructure[E], elements: Sequence[E] | None = None, name: str | None = None
) -> tuple[BiunaryTable, list[E]]:
    """Materialize a finite structure as a Cayley table.

    Returns:
        tuple: The table and the element standing for each index

    Raises:
        InputError: If the element set is not closed under the operations
    """
    items = list(elements if elements is not None else s.elements())
    index = {a: i for i, a in enumerate(items)}

    def lookup(value: E, op: str) -> int:
        if value not in index:
            raise InputError(
                f"enumeration of {s.name} is not closed under {op}", {"value": s.render(value)}
            )
        return index[value]

    mul = tuple(tuple(lookup(s.mul(a, b), "multiplication") for b in items) for a in items)
    core = FinMonoid(
        len(items), mul, lookup(s.identity(), "identity"), tuple(s.render(a) for a in items)
    )
    plus_map = tuple(lookup(s.plus(a), "plus") for a in items)
    star_map = tuple(lookup(s.star(a), "star") for a in items)
    return BiunaryTable(core, plus_map, star_map, name or s.name), items


SUITES = (
    "left-ehresmann",
    "star",
    "right-ehresmann",
    "ehresmann",
    "ample",
    "atomic",
    "proper",
    "basis",
)


def run_suite(
    suite: str,
    b: BiunaryStructure[Any],
    H: AtomSet[Any] | None = None,
    *,
    bound: int = DEFAULT_BOUND,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> LawReport:
    """Dispatch a suite by name.

    Raises:
        InputError: On an unknown suite, or an atom suite without ``H``
    """
    sampling: dict[str, int] = {
        "sample_size": sample_size,
        "seed": seed,
        "exhaustive_limit": exhaustive_limit,
    }
    identity_suites: dict[str, Callable[..., LawReport]] = {
        "left-ehresmann": check_left_ehresmann,
        "star": check_star_left_ehresmann,
        "right-ehresmann": check_right_ehresmann,
        "ehresmann": check_ehresmann,
        "ample": check_ample,
    }
    if suite in identity_suites:
        return identity_suites[suite](b, **sampling)
    if suite not in SUITES:
        raise InputError(f"unknown suite '{suite}'", {"suites": list(SUITES)})
    if H is None:
        raise InputError(f"suite '{suite}' needs a distinguished subset H")
    if suite == "atomic":
        return check_atomic(b, H)
    if suite == "proper":
        return check_proper(b, H, max_witnesses=max_witnesses)
    return check_basis(b, H, bound, max_witnesses=max_witnesses, **sampling)
