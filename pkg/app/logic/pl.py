"""The monoid 𝒫ℓ(T, X) over an order-preserving action of T on X.

Elements are stored as their unique T-normal form ``t0 e1 t1 … en tn``. Raw
words over the free product of T and X only exist inside :func:`reduce`, which
rewrites them into normal form; multiplication is concatenation followed by
reduction.
"""

import random
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

from app.core.exceptions import InputError, ReductionBudgetExceeded
from app.core.logging import get_logger
from app.logic.actions import ActionTable
from app.logic.laws import BiunaryTable, table_from_structure
from app.logic.order_core import FinMonoid, Semilattice
from app.models.reports import CheckResult, LawReport
from app.utils.constants import DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SAMPLE_SIZE, DEFAULT_SEED

logger = get_logger(__name__)


class Letter(NamedTuple):
    """One letter of a raw word: ``("t", i)`` from T or ``("x", i)`` from X."""

    kind: Literal["t", "x"]
    value: int


@dataclass(frozen=True, slots=True)
class PlElement:
    """A T-normal form ``t0 e1 t1 … en tn`` with ``pairs = ((e1, t1), …, (en, tn))``."""

    t0: int
    pairs: tuple[tuple[int, int], ...] = ()

    @property
    def length(self) -> int:
        return len(self.pairs)

    def letters(self) -> list[Letter]:
        word = [Letter("t", self.t0)]
        for e, t in self.pairs:
            word.append(Letter("x", e))
            word.append(Letter("t", t))
        return word

    def __str__(self) -> str:
        if not self.pairs:
            return str(self.t0)
        return f"{self.t0} ; " + " ".join(f"({e},{t})" for e, t in self.pairs)


@dataclass(frozen=True, slots=True)
class Atom:
    """The generator ``te``; its ⁺ is ``t·e`` and its * is ``e``."""

    t: int
    e: int

    def __str__(self) -> str:
        return f"({self.t},{self.e})"


@dataclass(frozen=True)
class HCanonicalForm:
    """A product of atoms ``h1 … hn`` in canonical form.

    ``hi* < h(i+1)⁺`` throughout, and no ``hi`` with ``i >= 2`` is a projection.
    """

    atoms: tuple[Atom, ...]

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __str__(self) -> str:
        return " ".join(str(atom) for atom in self.atoms)


@dataclass(frozen=True)
class PlContext:
    """A finite monoid T acting totally and order-preservingly on a semilattice X."""

    act: ActionTable

    @property
    def T(self) -> FinMonoid:
        return self.act.monoid

    @property
    def X(self) -> Semilattice:
        return self.act.space

    def identity(self) -> PlElement:
        return PlElement(self.T.one)

    def projection(self, x: int) -> PlElement:
        """The element of X as a normal form; ``1_X`` is the identity."""
        if x == self.X.one:
            return self.identity()
        return PlElement(self.T.one, ((x, self.T.one),))

    def atoms(self) -> list[Atom]:
        return [Atom(t, e) for t in self.T.elements() for e in self.X.elements()]

    def atom_plus(self, h: Atom) -> int:
        return self.act.act[h.t][h.e]


def _check_letters(ctx: PlContext, word: Sequence[Letter]) -> None:
    for kind, value in word:
        bound = ctx.T.n if kind == "t" else ctx.X.n
        if kind not in ("t", "x") or not 0 <= value < bound:
            raise InputError(f"invalid letter {kind}{value}", {"kind": kind, "value": value})


def word_plus(ctx: PlContext, word: Sequence[Letter]) -> int:
    """Evaluate ``word · 1_X`` right to left.

    X-letters act by meet and T-letters by the action.

    Raises:
        InputError: If the word is empty or has an invalid letter
    """
    if not word:
        raise InputError("word_plus needs a nonempty word")
    _check_letters(ctx, word)
    X, act = ctx.X, ctx.act.act
    acc = X.one
    for kind, value in reversed(word):
        acc = X.meet[value][acc] if kind == "x" else act[value][acc]
    return acc


def _weak_normal_form(ctx: PlContext, raw: Sequence[Letter]) -> tuple[list[int], list[int]]:
    T, X = ctx.T, ctx.X
    blocks = [T.one]
    letters: list[int] = []
    for kind, value in raw:
        if kind == "t":
            blocks[-1] = T.mul[blocks[-1]][value]
        elif value != X.one:
            letters.append(value)
            blocks.append(T.one)
    s = [blocks[0]]
    f: list[int] = []
    for i, e in enumerate(letters):
        if f and s[-1] == T.one:
            s.pop()
            f[-1] = X.meet[f[-1]][e]
        else:
            f.append(e)
        s.append(blocks[i + 1])
    return s, f


def reduce(ctx: PlContext, raw: Sequence[Letter]) -> PlElement:
    """Rewrite a raw word into its T-normal form.

    After deleting ``1_X`` letters and merging adjacent letters of the same kind,
    the greatest index ``i`` with ``f_i`` not strictly below
    ``p = (s_i f_(i+1) … s_m)⁺`` is repaired: ``f_i`` is absorbed when
    ``p <= f_i`` (merging ``s_(i-1) s_i``, and dropping that product when it is an
    interior identity), otherwise it is replaced by ``p ∧ f_i``.

    Args:
        ctx: The context
        raw: Letters of T and X in any order

    Returns:
        PlElement: The unique normal form

    Raises:
        InputError: On an invalid letter
        ReductionBudgetExceeded: If the repair loop exceeds ``|raw|² · |X|`` steps
    """
    _check_letters(ctx, raw)
    T, X, act = ctx.T, ctx.X, ctx.act.act
    s, f = _weak_normal_form(ctx, raw)
    budget = max(len(raw), 1) ** 2 * X.n + len(raw) + 1
    for _ in range(budget):
        m = len(f)
        if m == 0:
            return PlElement(s[0])
        p = [0] * m
        acc = act[s[m]][X.one]
        p[m - 1] = acc
        for i in range(m - 2, -1, -1):
            acc = act[s[i + 1]][X.meet[f[i + 1]][acc]]
            p[i] = acc
        i = next((j for j in range(m - 1, -1, -1) if not X.lt(f[j], p[j])), -1)
        if i < 0:
            return PlElement(s[0], tuple(zip(f, s[1:], strict=True)))
        if X.leq(p[i], f[i]):
            merged = T.mul[s[i]][s[i + 1]]
            s[i : i + 2] = [merged]
            del f[i]
            if merged == T.one and 0 < i < len(f):
                del s[i]
                f[i - 1 : i + 1] = [X.meet[f[i - 1]][f[i]]]
        else:
            f[i] = X.meet[p[i]][f[i]]
    raise ReductionBudgetExceeded(f"reduction of a {len(raw)}-letter word exceeded {budget} steps")


def mul(ctx: PlContext, a: PlElement, b: PlElement) -> PlElement:
    """Product of two normal forms."""
    return reduce(ctx, a.letters() + b.letters())


def product(ctx: PlContext, items: Sequence[PlElement]) -> PlElement:
    word: list[Letter] = []
    for item in items:
        word.extend(item.letters())
    return reduce(ctx, word) if word else ctx.identity()


def plus(ctx: PlContext, a: PlElement) -> PlElement:
    return ctx.projection(word_plus(ctx, a.letters()))


def star(ctx: PlContext, a: PlElement) -> PlElement:
    """``e_n`` when ``n >= 1`` and ``t_n = 1``, otherwise the identity."""
    if a.pairs and a.pairs[-1][1] == ctx.T.one:
        return ctx.projection(a.pairs[-1][0])
    return ctx.identity()


def c_T(ctx: PlContext, a: PlElement) -> int:
    """The T-content ``t0 t1 … tn``; two elements are σ-related iff it agrees."""
    return ctx.T.product([a.t0, *(t for _, t in a.pairs)])


def is_projection(ctx: PlContext, a: PlElement) -> bool:
    return a.t0 == ctx.T.one and (
        not a.pairs or (len(a.pairs) == 1 and a.pairs[0][1] == ctx.T.one)
    )


def normal_form_violation(ctx: PlContext, a: PlElement) -> dict[str, int | str] | None:
    """Describe the first broken normal-form condition of ``a``, or None."""
    T, X = ctx.T, ctx.X
    if not 0 <= a.t0 < T.n:
        return {"reason": "t0 out of range", "index": 0}
    n = len(a.pairs)
    for i, (e, t) in enumerate(a.pairs, start=1):
        if not (0 <= e < X.n and 0 <= t < T.n):
            return {"reason": "letter out of range", "index": i}
        if e == X.one:
            return {"reason": "identity of X inside the form", "index": i}
        if t == T.one and i < n:
            return {"reason": "interior identity of T", "index": i}
    letters = a.letters()
    for i, (e, _) in enumerate(a.pairs, start=1):
        tail = letters[2 * i :]
        if not X.lt(e, word_plus(ctx, tail)):
            return {"reason": "e_i not strictly below the tail", "index": i}
    return None


def validate_element(ctx: PlContext, a: PlElement) -> PlElement:
    """Return ``a`` if it is a T-normal form, else raise InputError."""
    violation = normal_form_violation(ctx, a)
    if violation is not None:
        raise InputError(f"not a T-normal form: {a}", {"element": str(a), **violation})
    return a


def to_h_canonical(ctx: PlContext, a: PlElement) -> HCanonicalForm:
    """Translate a normal form into its canonical product of atoms.

    With ``e_n`` the last X-letter: if ``t_n = 1`` the atoms are
    ``(t0,e1) … (t(n-1),en)``, otherwise ``(t0,e1) … (t(n-1),en)(tn,1_X)``.
    """
    ts = [a.t0, *(t for _, t in a.pairs)]
    es = [e for e, _ in a.pairs]
    n = len(es)
    atoms = [Atom(ts[i], es[i]) for i in range(n)]
    if n == 0 or ts[n] != ctx.T.one:
        atoms.append(Atom(ts[n], ctx.X.one))
    return HCanonicalForm(tuple(atoms))


def canonical_violation(ctx: PlContext, atoms: Sequence[Atom]) -> dict[str, int | str] | None:
    T, X = ctx.T, ctx.X
    if not atoms:
        return {"reason": "empty product", "index": 0}
    for i, h in enumerate(atoms):
        if not (0 <= h.t < T.n and 0 <= h.e < X.n):
            return {"reason": "atom out of range", "index": i}
        if i > 0 and h.t == T.one:
            return {"reason": "projection after the first atom", "index": i}
        if i > 0 and not X.lt(atoms[i - 1].e, ctx.atom_plus(h)):
            return {"reason": "star not strictly below the next plus", "index": i}
    return None


def from_h_canonical(ctx: PlContext, h: HCanonicalForm | Sequence[Atom]) -> PlElement:
    """Inverse of :func:`to_h_canonical`.

    Raises:
        InputError: If the atoms are not in canonical form
    """
    atoms = tuple(h.atoms if isinstance(h, HCanonicalForm) else h)
    violation = canonical_violation(ctx, atoms)
    if violation is not None:
        raise InputError(
            "atoms are not in canonical form", {"atoms": [str(x) for x in atoms], **violation}
        )
    pairs = [(atoms[i].e, atoms[i + 1].t) for i in range(len(atoms) - 1)]
    last = atoms[-1]
    if last.e != ctx.X.one:
        pairs.append((last.e, ctx.T.one))
    return PlElement(atoms[0].t, tuple(pairs))


def atom_element(ctx: PlContext, h: Atom) -> PlElement:
    return from_h_canonical(ctx, (h,))


def canonical_forms(
    ctx: PlContext, max_length: int, atoms: Sequence[Atom] | None = None
) -> Iterator[HCanonicalForm]:
    """All canonical atom products of length ``1..max_length``, shortest first.

    Args:
        ctx: The context
        max_length: Longest product produced
        atoms: Restrict to these atoms (defaults to every atom)
    """
    pool = list(atoms) if atoms is not None else ctx.atoms()
    followers = [h for h in pool if h.t != ctx.T.one]
    layer: list[tuple[Atom, ...]] = [(h,) for h in pool]
    for _ in range(max_length):
        if not layer:
            return
        for form in layer:
            yield HCanonicalForm(form)
        layer = [
            form + (k,)
            for form in layer
            for k in followers
            if ctx.X.lt(form[-1].e, ctx.atom_plus(k))
        ]


def enumerate_elements(ctx: PlContext, max_length: int) -> list[PlElement]:
    """Every element whose canonical form has at most ``max_length`` atoms."""
    return [from_h_canonical(ctx, form) for form in canonical_forms(ctx, max_length)]


def random_word(ctx: PlContext, rng: random.Random, length: int) -> list[Letter]:
    word: list[Letter] = []
    for _ in range(length):
        if rng.random() < 0.5:
            word.append(Letter("t", rng.randrange(ctx.T.n)))
        else:
            word.append(Letter("x", rng.randrange(ctx.X.n)))
    return word


_ELEMENT_RE = re.compile(r"^\s*(\d+)\s*(?:;\s*(.*))?$")
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_LETTER_RE = re.compile(r"([tx])(\d+)")


def parse_element(ctx: PlContext, text: str) -> PlElement:
    """Parse ``"t0 ; (e1,t1) (e2,t2)"`` and check it is a normal form."""
    match = _ELEMENT_RE.match(text)
    if match is None:
        raise InputError(f"cannot parse element '{text}'")
    t0, rest = int(match.group(1)), match.group(2) or ""
    pairs = tuple((int(e), int(t)) for e, t in _PAIR_RE.findall(rest))
    if _PAIR_RE.sub("", rest).strip():
        raise InputError(f"cannot parse element '{text}'")
    return validate_element(ctx, PlElement(t0, pairs))


def parse_word(ctx: PlContext, text: str) -> list[Letter]:
    """Parse a raw word such as ``"t1 x2 t1"``."""
    tokens = text.replace(",", " ").split()
    word: list[Letter] = []
    for token in tokens:
        match = _LETTER_RE.fullmatch(token)
        if match is None:
            raise InputError(f"invalid letter '{token}', expected t<i> or x<i>")
        word.append(Letter(match.group(1), int(match.group(2))))  # type: ignore[arg-type]
    _check_letters(ctx, word)
    return word


class PlStructure:
    """Bounded enumeration of 𝒫ℓ(T, X) seen as a biunary monoid.

    With ``atoms`` given, only the canonical products of those atoms are
    enumerated and only they count as atoms.
    """

    def __init__(
        self, ctx: PlContext, bound: int, name: str = "pl", atoms: Sequence[Atom] | None = None
    ) -> None:
        self.ctx = ctx
        self.bound = bound
        self.name = name
        self._atoms = list(atoms) if atoms is not None else ctx.atoms()
        self._atom_set = frozenset(self._atoms)
        self._elements = [
            from_h_canonical(ctx, form) for form in canonical_forms(ctx, bound, self._atoms)
        ]

    def elements(self) -> list[PlElement]:
        return self._elements

    def identity(self) -> PlElement:
        return self.ctx.identity()

    def projections(self) -> list[PlElement]:
        return [self.ctx.projection(x) for x in self.ctx.X.elements()]

    def mul(self, a: PlElement, b: PlElement) -> PlElement:
        return mul(self.ctx, a, b)

    def plus(self, a: PlElement) -> PlElement:
        return plus(self.ctx, a)

    def star(self, a: PlElement) -> PlElement:
        return star(self.ctx, a)

    def sigma_key(self, a: PlElement) -> int:
        return c_T(self.ctx, a)

    def render(self, a: PlElement) -> str:
        return str(a)

    def atoms(self) -> list[PlElement]:
        return [atom_element(self.ctx, h) for h in self._atoms]

    def is_atom(self, a: PlElement) -> bool:
        form = to_h_canonical(self.ctx, a)
        return len(form) == 1 and form.atoms[0] in self._atom_set


def pl_table(ctx: PlContext, bound: int) -> tuple[BiunaryTable, list[PlElement]]:
    """Materialize 𝒫ℓ(T, X) as a Cayley table when it is finite.

    Raises:
        InputError: If the elements of canonical length at most ``bound`` are not
            closed under multiplication
    """
    return table_from_structure(PlStructure(ctx, bound), name=f"pl[{bound}]")


def check_content_morphism(
    ctx: PlContext,
    elements: Sequence[PlElement],
    *,
    name: str = "pl",
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> LawReport:
    """Check that ``c_T`` is a monoid morphism onto T on the given elements.

    Pairs are taken exhaustively when there are at most ``exhaustive_limit`` of
    them, otherwise from a seeded sample.
    """
    T = ctx.T
    items = list(elements)
    exhaustive = len(items) ** 2 <= exhaustive_limit
    if exhaustive:
        pairs = [(a, b) for a in items for b in items]
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(items), rng.choice(items)) for _ in range(sample_size)]

    checks: list[CheckResult] = []
    result = CheckResult.ok("content_multiplicative", len(pairs))
    for count, (a, b) in enumerate(pairs, start=1):
        lhs, rhs = c_T(ctx, mul(ctx, a, b)), T.mul[c_T(ctx, a)][c_T(ctx, b)]
        if lhs != rhs:
            witness = {"a": str(a), "b": str(b), "lhs": T.label(lhs), "rhs": T.label(rhs)}
            result = CheckResult.fail("content_multiplicative", witness, count)
            break
    checks.append(result)

    reached = {c_T(ctx, a) for a in items}
    missing = [t for t in T.elements() if t not in reached]
    if missing:
        checks.append(
            CheckResult.fail("content_onto", {"missing": T.label(missing[0])}, len(items))
        )
    else:
        checks.append(CheckResult.ok("content_onto", len(items)))
    checks.append(
        _first_bad(
            "content_kills_projections",
            [(x, c_T(ctx, ctx.projection(x))) for x in ctx.X.elements()],
            T,
        )
    )
    report = LawReport(
        suite="content",
        structure=name,
        bound=max((a.length for a in items), default=0),
        exhaustive=exhaustive,
        sample_size=None if exhaustive else sample_size,
        checks=checks,
    )
    logger.info(f"Content morphism on {name}: {'PASS' if report.passed else 'FAIL'}")
    return report


def _first_bad(name: str, images: Sequence[tuple[int, int]], T: FinMonoid) -> CheckResult:
    for x, t in images:
        if t != T.one:
            return CheckResult.fail(name, {"x": x, "content": T.label(t)}, len(images))
    return CheckResult.ok(name, len(images))
