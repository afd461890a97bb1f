"""Independent oracles the checked code is compared against.

Nothing here shares code with ``app.logic`` beyond the plain data types, so an
agreement between an oracle and the library is evidence rather than tautology.
"""

from collections.abc import Iterable
from itertools import chain, combinations, product

from app.logic.actions import PartialActionTable
from app.logic.order_core import FinMonoid, Poset
from app.logic.pl import Letter, PlContext, word_plus

FreeWord = tuple[Letter, ...]


def free_normalize(ctx: PlContext, word: Iterable[Letter]) -> FreeWord:
    """Reduced word of the free product T * X: identities dropped, neighbours merged."""
    T, X = ctx.T, ctx.X
    stack: list[Letter] = []
    for letter in word:
        identity = T.one if letter.kind == "t" else X.one
        if letter.value == identity:
            continue
        if stack and stack[-1].kind == letter.kind:
            top = stack.pop()
            table = T.mul if letter.kind == "t" else X.meet
            merged = table[top.value][letter.value]
            if merged != identity:
                stack.append(Letter(letter.kind, merged))
        else:
            stack.append(letter)
    return tuple(stack)


def free_words(ctx: PlContext, max_length: int) -> list[FreeWord]:
    """Every reduced word of the free product with at most ``max_length`` letters."""
    t_letters = [Letter("t", t) for t in ctx.T.elements() if t != ctx.T.one]
    x_letters = [Letter("x", x) for x in ctx.X.elements() if x != ctx.X.one]
    words: list[FreeWord] = [()]
    layer: list[FreeWord] = [()]
    for _ in range(max_length):
        grown: list[FreeWord] = []
        for word in layer:
            if not word or word[-1].kind == "x":
                grown.extend(word + (a,) for a in t_letters)
            if not word or word[-1].kind == "t":
                grown.extend(word + (a,) for a in x_letters)
        words.extend(grown)
        layer = grown
    return words


def k_classes(ctx: PlContext, max_length: int) -> dict[FreeWord, int]:
    """Classes of the congruence generated by ``α⁺α ≡ α``, restricted to short words.

    Every one-step derivation ``u α⁺α v ↔ u α v`` whose two sides both have at
    most ``max_length`` letters is generated, then closed transitively.
    """
    words = free_words(ctx, max_length)
    universe = set(words)
    letters = [Letter("t", t) for t in ctx.T.elements()] + [
        Letter("x", x) for x in ctx.X.elements()
    ]

    pending: list[tuple[FreeWord, FreeWord]] = []
    for alpha in words:
        if not alpha:
            continue
        lhs = free_normalize(ctx, (Letter("x", word_plus(ctx, alpha)), *alpha))
        if lhs in universe and lhs != alpha:
            pending.append((lhs, alpha))
    seen = set(pending)
    while pending:
        a, b = pending.pop()
        for letter in letters:
            for pair in (
                (free_normalize(ctx, (letter, *a)), free_normalize(ctx, (letter, *b))),
                (free_normalize(ctx, (*a, letter)), free_normalize(ctx, (*b, letter))),
            ):
                if pair[0] in universe and pair[1] in universe and pair not in seen:
                    seen.add(pair)
                    pending.append(pair)

    parent = {w: w for w in words}

    def find(w: FreeWord) -> FreeWord:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for a, b in seen:
        parent[find(a)] = find(b)
    roots: dict[FreeWord, int] = {}
    return {w: roots.setdefault(find(w), len(roots)) for w in words}


def brute_order_ideals(p: Poset) -> set[frozenset[int]]:
    """Every downward-closed subset, by testing all subsets."""
    elements = range(p.n)
    subsets = chain.from_iterable(combinations(elements, k) for k in range(p.n + 1))
    return {
        frozenset(s)
        for s in subsets
        if all(x in s for y in s for x in elements if p.leq[x][y])
    }


def naive_congruence(m: FinMonoid, pairs: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    """Smallest congruence containing ``pairs``, by rescanning until nothing changes."""
    label = list(m.elements())
    for a, b in pairs:
        old, new = label[a], label[b]
        label = [new if c == old else c for c in label]
    changed = True
    while changed:
        changed = False
        for a, b, c in product(m.elements(), repeat=3):
            if label[a] != label[b]:
                continue
            for x, y in ((m.mul[c][a], m.mul[c][b]), (m.mul[a][c], m.mul[b][c])):
                if label[x] != label[y]:
                    old, new = label[x], label[y]
                    label = [new if v == old else v for v in label]
                    changed = True
    classes: dict[int, set[int]] = {}
    for x, v in enumerate(label):
        classes.setdefault(v, set()).add(x)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def brute_pair_classes(pa: PartialActionTable) -> int:
    """Number of classes of ``(mn, e) ≡ (m, n·e)`` on ``T x Y``, by naive relabelling."""
    T, Y = pa.monoid, pa.space
    label = {(t, e): (t, e) for t, e in product(T.elements(), Y.elements())}
    for m, n, e in product(T.elements(), T.elements(), Y.elements()):
        ne = pa.act[n][e]
        if ne is None:
            continue
        old, new = label[(T.mul[m][n], e)], label[(m, ne)]
        if old != new:
            label = {k: new if v == old else v for k, v in label.items()}
    return len(set(label.values()))
