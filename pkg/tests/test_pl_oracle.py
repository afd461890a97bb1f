"""Reduction agrees with the congruence generated by ``α⁺α ≡ α`` on short words."""

import pytest

from app.logic.fixtures import (
    chain,
    cyclic_group,
    cyclic_monoid,
    enumerate_actions,
    left_zero_monoid,
)
from app.logic.pl import PlContext, reduce
from tests.oracles import k_classes

MAX_LENGTH = 6

CONTEXTS = [
    PlContext(action)
    for T in (
        cyclic_monoid(1, 1, "t"),
        cyclic_group(2),
        cyclic_monoid(2, 1),
        left_zero_monoid(2),
        cyclic_group(3),
    )
    for X in (chain(2), chain(3))
    for action in enumerate_actions(T, X, limit=2)
]


def test_enough_distinct_actions():
    assert len({(c.T, c.act.act) for c in CONTEXTS}) >= 5


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: f"T{c.T.n}-X{c.X.n}-{c.act.act}")
def test_reduce_matches_congruence_closure(ctx: PlContext):
    classes = k_classes(ctx, MAX_LENGTH)
    by_normal_form: dict[object, int] = {}
    by_class: dict[int, object] = {}
    for word, cls in classes.items():
        normal_form = reduce(ctx, word)
        assert by_normal_form.setdefault(normal_form, cls) == cls, word
        assert by_class.setdefault(cls, normal_form) == normal_form, word
