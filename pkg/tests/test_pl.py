"""Tests for 𝒫ℓ(T, X): normal forms, products and the unary operations."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import InputError
from app.logic.actions import ActionTable
from app.logic.fixtures import chain, cyclic_group, diamond_context, f1_context, left_zero_monoid
from app.logic.pl import (
    Atom,
    Letter,
    PlContext,
    PlElement,
    PlStructure,
    c_T,
    check_content_morphism,
    enumerate_elements,
    from_h_canonical,
    mul,
    normal_form_violation,
    parse_element,
    parse_word,
    pl_table,
    plus,
    product,
    reduce,
    star,
    to_h_canonical,
    word_plus,
)

CONTEXTS = {
    "f1": f1_context(),
    "diamond": diamond_context(),
    "z2-chain2": PlContext(ActionTable(cyclic_group(2), chain(2), ((0, 1), (0, 1)))),
    "lz2-chain3": PlContext(
        ActionTable(left_zero_monoid(2), chain(3), ((0, 1, 2), (0, 0, 0), (1, 1, 1)))
    ),
}

E = PlElement(0, ((0, 0),))
T = PlElement(1)
TE = PlElement(1, ((0, 0),))


@st.composite
def raw_words(draw: st.DrawFn, ctx: PlContext, max_size: int = 8) -> list[Letter]:
    letter = st.one_of(
        st.builds(Letter, st.just("t"), st.integers(0, ctx.T.n - 1)),
        st.builds(Letter, st.just("x"), st.integers(0, ctx.X.n - 1)),
    )
    return draw(st.lists(letter, max_size=max_size))


class TestF1:
    """Test the four elements of 𝒫ℓ over T = {1, t} acting on e < 1."""

    def test_elements(self, f1):
        assert set(enumerate_elements(f1, 4)) == {f1.identity(), T, E, TE}

    def test_products(self, f1):
        assert mul(f1, E, T) == T
        assert mul(f1, T, E) == TE
        assert mul(f1, TE, T) == T
        assert mul(f1, E, E) == E

    def test_unary(self, f1):
        assert plus(f1, TE) == E
        assert star(f1, TE) == E
        assert plus(f1, T) == E
        assert star(f1, T) == f1.identity()
        assert c_T(f1, TE) == 1

    def test_reduce(self, f1):
        assert reduce(f1, parse_word(f1, "t1 x0 t1")) == T
        assert reduce(f1, parse_word(f1, "x0 t1")) == T
        assert reduce(f1, parse_word(f1, "x1 t0")) == f1.identity()
        assert reduce(f1, []) == f1.identity()

    def test_render_and_parse(self, f1):
        assert str(TE) == "1 ; (0,0)"
        assert parse_element(f1, "1 ; (0,0)") == TE
        assert parse_element(f1, "0") == f1.identity()

    def test_canonical_form(self, f1):
        assert to_h_canonical(f1, TE).atoms == (Atom(1, 0),)
        assert to_h_canonical(f1, T).atoms == (Atom(1, 1),)
        assert to_h_canonical(f1, f1.identity()).atoms == (Atom(0, 1),)

    def test_table(self, f1):
        table, elements = pl_table(f1, 4)
        assert table.core.n == 4
        assert len(table.projections()) == 2
        assert set(elements) == {f1.identity(), T, E, TE}


class TestParsing:
    def test_x_identity_inside_form(self, f1):
        with pytest.raises(InputError, match="not a T-normal form") as exc_info:
            parse_element(f1, "0 ; (1,0)")
        assert exc_info.value.witness["reason"] == "identity of X inside the form"

    def test_not_strictly_below(self, f1):
        # t·1 = e, so e is not strictly below the tail t
        violation = normal_form_violation(f1, PlElement(0, ((0, 1),)))
        assert violation == {"reason": "e_i not strictly below the tail", "index": 1}

    def test_garbage(self, f1):
        with pytest.raises(InputError, match="cannot parse"):
            parse_element(f1, "1 ; oops")

    def test_letter_out_of_range(self, f1):
        with pytest.raises(InputError, match="invalid letter"):
            parse_word(f1, "t9")

    def test_bad_token(self, f1):
        with pytest.raises(InputError, match="expected t<i> or x<i>"):
            parse_word(f1, "t1 y0")

    def test_word_plus_empty(self, f1):
        with pytest.raises(InputError):
            word_plus(f1, [])


@pytest.mark.parametrize("name", sorted(CONTEXTS))
class TestReduceProperties:
    """Property tests of reduction on random raw words."""

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_reduce_gives_normal_form(self, name, data):
        ctx = CONTEXTS[name]
        a = reduce(ctx, data.draw(raw_words(ctx)))
        assert normal_form_violation(ctx, a) is None
        assert reduce(ctx, a.letters()) == a

    def test_every_short_word_reduces_to_normal_form(self, name):
        ctx = CONTEXTS[name]
        letters = [Letter("t", t) for t in range(ctx.T.n)]
        letters += [Letter("x", e) for e in range(ctx.X.n)]
        for length in range(1, 5):
            for word in itertools.product(letters, repeat=length):
                a = reduce(ctx, word)
                assert normal_form_violation(ctx, a) is None, (word, a)

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_concatenation_is_multiplication(self, name, data):
        ctx = CONTEXTS[name]
        u, v = data.draw(raw_words(ctx, 5)), data.draw(raw_words(ctx, 5))
        assert reduce(ctx, u + v) == mul(ctx, reduce(ctx, u), reduce(ctx, v))

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_associative(self, name, data):
        ctx = CONTEXTS[name]
        a, b, c = (reduce(ctx, data.draw(raw_words(ctx, 5))) for _ in range(3))
        assert mul(ctx, mul(ctx, a, b), c) == mul(ctx, a, mul(ctx, b, c))
        assert product(ctx, [a, b, c]) == mul(ctx, a, mul(ctx, b, c))

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_plus_and_content_are_invariants(self, name, data):
        ctx = CONTEXTS[name]
        word = data.draw(raw_words(ctx).filter(bool))
        a = reduce(ctx, word)
        assert plus(ctx, a) == ctx.projection(word_plus(ctx, word))
        assert c_T(ctx, a) == ctx.T.product(value for kind, value in word if kind == "t")

    def test_canonical_round_trip(self, name):
        ctx = CONTEXTS[name]
        for a in enumerate_elements(ctx, 3):
            form = to_h_canonical(ctx, a)
            assert from_h_canonical(ctx, form) == a
            assert len(form) == max(a.length, 1) or form.atoms[-1].e == ctx.X.one


def test_content_morphism_on_diamond(diamond_ctx):
    elements = PlStructure(diamond_ctx, 3).elements()
    report = check_content_morphism(diamond_ctx, elements, name="pl(diamond)")
    assert report.passed
    assert [c.name for c in report.checks] == [
        "content_multiplicative",
        "content_onto",
        "content_kills_projections",
    ]


def test_from_h_canonical_rejects_projection_after_first(f1):
    with pytest.raises(InputError, match="not in canonical form"):
        from_h_canonical(f1, [Atom(1, 0), Atom(0, 0)])
