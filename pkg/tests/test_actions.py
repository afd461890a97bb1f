"""Tests for total and partial actions."""

import pytest

from app.core.exceptions import InputError
from app.logic.actions import (
    ActionTable,
    PartialActionTable,
    check_action,
    check_conditions_AB,
    check_full,
    check_order_preserving,
    check_strong,
    restrict_action,
)
from app.logic.fixtures import (
    chain,
    cyclic_group,
    cyclic_monoid,
    enumerate_actions,
    order_preserving_maps,
    small_monoids,
)
from app.logic.order_core import FinMonoid, Subsemilattice

T1 = cyclic_monoid(1, 1, "t")
# 1 > s > t with st = ts = t
T3 = FinMonoid(3, ((0, 1, 2), (1, 1, 2), (2, 2, 2)), 0, ("1", "s", "t"))


class TestActionTable:
    """Test construction-time validation of total actions."""

    def test_valid(self):
        a = ActionTable(T1, chain(2), ((0, 1), (0, 0)))
        assert a(1, 1) == 0
        assert a.as_partial().is_total()

    def test_identity_must_act_trivially(self):
        with pytest.raises(InputError, match="identity does not act trivially"):
            ActionTable(T1, chain(2), ((0, 0), (0, 0)))

    def test_composition(self):
        # t² = t but t·1 = 0 and t·0 = 1 would give t·(t·1) = 1
        with pytest.raises(InputError, match="s·\\(t·x\\) != st·x"):
            ActionTable(T1, chain(2), ((0, 1), (1, 0)))

    def test_order_preserving(self):
        Z2 = cyclic_group(2)
        with pytest.raises(InputError, match="not order-preserving"):
            ActionTable(Z2, chain(2), ((0, 1), (1, 0)))

    def test_shape(self):
        with pytest.raises(InputError, match="must be 2x2"):
            ActionTable(T1, chain(2), ((0, 1),))


class TestPartialAction:
    def test_unit_law(self):
        with pytest.raises(InputError, match="1·x must be defined"):
            PartialActionTable(T1, chain(2), ((0, None), (0, None)))

    def test_partial_action_law(self):
        # t·(t·2) = t·1 = 0 is defined but t²·2 = t·2 = 1
        with pytest.raises(InputError, match="partial action"):
            PartialActionTable(T1, chain(3), ((0, 1, 2), (0, 0, 1)))

    def test_domain(self):
        pa = PartialActionTable(T1, chain(2), ((0, 1), (0, None)))
        assert pa.domain(1) == frozenset({0})
        assert not pa.is_total()


class TestChecks:
    """Test strong, full, order-preserving and conditions (A)/(B)."""

    def test_strong_failure(self):
        # t·1 = 1 and st·1 = t·1 defined, but s·1 undefined
        pa = PartialActionTable(T3, chain(2), ((0, 1), (0, None), (0, 1)))
        result = check_strong(pa)
        assert not result.passed
        assert result.witness == {"s": 1, "t": 2, "x": 1}

    def test_full_failure(self):
        pa = PartialActionTable(T1, chain(2), ((0, 1), (None, None)))
        assert check_full(pa).witness == {"t": 1}

    def test_domain_not_downward_closed(self):
        pa = PartialActionTable(T1, chain(2), ((0, 1), (None, 1)))
        result = check_order_preserving(pa)
        assert not result.passed
        assert result.witness == {"t": 1, "x": 0, "y": 1, "reason": "domain not downward closed"}

    def test_all_total_actions_pass(self):
        for T in small_monoids()[:4]:
            for X in (chain(2), chain(3)):
                for a in enumerate_actions(T, X):
                    report = check_action(a.as_partial())
                    assert report.passed, report.failures()

    def test_conditions_AB(self):
        a = ActionTable(T1, chain(3), ((0, 1, 2), (0, 1, 1)))
        Y = Subsemilattice(a.space, (0, 2))
        cond_a, cond_b = check_conditions_AB(a, Y)
        assert cond_a.passed
        assert cond_b.passed

    def test_condition_b_fails(self):
        # t sends the whole chain to 0, which is outside Y = {1, 2}
        a = ActionTable(T1, chain(3), ((0, 1, 2), (0, 0, 0)))
        _, cond_b = check_conditions_AB(a, Subsemilattice(a.space, (1, 2)))
        assert cond_b.witness == {"t": 1}

    def test_condition_a_fails(self):
        # e = 1 <= f = 2 and t·2 = 2 ∈ Y, but t·1 = 0 ∉ Y
        a = ActionTable(T1, chain(3), ((0, 1, 2), (0, 0, 2)))
        cond_a, _ = check_conditions_AB(a, Subsemilattice(a.space, (1, 2)))
        assert not cond_a.passed
        assert cond_a.witness == {"t": 1, "e": 1, "f": 2}

    def test_ab_needs_same_space(self):
        a = ActionTable(T1, chain(2), ((0, 1), (0, 0)))
        with pytest.raises(InputError, match="acted-on semilattice"):
            check_conditions_AB(a, Subsemilattice(chain(3), (2,)))

    def test_check_action_ab_needs_total(self):
        a = ActionTable(T1, chain(2), ((0, 1), (0, 0)))
        with pytest.raises(InputError, match="need a total action"):
            check_action(a.as_partial(), ysub=Subsemilattice(a.space, (0, 1)))


def test_restriction_is_strong_full_order_preserving():
    a = ActionTable(T1, chain(3), ((0, 1, 2), (0, 1, 1)))
    pa = restrict_action(a, Subsemilattice(a.space, (0, 2)))
    assert pa.act == ((0, 1), (0, None))
    assert check_action(pa).passed


def test_order_preserving_maps_of_chain():
    # monotone self-maps of a 2-chain: 00, 01, 11
    assert sorted(order_preserving_maps(chain(2))) == [(0, 0), (0, 1), (1, 1)]
