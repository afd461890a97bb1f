"""Planted single-entry corruptions are each caught by a checker."""

from dataclasses import replace

import pytest

from app.core.exceptions import InputError
from app.logic.actions import ActionTable, PartialActionTable, check_action
from app.logic.fixtures import chain, cyclic_monoid
from app.logic.globalization import globalize, verify_globalisation
from app.logic.laws import BiunaryTable, check_left_ehresmann
from app.logic.order_core import Semilattice
from app.logic.pl import PlContext, PlElement, pl_table
from app.logic.reconstruct import AbstractQ, rebuild_and_theta

T1 = cyclic_monoid(1, 1, "t")


def test_semilattice_meet():
    meet = [[min(x, y) for y in range(3)] for x in range(3)]
    meet[2][1] = 0
    with pytest.raises(InputError, match="semilattice") as exc_info:
        Semilattice(3, tuple(map(tuple, meet)), 2)
    assert exc_info.value.witness is not None


def test_partial_action_entry():
    # t·0 removed while t·1 stays defined: the domain is no longer an order ideal
    pa = PartialActionTable.unchecked(T1, chain(2), ((0, 1), (None, 0)))
    report = check_action(pa)
    assert not report.passed
    check = report.check("order_preserving")
    assert not check.passed
    assert check.witness["t"] == 1


def test_global_action_entry():
    pa = PartialActionTable(T1, chain(2), ((0, 1), (0, None)))
    g = globalize(pa)
    act = [list(row) for row in g.action.act]
    assert act[1][2] == 3
    act[1][2] = 4
    corrupted = replace(g, action=ActionTable.unchecked(T1, g.space, act))
    report = verify_globalisation(corrupted, pa)
    assert not report.passed
    check = next(c for c in report.checks if c.name == "principal_ideal_action")
    assert not check.passed
    assert (check.witness["got"], check.witness["expected"]) == (4, 3)


def test_pl_plus_entry(f1: PlContext):
    table, elements = pl_table(f1, 4)
    te = elements.index(PlElement(1, ((0, 0),)))
    plus_map = list(table.plus_map)
    plus_map[te] = table.core.one
    corrupted = BiunaryTable(table.core, tuple(plus_map), table.star_map, "pl[4]-corrupted")
    assert check_left_ehresmann(table).passed
    report = check_left_ehresmann(corrupted)
    assert not report.passed
    assert report.failures()[0].witness


def test_star_entry_of_a_basis_table(f1: PlContext):
    table, _ = pl_table(f1, 4)
    assert table.star_map is not None
    assert rebuild_and_theta(AbstractQ.from_table(table, bound=3)).passed
    projections = table.projections()
    x = next(x for x in table.elements() if x not in projections)
    # point x* at the other projection
    star_map = list(table.star_map)
    star_map[x] = next(e for e in projections if e != star_map[x])
    corrupted = BiunaryTable(table.core, table.plus_map, tuple(star_map), "pl[4]-bad-star")
    report = rebuild_and_theta(AbstractQ.from_table(corrupted, bound=3))
    assert not report.passed
