"""Tests for rebuilding a monoid with a proper basis as a 𝒬ℓ."""

from collections import Counter

import pytest

from app.core.exceptions import InputError
from app.logic.fixtures import (
    build_subset_expansion,
    chain,
    cyclic_group,
    diamond,
    non_strong_basis,
    ql_instances,
    small_monoids,
)
from app.logic.laws import CanonicalStep, check_atomic, check_basis, check_proper
from app.logic.order_core import Subsemilattice
from app.logic.pl import pl_table
from app.logic.ql import QlContext
from app.logic.reconstruct import (
    AbstractQ,
    certify_basis,
    induce_partial_action,
    quotient_T,
    rebuild_and_theta,
)

THETA_CHECKS = {
    "rebuilt_conditions_AB",
    "atoms_to_basis",
    "canonical_forms_preserved",
    "elements_reached",
    "theta_bijective",
    "theta_preserves_length",
    "theta_plus",
    "theta_star",
    "theta_multiplicative",
    "classes_reached",
}

CERTIFICATE_CHECKS = {"H5_lift", "proper", "sigma_by_stars", "unique_canonical_forms"}


@pytest.fixture(scope="module")
def family() -> list[QlContext]:
    chains = list(ql_instances(monoids=small_monoids()[1:], spaces=[chain(2), chain(3)], limit=8))
    diamonds = list(ql_instances(monoids=small_monoids()[1:4], spaces=[diamond()], limit=6))
    return chains + diamonds


class TestF1:
    """Test reconstruction of 𝒬ℓ over T = {1, t} acting on e < 1."""

    def test_quotient(self, f1_ql):
        quotient = quotient_T(AbstractQ.from_ql(f1_ql, 3))
        assert quotient.monoid.n == 2
        assert quotient.monoid.mul == ((0, 1), (1, 1))
        assert quotient.monoid.label(0) == "1"
        assert quotient.monoid.label(1).startswith("[")
        assert all(check.passed for check in quotient.checks)

    def test_induced_action_is_total(self, f1_ql):
        induced = induce_partial_action(AbstractQ.from_ql(f1_ql, 3))
        assert induced.report.passed
        assert induced.action.is_total()
        assert induced.report.e_size == 2

    def test_report(self, f1_ql):
        report = rebuild_and_theta(AbstractQ.from_ql(f1_ql, 4))
        assert report.passed, [c for c in report.checks if not c.passed]
        assert report.elements == 4
        assert report.t_table == [[0, 1], [1, 1]]
        assert len(report.first_hit_length) == 2
        assert report.first_hit_length["1"] == 1
        assert THETA_CHECKS <= {check.name for check in report.checks}
        assert CERTIFICATE_CHECKS <= {check.name for check in report.checks}

    def test_bottom_only(self, f1):
        qctx = QlContext(f1, Subsemilattice(f1.X, (0,)))
        report = rebuild_and_theta(AbstractQ.from_ql(qctx, 3))
        assert report.passed
        assert report.elements == 2


class TestInstanceFamily:
    def test_enough_instances(self, family):
        assert len(family) >= 10

    def test_every_instance_reconstructs(self, family):
        for qctx in family:
            report = rebuild_and_theta(AbstractQ.from_ql(qctx, 3))
            assert report.passed, [c for c in report.checks if not c.passed]

    def test_every_canonical_step_is_exercised(self, family, diamond_ctx):
        totals: Counter[str] = Counter()
        X = diamond_ctx.X
        whole = QlContext(diamond_ctx, Subsemilattice(X, tuple(X.elements())))
        for qctx in [*family, whole]:
            totals.update(rebuild_and_theta(AbstractQ.from_ql(qctx, 3)).branch_counts)
        for step in CanonicalStep:
            assert totals[step.value] > 0, step


class TestTables:
    def test_pl_table_of_f1(self, f1):
        table, _ = pl_table(f1, 4)
        report = rebuild_and_theta(AbstractQ.from_table(table, bound=3))
        assert report.passed, [c for c in report.checks if not c.passed]
        assert report.elements == 4
        assert report.t_table == [[0, 1], [1, 1]]

    def test_subset_expansion_of_z2_is_not_a_basis(self):
        """H = all of 𝒮(Z2) is atomic and proper, but ({1},a) has two canonical forms."""
        q = AbstractQ.from_table(build_subset_expansion(cyclic_group(2)), bound=2)
        assert check_atomic(q.structure, q.atoms).passed
        assert check_proper(q.structure, q.atoms).passed
        uniqueness = check_basis(q.structure, q.atoms, 2).check("unique_canonical_forms")
        assert not uniqueness.passed
        assert len(uniqueness.witness["forms"]) >= 2

        report = rebuild_and_theta(q)
        assert not report.passed
        failed = {check.name for check in report.checks if not check.passed}
        assert "unique_canonical_forms" in failed
        assert failed <= {check.name for check in certify_basis(q)}
        assert not THETA_CHECKS & {check.name for check in report.checks}
        assert report.t_table == [[0, 1], [1, 0]]

    def test_certificate_names_each_suite(self, f1_ql):
        names = [check.name for check in certify_basis(AbstractQ.from_ql(f1_ql, 3))]
        assert names[0] == "H1_projections_in_H"
        assert {"proper", "atom_product_criterion"} <= set(names)

    def test_atom_out_of_range(self):
        table = build_subset_expansion(cyclic_group(2))
        with pytest.raises(InputError, match="not an element") as exc_info:
            AbstractQ.from_table(table, atoms=[0, 99])
        assert exc_info.value.witness == {"atom": 99}


class TestNonStrong:
    """A basis whose induced partial action is not strong."""

    def test_basis_is_not_atomic(self):
        structure, H = non_strong_basis()
        assert not check_atomic(structure, H).check("H5_lift").passed

    def test_reconstruction_stops_at_the_action(self):
        structure, H = non_strong_basis()
        report = rebuild_and_theta(AbstractQ(structure, H, 3))
        assert not report.passed
        failed = {check.name for check in report.checks if not check.passed}
        assert {"H5_lift", "strong"} <= failed
        assert not THETA_CHECKS & {check.name for check in report.checks}
        assert any(None in row for row in report.partial_action)
