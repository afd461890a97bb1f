"""Tests for the law suites."""

from itertools import product

import pytest

from app.core.exceptions import InputError
from app.logic.fixtures import (
    build_relation_monoid,
    build_subset_expansion,
    chain,
    cyclic_group,
    cyclic_monoid,
    enumerate_actions,
    ql_instances,
    small_monoids,
    trivial_monoid,
)
from app.logic.laws import (
    AtomSet,
    BiunaryTable,
    CanonicalStep,
    canonical_factorizations,
    canonicalize,
    check_ample,
    check_atomic,
    check_basis,
    check_ehresmann,
    check_left_ehresmann,
    check_proper,
    check_star_left_ehresmann,
    run_suite,
    short_forms,
)
from app.logic.order_core import FinMonoid
from app.logic.pl import PlContext, PlStructure, mul, parse_element, plus
from app.logic.ql import QlStructure

PL_FAMILY = [
    PlContext(action)
    for T in small_monoids()[1:4]
    for X in (chain(2), chain(3))
    for action in enumerate_actions(T, X, limit=1)
]


def _pl_pair(ctx: PlContext, bound: int) -> tuple[PlStructure, AtomSet]:
    s = PlStructure(ctx, bound)
    return s, AtomSet(tuple(s.atoms()), s.is_atom)


def _by_render(s, text: str):
    return next(a for a in s.elements() if s.render(a) == text)


class TestVarietySuites:
    """Test the identity suites on 𝒫ℓ and on finite tables."""

    def test_f1_to_length_four(self, f1):
        s = PlStructure(f1, 4)
        for check in (check_left_ehresmann, check_star_left_ehresmann):
            report = check(s)
            assert report.passed, report.failures()
            assert report.exhaustive
            assert report.bound == 4

    def test_diamond(self, diamond_ctx):
        s = PlStructure(diamond_ctx, 3)
        assert check_left_ehresmann(s, sample_size=300).passed
        assert check_star_left_ehresmann(s, sample_size=300).passed

    def test_semilattice_with_identity_plus(self):
        X = chain(3)
        core = FinMonoid(X.n, X.meet, X.one)
        table = BiunaryTable(core, (0, 1, 2), (0, 1, 2), name="chain")
        assert check_ehresmann(table).passed

    def test_relation_monoid(self):
        relations = build_relation_monoid(2)
        assert relations.core.n == 16
        assert check_ehresmann(relations).passed
        assert check_star_left_ehresmann(relations).passed

    def test_ample_fails_in_f1_with_recheckable_witness(self, f1):
        report = check_ample(PlStructure(f1, 4))
        assert not report.passed
        w = report.check("ample").witness
        x, y = parse_element(f1, w["x"]), parse_element(f1, w["y"])
        assert str(mul(f1, x, plus(f1, y))) == w["lhs"]
        assert str(mul(f1, plus(f1, mul(f1, x, y)), x)) == w["rhs"]
        assert w["lhs"] != w["rhs"]

    def test_ample_holds_in_fla(self, fla2):
        assert check_ample(fla2).passed

    def test_sampling_is_reported(self, diamond_ctx):
        report = check_left_ehresmann(
            PlStructure(diamond_ctx, 3), sample_size=50, exhaustive_limit=10
        )
        assert not report.exhaustive
        assert report.sample_size == 50

    def test_deterministic_given_seed(self, diamond_ctx):
        s = PlStructure(diamond_ctx, 3)
        first = check_star_left_ehresmann(s, sample_size=100, seed=3, exhaustive_limit=50)
        second = check_star_left_ehresmann(s, sample_size=100, seed=3, exhaustive_limit=50)
        assert first.model_dump_json() == second.model_dump_json()


class TestSubsetExpansion:
    """Test the subset expansion of a group."""

    @pytest.fixture(scope="class")
    def z2(self) -> BiunaryTable:
        return build_subset_expansion(cyclic_group(2))

    def test_sizes(self, z2):
        assert z2.core.n == 8
        assert build_subset_expansion(trivial_monoid()).core.n == 2

    def test_not_left_cancellative(self):
        with pytest.raises(InputError, match="not left cancellative") as exc_info:
            build_subset_expansion(cyclic_monoid(1, 1))
        assert set(exc_info.value.witness) == {"a", "b", "c"}

    def test_suites(self, z2):
        H = AtomSet.of(z2.elements())
        assert check_star_left_ehresmann(z2).passed
        assert check_ample(z2).passed
        assert check_atomic(z2, H).passed
        assert check_proper(z2, H).passed

    def test_sigma_is_second_coordinate(self, z2):
        for x, y in product(z2.elements(), repeat=2):
            assert z2.sigma.same(x, y) == (x % 2 == y % 2)


class TestProperBasis:
    """Test atomic, proper and basis on the atoms of 𝒫ℓ and 𝒬ℓ."""

    def test_f1(self, f1):
        s, H = _pl_pair(f1, 4)
        assert check_atomic(s, H).passed
        proper = check_proper(s, H)
        assert proper.passed
        assert [c.name for c in proper.checks] == [
            "proper",
            "sigma_by_stars",
            "sigma_identity_class",
        ]
        basis = check_basis(s, H, 4)
        assert basis.passed
        assert basis.check("unique_canonical_forms").detail == "verified up to 4"

    @pytest.mark.parametrize("ctx", PL_FAMILY, ids=lambda c: f"T{c.T.n}-X{c.X.n}")
    def test_pl_family(self, ctx):
        s, H = _pl_pair(ctx, 4)
        for report in (check_atomic(s, H), check_proper(s, H), check_basis(s, H, 4)):
            assert report.passed, report.failures()

    def test_ql_family(self):
        family = list(
            ql_instances(monoids=small_monoids()[1:3], spaces=[chain(2), chain(3)], limit=8)
        )
        assert family
        for qctx in family:
            s = QlStructure(qctx, 4)
            H = AtomSet(tuple(s.atoms()), s.is_atom)
            for report in (check_atomic(s, H), check_proper(s, H), check_basis(s, H, 4)):
                assert report.passed, report.failures()

    def test_projections_alone(self, f1):
        s = PlStructure(f1, 4)
        H = AtomSet.of(s.projections())
        assert check_proper(s, H).passed
        assert check_basis(s, H, 4).passed

    def test_branch_counts_reported(self, diamond_ctx):
        s, H = _pl_pair(diamond_ctx, 3)
        detail = check_basis(s, H, 3).check("reduces_to_canonical").detail
        assert detail is not None
        for step in CanonicalStep:
            assert f"{step.value}=" in detail


class TestWordExpansions:
    """Test the free left ample fixture and the finite-subset expansion."""

    def test_fla_atomic_and_proper(self, fla2):
        H = fla2.atom_set()
        assert check_atomic(fla2, H).passed
        assert check_proper(fla2, H).passed

    def test_fla_two_short_factorizations(self, fla2):
        H = fla2.atom_set()
        report = check_basis(fla2, H, 2, max_witnesses=10_000)
        check = report.check("unique_canonical_forms")
        assert not check.passed
        target = "({1,x,xx,xy},xx)"
        found = [w for w in [check.witness, *check.witnesses] if w["element"] == target]
        assert len(found) == 1
        assert sorted(found[0]["forms"]) == sorted(
            [
                ["({1,x,xx,xy},1)", "({1,x,xx},xx)"],
                ["({1,x,xx,xy},x)", "({1,x},x)"],
            ]
        )

    def test_fla_short_forms(self, fla2):
        groups = canonical_factorizations(fla2, fla2.atom_set(), 2)
        value = next(v for v in groups if fla2.render(v) == "({1,x,xx,xy},xx)")
        assert len(short_forms(groups[value])) == 2

    def test_free_subset_not_proper(self, free_subset):
        H = free_subset.atom_set()
        report = check_proper(free_subset, H)
        check = report.check("proper")
        assert not check.passed
        h = _by_render(free_subset, check.witness["h"])
        k = _by_render(free_subset, check.witness["k"])
        assert h != k
        assert free_subset.sigma_key(h) == free_subset.sigma_key(k)
        assert free_subset.star(h) == free_subset.star(k)

    def test_free_subset_named_pair(self, free_subset):
        h = _by_render(free_subset, "({x},xxx)")
        k = _by_render(free_subset, "({xx},xxx)")
        assert h != k
        assert free_subset.sigma_key(h) == free_subset.sigma_key(k)
        assert free_subset.star(h) == free_subset.star(k) == free_subset.identity()


class TestCanonicalize:
    def test_steps(self, f1):
        s, _ = _pl_pair(f1, 4)
        t = parse_element(f1, "1")
        e = parse_element(f1, "0 ; (0,0)")
        form, steps = canonicalize(s, [t, e])
        assert form == (mul(f1, t, e),)
        assert sum(steps.values()) == 1

    def test_empty(self, f1):
        s, _ = _pl_pair(f1, 4)
        with pytest.raises(InputError, match="empty product"):
            canonicalize(s, [])


class TestRunSuite:
    def test_unknown_suite(self, f1):
        with pytest.raises(InputError, match="unknown suite"):
            run_suite("nope", PlStructure(f1, 2))

    def test_atom_suite_needs_atoms(self, f1):
        with pytest.raises(InputError, match="needs a distinguished subset"):
            run_suite("basis", PlStructure(f1, 2))

    def test_dispatch(self, f1):
        s, H = _pl_pair(f1, 3)
        assert run_suite("right-ehresmann", s).suite == "right-ehresmann"
        assert run_suite("basis", s, H, bound=3).bound == 3
