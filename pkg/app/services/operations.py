"""Service running the single-shot operations behind the CLI and the HTTP API."""

from typing import Any

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.logic.actions import check_action
from app.logic.fixtures import (
    SUBSET_EXPANSION_GROUPS,
    build_fla,
    build_free_subset_expansion,
    build_relation_monoid,
    build_subset_expansion,
)
from app.logic.globalization import globalize, verify_globalisation
from app.logic.laws import SUITES, run_suite
from app.logic.pl import (
    PlStructure,
    c_T,
    check_content_morphism,
    mul,
    parse_element,
    parse_word,
    plus,
    product,
    reduce,
    star,
    to_h_canonical,
)
from app.logic.ql import QlStructure, q_membership, q_normalize_sigma_rep, q_sigma_eq
from app.logic.reconstruct import induce_partial_action, rebuild_and_theta
from app.models.reports import (
    ElementResult,
    GlobalizationReport,
    InducedActionReport,
    IsoReport,
    LawReport,
)
from app.models.structures import TableDoc, WordExpansionDoc
from app.services.workspace import Workspace

logger = get_logger(__name__)

PL_OPERATIONS = ("reduce", "mul", "plus", "star", "ct", "canonical")
QL_OPERATIONS = ("member", "sigma-eq", "rep")
FIXTURE_KINDS = ("subset-expansion", "fla", "relations", "free-subset")


def _arity(op: str, args: list[str], expected: int | None) -> None:
    if expected is None:
        if not args:
            raise InputError(f"'{op}' needs at least one argument")
    elif len(args) != expected:
        raise InputError(f"'{op}' takes {expected} argument(s), got {len(args)}", {"args": args})


class OperationsService:
    """Runs one operation against a workspace and returns its report."""

    def check_action(
        self,
        ws: Workspace,
        action: str,
        *,
        strong: bool = False,
        full: bool = False,
        order: bool = False,
        ab: str | None = None,
    ) -> LawReport:
        """Check properties of an action; with no flag set, every property is checked.

        Args:
            ws: Workspace holding the action
            action: Action name
            strong: Check strongness
            full: Check fullness
            order: Check order-preservation
            ab: Y for conditions (A)/(B), by name or inline list; needs a total action

        Returns:
            LawReport: One check per requested property
        """
        if not (strong or full or order or ab):
            strong = full = order = True
        pa = ws.partial_action(action)
        total = ysub = None
        if ab is not None:
            total = ws.action(action)
            ysub = ws.ysub(ab, total)
        return check_action(
            pa, strong=strong, full=full, order=order, total=total, ysub=ysub, name=action
        )

    def globalize(self, ws: Workspace, action: str, *, verify: bool = True) -> GlobalizationReport:
        """Globalise a partial action; without ``verify`` the report carries no checks."""
        pa = ws.partial_action(action)
        g = globalize(pa, verify=False)
        report = verify_globalisation(g, pa)
        if not verify:
            report = report.model_copy(update={"checks": []})
        return report

    def pl(self, ws: Workspace, action: str, op: str, args: list[str]) -> ElementResult:
        """Evaluate one 𝒫ℓ operation; arguments use the textual element syntax.

        Raises:
            InputError: On an unknown operation or a malformed argument
        """
        ctx = ws.pl_context(action)
        if op == "reduce":
            _arity(op, args, 1)
            word = parse_word(ctx, args[0])
            value = reduce(ctx, word)
            return ElementResult(operation=op, inputs=args, result=str(value))
        if op not in PL_OPERATIONS:
            raise InputError(f"unknown pl operation '{op}'", {"operations": list(PL_OPERATIONS)})
        _arity(op, args, None if op == "mul" else 1)
        elements = [parse_element(ctx, text) for text in args]
        inputs = [str(a) for a in elements]
        if op == "mul":
            value = mul(ctx, *elements) if len(elements) == 2 else product(ctx, elements)
            return ElementResult(operation=op, inputs=inputs, result=str(value))
        a = elements[0]
        if op == "plus":
            return ElementResult(operation=op, inputs=inputs, result=str(plus(ctx, a)))
        if op == "star":
            return ElementResult(operation=op, inputs=inputs, result=str(star(ctx, a)))
        if op == "ct":
            t = c_T(ctx, a)
            return ElementResult(
                operation=op, inputs=inputs, result=t, detail={"label": ctx.T.label(t)}
            )
        form = to_h_canonical(ctx, a)
        return ElementResult(
            operation=op,
            inputs=inputs,
            result=str(form),
            detail={"length": len(form), "atoms": [[h.t, h.e] for h in form]},
        )

    def ql(self, ws: Workspace, context: str, op: str, args: list[str]) -> ElementResult:
        """Evaluate one 𝒬ℓ operation.

        Raises:
            InputError: On an unknown operation, or when an argument is not a member
        """
        qctx = ws.ql_context(context)
        if op not in QL_OPERATIONS:
            raise InputError(f"unknown ql operation '{op}'", {"operations": list(QL_OPERATIONS)})
        _arity(op, args, 2 if op == "sigma-eq" else 1)
        elements = [parse_element(qctx.pl, text) for text in args]
        inputs = [str(a) for a in elements]
        if op == "member":
            check = q_membership(qctx, elements[0])
            detail: dict[str, Any] = {"witness": check.witness} if check.witness else {}
            return ElementResult(operation=op, inputs=inputs, result=check.passed, detail=detail)
        if op == "sigma-eq":
            same = q_sigma_eq(qctx, elements[0], elements[1])
            return ElementResult(operation=op, inputs=inputs, result=same)
        rep = q_normalize_sigma_rep(qctx, elements[0])
        return ElementResult(
            operation=op, inputs=inputs, result=str(rep), detail={"t": rep.t, "e": rep.e}
        )

    def laws(
        self, ws: Workspace, suite: str, structure: str, bound: int | None = None
    ) -> LawReport:
        """Run one law suite against a structure reference.

        The ``content`` suite checks that the σ-content map is a morphism onto T
        and only applies to ``pl:`` and ``ql:`` references.
        """
        cfg = ws.config
        bound = bound or cfg.bound
        s, H = ws.structure(structure, bound)
        if suite == "content":
            if isinstance(s, PlStructure):
                ctx = s.ctx
            elif isinstance(s, QlStructure):
                ctx = s.qctx.pl
            else:
                raise InputError("suite 'content' needs a pl: or ql: structure")
            return check_content_morphism(ctx, s.elements(), name=s.name, **cfg.sampling())
        if suite not in SUITES:
            raise InputError(f"unknown suite '{suite}'", {"suites": [*SUITES, "content"]})
        return run_suite(
            suite, s, H, bound=bound, max_witnesses=cfg.max_witnesses, **cfg.sampling()
        )

    def induce(
        self, ws: Workspace, structure: str, bound: int | None = None
    ) -> InducedActionReport:
        q = ws.abstract_q(structure, bound)
        return induce_partial_action(q).report

    def reconstruct(self, ws: Workspace, structure: str, bound: int | None = None) -> IsoReport:
        """Rebuild a structure from its distinguished subset and verify θ."""
        q = ws.abstract_q(structure, bound)
        return rebuild_and_theta(q, **ws.config.sampling())

    def emit_fixture(
        self,
        kind: str,
        *,
        group: str = "z2",
        k: int = 2,
        bound: int = 3,
        n: int = 2,
        alphabet: str = "x",
    ) -> TableDoc | WordExpansionDoc:
        """Build a fixture and render it as a document.

        Raises:
            InputError: On an unknown kind or group
        """
        if kind == "subset-expansion":
            if group not in SUBSET_EXPANSION_GROUPS:
                raise InputError(
                    f"unknown group '{group}'", {"groups": sorted(SUBSET_EXPANSION_GROUPS)}
                )
            table = build_subset_expansion(SUBSET_EXPANSION_GROUPS[group]())
            return TableDoc.from_domain(table)
        if kind == "relations":
            return TableDoc.from_domain(build_relation_monoid(n))
        if kind == "fla":
            return WordExpansionDoc.from_expansion(build_fla(k, bound))
        if kind == "free-subset":
            return WordExpansionDoc.from_expansion(build_free_subset_expansion(alphabet, bound))
        raise InputError(f"unknown fixture '{kind}'", {"fixtures": list(FIXTURE_KINDS)})


operations = OperationsService()
