"""Report models shared by the checkers, the CLI and the HTTP surface."""

from typing import Any

from pydantic import BaseModel, Field, computed_field


class CheckResult(BaseModel):
    """Verdict of a single law or structural check.

    A failing check always carries a witness that reproduces the violation when
    re-evaluated through the structure's operations.
    """

    name: str = Field(..., description="Stable name of the check")
    passed: bool = Field(..., description="Whether no violation was found")
    evaluated: int = Field(default=0, ge=0, description="Number of instances evaluated")
    witness: dict[str, Any] | None = Field(default=None, description="First violation found")
    witnesses: list[dict[str, Any]] = Field(
        default_factory=list, description="Further violations, capped"
    )
    detail: str | None = Field(default=None, description="Free-form note")

    @classmethod
    def ok(cls, name: str, evaluated: int = 0, detail: str | None = None) -> "CheckResult":
        return cls(name=name, passed=True, evaluated=evaluated, detail=detail)

    @classmethod
    def fail(
        cls,
        name: str,
        witness: dict[str, Any],
        evaluated: int = 0,
        detail: str | None = None,
        witnesses: list[dict[str, Any]] | None = None,
    ) -> "CheckResult":
        return cls(
            name=name,
            passed=False,
            evaluated=evaluated,
            witness=witness,
            witnesses=witnesses or [],
            detail=detail,
        )


class LawReport(BaseModel):
    """Per-law verdicts of one suite run against one structure."""

    suite: str = Field(..., description="Suite name, e.g. left-ehresmann")
    structure: str = Field(..., description="Name of the structure checked")
    bound: int | None = Field(default=None, description="Length bound for bounded structures")
    exhaustive: bool = Field(default=True, description="Whether every tuple was evaluated")
    sample_size: int | None = Field(default=None, description="Random tuples drawn when sampling")
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


class GlobalizationReport(BaseModel):
    """Output of globalisation: the quotient, the big semilattice and the structural checks."""

    sigma_classes: int = Field(..., ge=0, description="Classes of the equivalence on T x Y")
    tau_classes: int = Field(..., ge=0, description="Classes after collapsing the preorder")
    space_size: int = Field(..., ge=0, description="Number of order ideals")
    classes: list[list[int]] = Field(
        default_factory=list, description="Representative (t, e) pair of each class"
    )
    ideals: list[list[int]] = Field(default_factory=list, description="Class ids of each ideal")
    embedding: list[int] = Field(default_factory=list, description="Ideal index of each e in Y")
    action: list[list[int]] = Field(default_factory=list, description="Global action table")
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class InducedActionReport(BaseModel):
    """The monoid Q/σ and its partial action on the projections."""

    t_size: int = Field(..., ge=1)
    t_table: list[list[int]]
    e_size: int = Field(..., ge=1)
    act: list[list[int | None]]
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class IsoReport(BaseModel):
    """Reconstruction of Q from its proper basis and verification of the isomorphism."""

    bound: int | None = Field(default=None, description="Canonical length bound of the enumeration")
    elements: int = Field(default=0, ge=0, description="Elements of Q enumerated")
    t_table: list[list[int]] = Field(default_factory=list)
    partial_action: list[list[int | None]] = Field(default_factory=list)
    sigma_classes: int = 0
    tau_classes: int = 0
    space_size: int = 0
    atom_map: list[dict[str, str]] = Field(default_factory=list)
    branch_counts: dict[str, int] = Field(default_factory=dict)
    first_hit_length: dict[str, int] = Field(
        default_factory=dict, description="Canonical length at which each T class is first reached"
    )
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class StageReport(BaseModel):
    """Outcome of one pipeline stage."""

    name: str
    kind: str
    passed: bool
    error: dict[str, Any] | None = None
    reports: list[LawReport | GlobalizationReport | IsoReport | InducedActionReport] = Field(
        default_factory=list
    )


class PipelineReport(BaseModel):
    """Aggregate of all stages run, in order; stops at the first failing stage."""

    stages: list[StageReport] = Field(default_factory=list)
    halted_at: str | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(stage.passed for stage in self.stages)


class ElementResult(BaseModel):
    """Result of a single element operation such as ``pl mul`` or ``ql rep``."""

    operation: str
    inputs: list[str] = Field(default_factory=list, description="Arguments as normal forms")
    result: str | bool | int = Field(..., description="Rendered value")
    detail: dict[str, Any] = Field(default_factory=dict)
