"""Pipeline runner: executes the stages of a pipeline document in order."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

from app.core.exceptions import InputError
from app.core.logging import get_logger
from app.models.pipeline import PipelineDoc, StageDoc, StageKind
from app.models.reports import PipelineReport, StageReport
from app.services.operations import OperationsService, operations
from app.services.workspace import Workspace, parse_document, read_document

logger = get_logger(__name__)

DEFAULT_LAW_SUITES = ("left-ehresmann", "star")

Report = Any


def _need(stage: StageDoc, field: str) -> str:
    value = getattr(stage, field)
    if value is None:
        raise InputError(f"stage '{stage.name}' needs '{field}'", {"stage": stage.name})
    return str(value)


class PipelineService:
    """Runs pipeline stages against one workspace, halting at the first failure."""

    def __init__(self, ops: OperationsService = operations) -> None:
        self.ops = ops
        self._handlers: dict[StageKind, Callable[[Workspace, StageDoc], list[Report]]] = {
            StageKind.VALIDATE: lambda ws, st: [ws.validate()],
            StageKind.CHECK_ACTION: lambda ws, st: [
                self.ops.check_action(ws, _need(st, "action"), ab=st.ysub)
            ],
            StageKind.GLOBALIZE: lambda ws, st: [self.ops.globalize(ws, _need(st, "action"))],
            StageKind.LAWS: lambda ws, st: [
                self.ops.laws(ws, suite, _need(st, "structure"), st.bound)
                for suite in (st.suites or DEFAULT_LAW_SUITES)
            ],
            StageKind.INDUCE: lambda ws, st: [
                self.ops.induce(ws, _need(st, "structure"), st.bound)
            ],
            StageKind.RECONSTRUCT: lambda ws, st: [
                self.ops.reconstruct(ws, _need(st, "structure"), st.bound)
            ],
        }

    def run_stage(self, ws: Workspace, stage: StageDoc) -> StageReport:
        """Run one stage; input errors become a failed stage carrying the error body."""
        logger.info(f"Stage '{stage.name}' ({stage.kind})")
        try:
            reports = self._handlers[stage.kind](ws, stage)
        except InputError as exc:
            logger.warning(f"Stage '{stage.name}' rejected its input: {exc}")
            return StageReport(name=stage.name, kind=stage.kind, passed=False, error=exc.to_dict())
        passed = all(report.passed for report in reports)
        return StageReport(name=stage.name, kind=stage.kind, passed=passed, reports=reports)

    def run(self, doc: PipelineDoc) -> PipelineReport:
        """Run every stage in order.

        Args:
            doc: Workspace plus stages

        Returns:
            PipelineReport: Reports of the stages run; ``halted_at`` names the
                failing stage, if any
        """
        ws = Workspace(doc)
        report = PipelineReport()
        for stage in doc.stages:
            result = self.run_stage(ws, stage)
            report.stages.append(result)
            if not result.passed:
                report.halted_at = stage.name
                logger.warning(f"Pipeline halted at stage '{stage.name}'")
                break
        verdict = "PASS" if report.passed else "FAIL"
        logger.info(f"Pipeline: {verdict} ({len(report.stages)} stages)")
        return report


pipeline_service = PipelineService()


def run_pipeline(source: PipelineDoc | dict[str, Any] | str | Path) -> PipelineReport:
    """Run a pipeline given as a document, decoded data or a file path.

    Raises:
        InputError: If the document does not parse or a name is declared twice
    """
    if isinstance(source, PipelineDoc):
        doc = source
    else:
        data = source if isinstance(source, dict) else read_document(source)
        doc = parse_document(PipelineDoc, data)
    return pipeline_service.run(doc)
