"""Command line entry point ``ehresmann``.

Every subcommand prints one JSON document on stdout. Exit codes: 0 when every
check passes, 1 when a law or isomorphism check fails, 2 on bad input or an
internal error.
"""

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import Any

import uvicorn
from pydantic import BaseModel

from app.config import settings
from app.core.exceptions import ExitCode, InputError
from app.core.logging import get_logger, setup_logging
from app.logic.laws import SUITES
from app.models.structures import WorkspaceConfig
from app.services.operations import FIXTURE_KINDS, PL_OPERATIONS, QL_OPERATIONS, operations
from app.services.pipeline import run_pipeline
from app.services.workspace import Workspace

logger = get_logger(__name__)


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bound", type=int, help="Canonical length bound")
    parser.add_argument("--seed", type=int, help="Seed of every sampler")
    parser.add_argument("--sample-size", dest="sample_size", type=int)
    parser.add_argument("--exhaustive-limit", dest="exhaustive_limit", type=int)


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="ehresmann",
        description="Build and check left Ehresmann monoids and partial actions.",
    )
    parser.add_argument("--log-level", dest="log_level", help="Overrides LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="Load a workspace and run construction checks")
    p.add_argument("file", type=Path)

    p = commands.add_parser("check-action", help="Check properties of a (partial) action")
    p.add_argument("file", type=Path)
    p.add_argument("--action", required=True)
    p.add_argument("--strong", action="store_true")
    p.add_argument("--full", action="store_true")
    p.add_argument("--order", action="store_true")
    p.add_argument("--ab", metavar="Y", help="Check conditions (A)/(B) for Y (name or list)")

    p = commands.add_parser("globalize", help="Globalise a strong full partial action")
    p.add_argument("file", type=Path)
    p.add_argument("--action", required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--verify", action="store_true", help="Include the globalisation checks")

    p = commands.add_parser("pl", help="Element operations in 𝒫ℓ(T, X)")
    p.add_argument("op", choices=PL_OPERATIONS)
    p.add_argument("args", nargs="+", help="Elements such as '1 ; (2,1)' or a word 't1 x2'")
    p.add_argument("--workspace", type=Path, required=True)
    p.add_argument("--action", required=True)

    p = commands.add_parser("ql", help="Element operations in 𝒬ℓ(T, X, Y)")
    p.add_argument("op", choices=QL_OPERATIONS)
    p.add_argument("args", nargs="+")
    p.add_argument("--workspace", type=Path, required=True)
    p.add_argument("--context", "--ctx", dest="context", required=True)

    laws = commands.add_parser("laws", help="Law suites")
    laws_commands = laws.add_subparsers(dest="laws_command", required=True)
    p = laws_commands.add_parser("check", help="Run one suite against a structure")
    p.add_argument("--suite", required=True, choices=[*SUITES, "content"])
    p.add_argument(
        "--structure", required=True, help="table:NAME, pl:ACTION, ql:CONTEXT or fixture:NAME"
    )
    p.add_argument("--workspace", type=Path)
    p.add_argument("--max-witnesses", dest="max_witnesses", type=int)
    _add_sampling(p)

    fixtures = commands.add_parser("fixtures", help="Built-in fixtures")
    emit = fixtures.add_subparsers(dest="fixtures_command", required=True).add_parser("emit")
    emit.add_argument("kind", choices=FIXTURE_KINDS)
    emit.add_argument("--group", default="z2")
    emit.add_argument("--k", type=int, default=2)
    emit.add_argument("--bound", type=int, default=3)
    emit.add_argument("--n", type=int, default=2)
    emit.add_argument("--alphabet", default="x")
    emit.add_argument("--out", type=Path)

    p = commands.add_parser("reconstruct", help="Rebuild a structure as 𝒬ℓ and verify θ")
    p.add_argument("file", type=Path, nargs="?")
    p.add_argument("--structure", required=True)
    p.add_argument("--induce-only", dest="induce_only", action="store_true")
    p.add_argument("--out", type=Path)
    _add_sampling(p)

    pipeline = commands.add_parser("pipeline", help="Pipelines of stages")
    p = pipeline.add_subparsers(dest="pipeline_command", required=True).add_parser("run")
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path)

    commands.add_parser("serve", help="Serve the HTTP API with uvicorn")
    return parser.parse_args(argv)


def _workspace(path: Path | None, args: argparse.Namespace) -> Workspace:
    ws = Workspace.from_path(path) if path is not None else Workspace()
    overrides = {
        key: getattr(args, key)
        for key in ("bound", "seed", "sample_size", "exhaustive_limit", "max_witnesses")
        if getattr(args, key, None) is not None
    }
    if overrides:
        ws.config = WorkspaceConfig.model_validate({**ws.config.model_dump(), **overrides})
    return ws


def _emit(result: BaseModel, out: Path | None = None) -> None:
    payload = result.model_dump_json(indent=2)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(payload + "\n", encoding="utf-8")
    print(payload)


def _run(args: argparse.Namespace) -> BaseModel:
    match args.command:
        case "validate":
            return _workspace(args.file, args).validate()
        case "check-action":
            return operations.check_action(
                _workspace(args.file, args),
                args.action,
                strong=args.strong,
                full=args.full,
                order=args.order,
                ab=args.ab,
            )
        case "globalize":
            ws = _workspace(args.file, args)
            return operations.globalize(ws, args.action, verify=args.verify)
        case "pl":
            return operations.pl(_workspace(args.workspace, args), args.action, args.op, args.args)
        case "ql":
            return operations.ql(_workspace(args.workspace, args), args.context, args.op, args.args)
        case "laws":
            return operations.laws(_workspace(args.workspace, args), args.suite, args.structure)
        case "fixtures":
            return operations.emit_fixture(
                args.kind,
                group=args.group,
                k=args.k,
                bound=args.bound,
                n=args.n,
                alphabet=args.alphabet,
            )
        case "reconstruct":
            ws = _workspace(args.file, args)
            if args.induce_only:
                return operations.induce(ws, args.structure)
            return operations.reconstruct(ws, args.structure)
        case "pipeline":
            return run_pipeline(args.file)
    raise InputError(f"unknown command '{args.command}'")


def _error(body: dict[str, Any]) -> None:
    print(json.dumps(body, indent=2))


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    setup_logging(args.log_level)
    if args.command == "serve":
        uvicorn.run("app.main:app", host=settings.HOST, port=settings.PORT, reload=settings.DEBUG)
        return ExitCode.OK
    try:
        result = _run(args)
    except InputError as exc:
        logger.warning(f"Input error: {exc}")
        _error(exc.to_dict())
        return ExitCode.INPUT_ERROR
    except Exception as exc:
        logger.error(f"Internal error: {exc!s}\n{traceback.format_exc()}")
        _error({"error": "internal_error", "detail": str(exc), "witness": None})
        return ExitCode.INPUT_ERROR
    _emit(result, getattr(args, "out", None))
    passed = getattr(result, "passed", True)
    return ExitCode.OK if passed else ExitCode.FAILURE


if __name__ == "__main__":
    sys.exit(main())
