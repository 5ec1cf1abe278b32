"""Command-line front end.

Subcommands mirror the HTTP endpoints and share their pydantic models:

    kofbg compute <file.json>     evaluate one group spec
    kofbg chartab <file.json>     exact character table (finite_perm only)
    kofbg selfcheck [...]         run the verification corpus
    kofbg serve [...]             run the HTTP service under uvicorn

By default everything runs in process; pass --url to talk to a running
service instead.  Reports are byte-identical for identical inputs.

Exit status: 0 success/pass, 1 validation or computation error,
2 self-check failure, 3 inconclusive-at-depth.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import pydantic

from .errors import KofbgError
from .service import models
from .service.app import chartab_report, compute_report, selfcheck_report


def _emit(model: pydantic.BaseModel) -> None:
    print(json.dumps(model.model_dump(), indent=2))


def _emit_error(message: str, pointer: Optional[str] = None) -> None:
    payload = {"error": message}
    if pointer:
        payload["pointer"] = pointer
    print(json.dumps(payload, indent=2), file=sys.stderr)


def _parse_spec_file(path: str) -> Optional[models.SpecFileModel]:
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        _emit_error(f"cannot read {path}: {exc}")
        return None
    try:
        return models.SpecFileModel.model_validate_json(raw)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        _emit_error(first["msg"], models.error_pointer(tuple(first["loc"])))
        return None


def _post(url: str, path: str, payload: dict, response_model):
    import httpx

    response = httpx.post(url.rstrip("/") + path, json=payload, timeout=600.0)
    if response.status_code >= 400:
        _emit_error(f"server returned {response.status_code}: {response.text}")
        return None
    return response_model.model_validate(response.json())


def _cmd_compute(args) -> int:
    spec_file = _parse_spec_file(args.file)
    if spec_file is None:
        return 1
    try:
        if args.url:
            report = _post(args.url, "/compute", spec_file.model_dump(), models.ReportModel)
            if report is None:
                return 1
        else:
            report = compute_report(spec_file)
    except KofbgError as exc:
        _emit_error(str(exc))
        return 1
    _emit(report)
    return 0


def _cmd_chartab(args) -> int:
    spec_file = _parse_spec_file(args.file)
    if spec_file is None:
        return 1
    try:
        if args.url:
            table = _post(args.url, "/chartab", spec_file.model_dump(), models.CharacterTableModel)
            if table is None:
                return 1
        else:
            table = chartab_report(spec_file)
    except KofbgError as exc:
        _emit_error(str(exc))
        return 1
    _emit(table)
    return 0


_SELFCHECK_EXIT = {"pass": 0, "fail": 2, "inconclusive-at-depth": 3}


def _cmd_selfcheck(args) -> int:
    request = models.SelfcheckRequestModel(
        max_order=args.max_order,
        depth=args.depth,
        seed=args.seed,
        inject_fault=args.inject_fault,
    )
    try:
        if args.url:
            report = _post(args.url, "/selfcheck", request.model_dump(), models.SelfcheckReportModel)
            if report is None:
                return 1
        else:
            report = selfcheck_report(request)
    except KofbgError as exc:
        _emit_error(str(exc))
        return 1
    _emit(report)
    return _SELFCHECK_EXIT[report.status]


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kofbg",
        description="Exact rationalized K-theory of classifying spaces of discrete groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="evaluate one JSON group spec")
    compute.add_argument("file")
    compute.add_argument("--url", help="POST to a running service instead of computing locally")
    compute.set_defaults(fn=_cmd_compute)

    chartab = sub.add_parser("chartab", help="print the exact character table of a finite_perm spec")
    chartab.add_argument("file")
    chartab.add_argument("--url")
    chartab.set_defaults(fn=_cmd_chartab)

    selfcheck = sub.add_parser("selfcheck", help="run the verification corpus")
    selfcheck.add_argument("--max-order", type=int, default=24)
    selfcheck.add_argument("--depth", type=int, default=8)
    selfcheck.add_argument("--seed", type=int, default=0)
    selfcheck.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    selfcheck.add_argument("--url")
    selfcheck.set_defaults(fn=_cmd_selfcheck)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
