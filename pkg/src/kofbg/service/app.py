"""FastAPI application wrapping the calculator.

Three endpoints mirror the CLI subcommands: POST /compute evaluates one
group spec, POST /chartab prints the exact character table of a finite
permutation spec, POST /selfcheck runs the verification corpus.  The
handler functions are plain model-to-model functions so the CLI can call
them in process.
"""

from __future__ import annotations

from fastapi import FastAPI

from .. import __version__
from ..chartab import character_table
from ..assemble import FinitePerm, k_rational
from ..errors import KofbgError, ResourceError, ValidationError
from ..promod import INCONCLUSIVE, PASS
from ..selfcheck import exit_status, run_selfcheck, summarize
from .models import (
    CharacterTableModel,
    CheckModel,
    ClassModel,
    ReportModel,
    SelfcheckReportModel,
    SelfcheckRequestModel,
    SpecFileModel,
    ValueModel,
    report_from_result,
)


def compute_report(spec_file: SpecFileModel) -> ReportModel:
    report = report_from_result(k_rational(spec_file.to_group_spec()))
    primes = spec_file.options.primes
    if primes is not None:
        keep = {str(p) for p in primes}
        for part in (report.k0, report.k1):
            part.p_adic = {p: r for p, r in part.p_adic.items() if p in keep}
        report.ring.p_adic_ranks = {
            p: r for p, r in report.ring.p_adic_ranks.items() if p in keep
        }
        report.ring.sylow_constants = [
            rs for rs in report.ring.sylow_constants if rs.prime in keep
        ]
    return report


def chartab_report(spec_file: SpecFileModel) -> CharacterTableModel:
    group_spec = spec_file.to_group_spec()
    if not isinstance(group_spec, FinitePerm):
        raise ValidationError("character tables are only defined for finite_perm specs")
    table = character_table(group_spec.group)
    classes = [
        ClassModel(
            representative=str(c.representative),
            size=c.size,
            element_order=c.element_order,
            centralizer_order=c.centralizer_order,
        )
        for c in table.classes
    ]
    values = [
        [ValueModel(coeffs=[str(x) for x in v.coeffs], text=str(v)) for v in row]
        for row in table.rows
    ]
    return CharacterTableModel(
        order=table.group.order,
        exponent=table.exponent,
        classes=classes,
        degrees=list(table.degrees),
        values=values,
    )


def selfcheck_report(request: SelfcheckRequestModel) -> SelfcheckReportModel:
    outcomes = run_selfcheck(
        max_order=request.max_order,
        depth=request.depth,
        seed=request.seed,
        inject_fault=request.inject_fault,
    )
    code = exit_status(outcomes)
    status = PASS if code == 0 else (INCONCLUSIVE if code == 3 else "fail")
    return SelfcheckReportModel(
        status=status,
        counts=summarize(outcomes),
        checks=[CheckModel(name=o.name, status=o.status, detail=o.detail) for o in outcomes],
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="kofbg",
        version=__version__,
        description="Exact calculator for the rationalized topological K-theory of classifying spaces",
    )

    @app.exception_handler(KofbgError)
    async def _domain_error(_, exc: KofbgError):
        from fastapi.responses import JSONResponse

        status = 400 if isinstance(exc, (ValidationError, ResourceError)) else 500
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/compute", response_model=ReportModel)
    def compute(spec_file: SpecFileModel) -> ReportModel:
        return compute_report(spec_file)

    @app.post("/chartab", response_model=CharacterTableModel)
    def chartab(spec_file: SpecFileModel) -> CharacterTableModel:
        return chartab_report(spec_file)

    @app.post("/selfcheck", response_model=SelfcheckReportModel)
    def selfcheck(request: SelfcheckRequestModel) -> SelfcheckReportModel:
        return selfcheck_report(request)

    return app


app = create_app()
