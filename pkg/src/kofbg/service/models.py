"""Request and response models shared by the HTTP service and the CLI.

The JSON spec-file format is version 1:

    {"version": 1,
     "spec": {"type": "finite_perm" | "crystallographic" | "fuchsian"
                      | "one_relator" | "direct", ...},
     "options": {"depth": 8, "exponent_bound": 12},
     "notes": "optional free-form provenance"}

Direct specs must carry their own nonempty `notes` field (provenance is
mandatory for data taken from the literature).  Prime keys in responses are
decimal strings; every rank is a JSON integer, never a float.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .. import assemble, cohom
from ..errors import ValidationError
from ..permgroup import group_from_generators


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FinitePermSpec(_Strict):
    type: Literal["finite_perm"]
    degree: int = Field(ge=1)
    generators: list[list[int]]


class CrystallographicSpec(_Strict):
    type: Literal["crystallographic"]
    p: int
    sigma: list[list[int]]


class FuchsianSpecModel(_Strict):
    type: Literal["fuchsian"]
    genus: int = Field(ge=0)
    periods: list[int] = []


class OneRelatorSpecModel(_Strict):
    type: Literal["one_relator"]
    generators: list[str]
    relator: str


class CentralizerRecordModel(_Strict):
    betti: list[int]


class DirectSpecModel(_Strict):
    type: Literal["direct"]
    betti: list[int]
    centralizers: dict[str, list[CentralizerRecordModel]] = {}
    notes: str = Field(min_length=1)
    trivial_centralizer_cohomology: bool = False
    full_weyl_groups: bool = False

    @field_validator("centralizers")
    @classmethod
    def _prime_keys(cls, value):
        for key in value:
            if not key.isdigit():
                raise ValueError(f"prime key {key!r} must be a decimal integer string")
        return value


GroupSpecModel = Annotated[
    Union[FinitePermSpec, CrystallographicSpec, FuchsianSpecModel, OneRelatorSpecModel, DirectSpecModel],
    Field(discriminator="type"),
]


class OptionsModel(_Strict):
    depth: int = Field(default=8, ge=2)
    exponent_bound: int = Field(default=12, ge=1)
    primes: Optional[list[int]] = None  # restrict reported p-adic parts


class SpecFileModel(_Strict):
    version: int
    spec: GroupSpecModel
    options: OptionsModel = OptionsModel()
    notes: Optional[str] = None

    @field_validator("version")
    @classmethod
    def _supported_version(cls, value):
        if value != 1:
            raise ValueError(f"unsupported spec-file version {value} (supported: 1)")
        return value

    def to_group_spec(self) -> assemble.GroupSpec:
        return _to_core(self.spec)


def _to_core(spec) -> assemble.GroupSpec:
    if isinstance(spec, FinitePermSpec):
        group = group_from_generators(spec.degree, [tuple(g) for g in spec.generators])
        return assemble.FinitePerm(group)
    if isinstance(spec, CrystallographicSpec):
        return assemble.Crystallographic(
            cohom.CrystalSpec(spec.p, tuple(tuple(row) for row in spec.sigma))
        )
    if isinstance(spec, FuchsianSpecModel):
        return assemble.Fuchsian(cohom.FuchsianSpec(spec.genus, tuple(spec.periods)))
    if isinstance(spec, OneRelatorSpecModel):
        return assemble.OneRelator(cohom.OneRelatorSpec(tuple(spec.generators), spec.relator))
    if isinstance(spec, DirectSpecModel):
        centralizers = {
            int(p): tuple(cohom.CentralizerRecord(tuple(r.betti)) for r in records)
            for p, records in spec.centralizers.items()
        }
        return assemble.Direct(
            cohom.DirectDataSpec(
                tuple(spec.betti),
                centralizers,
                spec.notes,
                spec.trivial_centralizer_cohomology,
                spec.full_weyl_groups,
            )
        )
    raise ValidationError(f"unknown spec variant {type(spec).__name__}")


# ---------------------------------------------------------------------------
# responses


class KPartModel(_Strict):
    rational_rank: int
    betti: list[int]
    p_adic: dict[str, int]


class NoteModel(_Strict):
    code: str
    message: str
    data: dict = {}


class RingStructureModel(_Strict):
    prime: str
    basis: list[list[int]]
    constants: list[list[list[int]]]


class RingModel(_Strict):
    available: bool
    kind: Optional[str] = None
    reason: Optional[str] = None
    law: Optional[str] = None
    p_adic_ranks: dict[str, int] = {}
    sylow_constants: list[RingStructureModel] = []


class ReportModel(_Strict):
    k0: KPartModel
    k1: KPartModel
    ring: RingModel
    notes: list[NoteModel] = []


def _part_model(part: assemble.KPart) -> KPartModel:
    return KPartModel(
        rational_rank=part.rational_rank,
        betti=list(part.betti),
        p_adic={str(p): r for p, r in sorted(part.p_adic.items())},
    )


def report_from_result(result: assemble.KRationalResult) -> ReportModel:
    ring = result.ring
    constants = [
        RingStructureModel(
            prime=str(p),
            basis=[list(row) for row in rs.basis],
            constants=[[list(v) for v in row] for row in rs.constants],
        )
        for p, rs in sorted(ring.sylow_constants.items())
    ]
    return ReportModel(
        k0=_part_model(result.k0),
        k1=_part_model(result.k1),
        ring=RingModel(
            available=ring.available,
            kind=ring.kind,
            reason=ring.reason,
            law=ring.law,
            p_adic_ranks={str(p): r for p, r in sorted(ring.p_adic_ranks.items())},
            sylow_constants=constants,
        ),
        notes=[NoteModel(code=n.code, message=n.message, data=dict(n.data)) for n in result.notes],
    )


class ClassModel(_Strict):
    representative: str
    size: int
    element_order: int
    centralizer_order: int


class ValueModel(_Strict):
    coeffs: list[str]
    text: str


class CharacterTableModel(_Strict):
    order: int
    exponent: int
    classes: list[ClassModel]
    degrees: list[int]
    values: list[list[ValueModel]]


class SelfcheckRequestModel(_Strict):
    max_order: int = Field(default=24, ge=1)
    depth: int = Field(default=8, ge=2)
    seed: int = 0
    inject_fault: bool = False


class CheckModel(_Strict):
    name: str
    status: Literal["pass", "fail", "inconclusive-at-depth"]
    detail: str = ""


class SelfcheckReportModel(_Strict):
    status: Literal["pass", "fail", "inconclusive-at-depth"]
    counts: dict[str, int]
    checks: list[CheckModel]


class ErrorModel(_Strict):
    error: str
    pointer: Optional[str] = None


_TAG_NAMES = {"finite_perm", "crystallographic", "fuchsian", "one_relator", "direct"}


def error_pointer(loc: tuple) -> str:
    """JSON pointer for a pydantic error location, eliding union tags."""
    parts = []
    for item in loc:
        if isinstance(item, str) and item in _TAG_NAMES:
            continue
        if isinstance(item, str) and item.startswith("function-after"):
            continue
        parts.append(str(item))
    return "/" + "/".join(parts)
