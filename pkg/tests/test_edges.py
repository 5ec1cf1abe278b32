"""Error-path and edge coverage that does not fit the per-module files."""

import json
import pathlib

import pytest
from fastapi.testclient import TestClient

from kofbg.cyclotomic import Cyc
from kofbg.errors import ConsistencyError, ResourceError, ValidationError
from kofbg.promod import QuotientPresentation, Tower, constant_tower, finite_abelian
from kofbg.service.app import app
from kofbg.zlattice import (
    full_lattice,
    hnf,
    mat,
    mat_mul,
    preimage_lattice,
    zero_lattice,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def test_cyc_embed_requires_divisible_conductor():
    with pytest.raises(ValidationError):
        Cyc.root_of_unity(4).embed(6)
    assert Cyc.root_of_unity(4).embed(12).conductor == 12


def test_matmul_shape_check():
    with pytest.raises(ValidationError):
        mat_mul(mat([(1, 2)]), mat([(1, 2)]))


def test_hnf_empty_needs_ambient():
    with pytest.raises(ValidationError):
        hnf([])
    assert hnf([], ambient=3).rank == 0


def test_preimage_of_zero_target_is_kernel():
    m = mat([(2, 4)])
    pre = preimage_lattice(m, zero_lattice(1))
    assert pre.basis == ((1, -2),) or pre.rank == 1


def test_quotient_presentation_validation():
    with pytest.raises(ValidationError):
        QuotientPresentation(2, full_lattice(2), full_lattice(1))
    with pytest.raises(ValidationError):
        QuotientPresentation(1, hnf([(2,)], 1), full_lattice(1))  # denominator escapes


def test_tower_composite_range():
    t = constant_tower(finite_abelian([2]), 3)
    with pytest.raises(ValidationError):
        t.composite(1, 2)
    with pytest.raises(ValidationError):
        t.composite(5, 0)


def test_chartab_respects_enumeration_cap(monkeypatch):
    from kofbg.catalog import symmetric_group
    from kofbg.chartab import character_table

    monkeypatch.setenv("KOFBG_MAX_GROUP_ORDER", "10")
    with pytest.raises(ResourceError):
        character_table(symmetric_group(4))


def test_service_maps_consistency_error_to_500(monkeypatch):
    import kofbg.service.app as service_app

    def boom(_):
        raise ConsistencyError("two routes disagreed")

    monkeypatch.setattr(service_app, "k_rational", boom)
    client = TestClient(app, raise_server_exceptions=False)
    spec = json.loads((FIXTURES / "s3.json").read_text())
    response = client.post("/compute", json=spec)
    assert response.status_code == 500
    assert "disagreed" in response.json()["error"]


def test_service_maps_resource_error_to_400(monkeypatch):
    monkeypatch.setenv("KOFBG_MAX_GROUP_ORDER", "2")
    client = TestClient(app)
    spec = json.loads((FIXTURES / "s3.json").read_text())
    response = client.post("/compute", json=spec)
    assert response.status_code == 400
    assert "cap" in response.json()["error"]


def test_extra_fields_rejected():
    from kofbg.service.models import SpecFileModel
    import pydantic

    payload = {
        "version": 1,
        "spec": {"type": "fuchsian", "genus": 2, "periods": [], "extra": 1},
    }
    with pytest.raises(pydantic.ValidationError):
        SpecFileModel.model_validate(payload)


def test_direct_prime_keys_must_be_numeric():
    from kofbg.service.models import SpecFileModel
    import pydantic

    payload = {
        "version": 1,
        "spec": {
            "type": "direct",
            "betti": [1],
            "centralizers": {"two": [{"betti": [1]}]},
            "notes": "x",
        },
    }
    with pytest.raises(pydantic.ValidationError):
        SpecFileModel.model_validate(payload)
