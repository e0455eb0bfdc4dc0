import json

import pytest
from pydantic import ValidationError

from app.schemas.homology import (
    AbGroupSchema,
    BigradedComplexSchema,
    BigradedGroupSchema,
    GradedAbGroupSchema,
    IntMatrixSchema,
    VerificationReportSchema,
)
from app.schemas.run_config import IntRange, RunConfig
from app.services.cohomring import gysin_circle_ut
from app.services.knotcomplex import build_torus_complex, khovanov_rozansky
from app.services.repspace import compare
from app.services.zlinalg import AbGroup, IntMatrix


def _through_json(schema_cls, schema):
    return schema_cls.model_validate(json.loads(schema.model_dump_json()))


def test_abgroup_round_trip():
    g = AbGroup(7, (3,))
    assert _through_json(AbGroupSchema, g.to_schema()).to_domain() == g


def test_int_matrix_round_trip():
    m = IntMatrix([[1, -2, 0], [4, 5, 6]])
    assert _through_json(IntMatrixSchema, m.to_schema()).to_domain() == m
    empty = IntMatrix.zeros(0, 3)
    assert _through_json(IntMatrixSchema, empty.to_schema()).to_domain() == empty


def test_graded_group_round_trip():
    g = gysin_circle_ut(4)
    payload = json.loads(g.to_schema().model_dump_json())
    assert payload["degrees"]["6"] == {"free": 0, "torsion": [4]}
    assert GradedAbGroupSchema.model_validate(payload).to_domain() == g


def test_bigraded_group_round_trip():
    g = khovanov_rozansky(3, 4)
    payload = json.loads(g.to_schema(3, 4).model_dump_json())
    assert payload["N"] == 3 and payload["m"] == 4
    keys = [(e["h"], e["q"]) for e in payload["groups"]]
    assert keys == sorted(keys)
    assert BigradedGroupSchema.model_validate(payload).to_domain() == g


def test_bigraded_group_schema_rejects_unsorted_entries():
    with pytest.raises(ValidationError):
        BigradedGroupSchema(N=2, m=1, groups=[{"h": 0, "q": 1, "free": 1}, {"h": 0, "q": -1, "free": 1}])


def test_bigraded_complex_round_trip():
    c = build_torus_complex(2, 3)
    restored = _through_json(BigradedComplexSchema, c.to_schema()).to_domain()
    assert restored.lo == c.lo
    assert restored.qdegrees == c.qdegrees
    assert restored.differentials == c.differentials


def test_verification_report_round_trip():
    report = compare(3, 4)
    payload = json.loads(report.to_schema().model_dump_json())
    assert set(payload) == {"n", "m", "kr_total", "rep_total", "isomorphic", "summand_table"}
    restored = VerificationReportSchema.model_validate(payload).to_domain()
    assert restored == report
    assert restored.isomorphic


def test_int_range_parsing():
    assert IntRange.parse("2..5") == IntRange(lo=2, hi=5)
    assert IntRange.parse("-3") == IntRange(lo=-3, hi=-3)
    assert IntRange.parse("-8..8").values() == list(range(-8, 9))
    with pytest.raises(ValueError):
        IntRange.parse("2-5")
    with pytest.raises(ValueError):
        IntRange.parse("5..2")


def test_run_config_validation():
    config = RunConfig(n_range="2..3", m_range="-1..1")
    assert config.grid() == [(2, -1), (2, 0), (2, 1), (3, -1), (3, 0), (3, 1)]
    assert config.output_format == "table"
    with pytest.raises(ValidationError):
        RunConfig(n_range="1..3", m_range="1")
    with pytest.raises(ValidationError):
        RunConfig(n_range="2", m_range="0..9")
    with pytest.raises(ValidationError):
        RunConfig(n_range="2", m_range="1", output_format="xml")
