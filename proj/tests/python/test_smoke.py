import json
import math
import os

import numpy as np
import pytest

import radiuslab

FIXTURES = os.environ.get("RADIUSLAB_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "fixtures"))

JORDAN = np.array([[0, 1], [0, 0]], dtype=complex)
SHEAR = np.array([[1, 2], [0, 1]], dtype=complex)


def test_radius_closed_forms():
    assert radiuslab.numerical_radius(JORDAN) == pytest.approx(0.5, abs=1e-10)
    assert radiuslab.numerical_radius(SHEAR) == pytest.approx(2.0, abs=1e-10)
    assert radiuslab.operator_norm(SHEAR) == pytest.approx(1 + math.sqrt(2), abs=1e-12)


def test_against_numpy():
    rng = np.random.default_rng(0)
    s = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    assert radiuslab.operator_norm(s) == pytest.approx(np.linalg.norm(s, 2), rel=1e-12)
    sv = radiuslab.singular_values(s)
    assert np.allclose(sv, np.linalg.svd(s, compute_uv=False), rtol=1e-11)
    a = radiuslab.matrix_abs(s)
    assert np.allclose(a @ a, s.conj().T @ s, atol=1e-10)
    vals, vecs = radiuslab.hermitian_eigen(s + s.conj().T)
    assert np.allclose(vals, np.linalg.eigvalsh(s + s.conj().T), atol=1e-11)
    w = radiuslab.numerical_radius(s)
    assert w == pytest.approx(radiuslab.numerical_radius_oracle(s), rel=1e-6)


def test_evaluate_and_errors():
    r = radiuslab.evaluate("kittaneh03", JORDAN)
    assert r["holds"] and abs(r["slack"]) < 1e-8
    r = radiuslab.evaluate("thm8", SHEAR)
    assert r["applicable"] and r["holds"]
    assert not radiuslab.evaluate("thm8", JORDAN)["applicable"]
    with pytest.raises(radiuslab.RadiuslabError, match="UnknownBound"):
        radiuslab.evaluate("nope", SHEAR)
    with pytest.raises(ValueError):
        radiuslab.numerical_radius(np.zeros((2, 3), dtype=complex))


def test_lemma_and_sampling():
    a = radiuslab.sample("psd", 4, seed=3)
    assert radiuslab.classify(a)["psd"]
    assert np.array_equal(a, radiuslab.sample("psd", 4, seed=3))
    r = radiuslab.check_lemma("lem28", np.diag([1.0, 4.0]).astype(complex), x=np.array([0, 1], dtype=complex), param=2.0)
    assert r["lhs"] == pytest.approx(16.0) and r["rhs"] == pytest.approx(16.0)
    assert "ginibre" in radiuslab.ensemble_kinds()
    assert "kittaneh03" in radiuslab.bound_ids()


def test_verify_report_is_deterministic():
    a = radiuslab.verify("kittaneh03,eq16", trials=10, seed=4)
    b = radiuslab.verify("kittaneh03,eq16", trials=10, seed=4)
    assert a == b
    rep = radiuslab.verify_report("kittaneh03", trials=5)
    assert rep["exit_code"] == 0
    assert rep["bounds"][0]["pass_count"] == 5


def test_fixture_round_trip():
    with open(os.path.join(FIXTURES, "shear.json")) as f:
        text = f.read()
    m = radiuslab.matrix_from_json(text)
    assert np.array_equal(m, SHEAR)
    assert np.array_equal(radiuslab.matrix_from_json(radiuslab.matrix_to_json(m)), m)
    with open(os.path.join(FIXTURES, "bad_length.json")) as f:
        with pytest.raises(radiuslab.RadiuslabError, match="ParseError"):
            radiuslab.matrix_from_json(f.read())
    assert json.loads(radiuslab.matrix_to_json(m))["rows"] == 2
