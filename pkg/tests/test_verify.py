"""Seeded end-to-end verification runs and their report contract."""
import json
import os
import subprocess
import sys

import pytest

from detstair.hilbert import SystemParams
from detstair.verify import GuardExceeded, verify_many, verify_run


def test_verify_small_generic():
    rep = verify_run(SystemParams(2, 2, 4), seed=1, extend=True)
    assert rep.passed
    assert not rep.retried
    assert rep.expected_dim == 12 and rep.expected_dense == 5
    assert rep.info["staircase_size"] == 12
    assert rep.info["nontrivial_columns"] == 5
    assert rep.info["min_poly_degree"] == 12
    assert rep.info["residual_failures"] == 0
    assert all(rep.checks.values())
    assert len(rep.info["quotient_series_per_e"]) == SystemParams(2, 2, 4).delta + 1


def test_verify_without_extension():
    rep = verify_run(SystemParams(2, 2, 4), seed=5, extend=False)
    assert rep.passed
    assert "shape_position" not in rep.checks
    assert "extended_dimension_match" not in rep.checks


def test_verify_deterministic():
    a = verify_run(SystemParams(2, 2, 4), seed=11, extend=True).as_dict()
    b = verify_run(SystemParams(2, 2, 4), seed=11, extend=True).as_dict()
    assert a == b


def test_verify_critical_point_gating():
    rep = verify_run(SystemParams(2, 2, 4), seed=3, mode="critical_point", extend=True)
    assert set(rep.gated) == {
        "extended_dimension_match",
        "extended_column_count_match",
        "shape_position",
        "lex_residuals_zero",
    }
    assert rep.passed
    rep2 = verify_run(SystemParams(2, 2, 4), seed=3, mode="critical_point", extend=False)
    assert rep2.gated == ()
    assert rep2.passed  # nothing gated, pipeline ran clean


def test_verify_many_and_guard():
    reports = verify_many(SystemParams(2, 2, 4), [1, 2], extend=False)
    assert len(reports) == 2 and all(r.passed for r in reports)
    with pytest.raises(GuardExceeded):
        verify_many(SystemParams(4, 2, 5), [1], guard=1000)
    with pytest.raises(ValueError):
        verify_many(SystemParams(2, 2, 4), [])


def test_retry_then_finding(monkeypatch):
    # feed a non-zero-dimensional system (staircase diverges) on selected
    # seeds to drive the retry policy
    import detstair.verify as V
    from detstair.groebner import MPoly, PolyRing

    ring = PolyRing.make(4, V.DEFAULT_PRIME)
    degenerate = [MPoly.from_terms(ring, {(2, 0, 0, 0): 1})]  # ideal (x1^2)
    real_gen = V.gen_system
    params = SystemParams(2, 2, 4)

    def first_bad(p, seed, mode="generic", q=V.DEFAULT_PRIME):
        if seed == 100:
            return degenerate
        return real_gen(p, seed, mode=mode, q=q)

    monkeypatch.setattr(V, "gen_system", first_bad)
    rep = verify_run(params, seed=100, extend=False)
    assert rep.retried
    assert rep.seed_used == 100 + V.RETRY_SEED_STEP
    assert rep.finding is None
    assert rep.passed
    assert "first_attempt_error" in rep.info

    def always_bad(p, seed, mode="generic", q=V.DEFAULT_PRIME):
        return degenerate

    monkeypatch.setattr(V, "gen_system", always_bad)
    rep2 = verify_run(params, seed=100, extend=False)
    assert rep2.finding is not None
    assert not rep2.passed


def test_backends_produce_identical_reports():
    # the numba and numpy kernel paths must agree bit for bit, reduced basis
    # included; compare full verification reports across subprocesses
    snippet = (
        "import json; "
        "from detstair.hilbert import SystemParams; "
        "from detstair.verify import verify_run; "
        "print(json.dumps(verify_run(SystemParams(2,2,4), seed=7, extend=True).as_dict()))"
    )
    outputs = []
    for env_extra in ({}, {"DETSTAIR_PURE_NUMPY": "1"}):
        env = dict(os.environ, **env_extra)
        env.pop("DETSTAIR_PURE_NUMPY", None)
        env.update(env_extra)
        res = subprocess.run(
            [sys.executable, "-c", snippet], env=env, capture_output=True, text=True, check=True
        )
        outputs.append(res.stdout)
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])["passed"] is True


def test_wider_parameter_sets():
    # beyond the four pinned acceptance sets: quartics, many quadrics (the
    # 7-variable packing boundary once extended), and a D = 162 cubic system
    for d, p, n in [(4, 2, 3), (2, 4, 6), (2, 2, 5), (3, 3, 4)]:
        rep = verify_run(SystemParams(d, p, n), seed=1, extend=True)
        assert rep.passed, ((d, p, n), rep.checks, rep.finding)


def test_report_dict_shape():
    rep = verify_run(SystemParams(2, 2, 4), seed=1, extend=True).as_dict()
    assert rep["params"] == {"d": 2, "p": 2, "n": 4}
    assert rep["passed"] is True
    assert rep["finding"] is None
    for name in (
        "dimension_match",
        "hilbert_function_match",
        "structure_theorem",
        "column_count_match",
        "quotient_series_match",
        "section_bookkeeping",
        "extended_dimension_match",
        "extended_column_count_match",
        "shape_position",
        "lex_residuals_zero",
    ):
        assert rep["checks"][name] is True
