"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are pinned here, straight from the build contract, and the
reference numbers come from the versioned fixture file.
"""
import json
import math
import time
from importlib import resources

import pytest

from detstair.hilbert import (
    SystemParams,
    hilbert_binomial,
    hilbert_determinant,
    is_unimodal,
    quotient_series,
    section_drop,
)
from detstair.predict import (
    central_coefficient_estimate,
    central_trinomial_exact,
    dense_columns_asymptotic,
    dense_columns_exact,
    dense_columns_quadratic,
    ideal_degree,
    quadratic_match_threshold,
)
from detstair.verify import GuardExceeded, verify_many


def grid():
    for d in range(2, 9):
        for p in range(1, 6):
            for n in range(p + 1, 15):
                yield SystemParams(d, p, n)


def fixture_entries():
    with resources.files("detstair.fixtures").joinpath("reference_values.json").open() as fh:
        return json.load(fh)["entries"]


def announce(num, ok, detail):
    print("criterion %d: %s  (%s)" % (num, "PASS" if ok else "FAIL", detail))


def test_criterion_1_degree_formula_and_route_equality():
    start = time.monotonic()
    cases = 0
    try:
        for params in grid():
            h = hilbert_binomial(params)
            assert h(1) == ideal_degree(params), params
            assert h == hilbert_determinant(params), params
            cases += 1
        elapsed = time.monotonic() - start
        assert elapsed < 10.0, "runtime %.1fs exceeds 10s budget" % elapsed
    except AssertionError as exc:
        announce(1, False, str(exc))
        raise
    announce(1, True, "%d parameter triples, %.2fs" % (cases, time.monotonic() - start))


def test_criterion_2_table_reproduction():
    start = time.monotonic()
    rows = [e for e in fixture_entries() if e["source"] == "table1"]
    try:
        assert len(rows) == 10
        for e in rows:
            params = SystemParams(e["d"], e["p"], e["n"])
            D = ideal_degree(params)
            assert D == e["D"], (params, D, e["D"])
            m = dense_columns_exact(params)
            theo_pct = 100.0 * m / D
            assert abs(theo_pct - e["theoretical_pct"]) <= 0.15, (params, theo_pct)
            if e["d"] >= 3:
                _, mi = dense_columns_asymptotic(params)
                # the table prints non-zero-entry matrix density, which also
                # counts one unit per trivial column
                asym_adj_pct = 100.0 * (mi * D + (D - mi)) / (D * D)
                assert abs(asym_adj_pct - e["asymptotic_pct"]) <= 0.05, (params, asym_adj_pct)
        elapsed = time.monotonic() - start
        assert elapsed < 1.0, "runtime %.2fs exceeds 1s budget" % elapsed
    except AssertionError as exc:
        announce(2, False, str(exc))
        raise
    announce(2, True, "10 rows: D exact, theoretical <= 0.15pp, asymptotic <= 0.05pp")


def test_criterion_2_pure_ratio_deviations_pinned():
    # Regression companion to criterion 2: under the plain m/D convention the
    # printed asymptotic column is reproduced within 0.05pp on every d >= 3
    # row except (4,2,5), where the table itself disagrees with the figure
    # (the figure's ln coordinate pins m = 366, the table implies 367).  Pin
    # that single documented deviation so any drift is caught.
    devs = {}
    for e in (e for e in fixture_entries() if e["source"] == "table1" and e["d"] >= 3):
        params = SystemParams(e["d"], e["p"], e["n"])
        D = ideal_degree(params)
        _, mi = dense_columns_asymptotic(params)
        devs[(e["d"], e["p"], e["n"])] = abs(100.0 * mi / D - e["asymptotic_pct"])
    outliers = {k: v for k, v in devs.items() if v > 0.05}
    assert set(outliers) == {(4, 2, 5)}
    assert 0.055 < outliers[(4, 2, 5)] < 0.065


def test_criterion_3_figure_regression():
    start = time.monotonic()
    points = [e for e in fixture_entries() if e["source"] == "figure1"]
    anchors = {(4, 2, 3): 24, (4, 2, 4): 100, (4, 2, 5): 366, (4, 2, 6): 1267}
    try:
        assert len(points) == 18 + 16
        for e in points:
            params = SystemParams(e["d"], e["p"], e["n"])
            D = ideal_degree(params)
            m = dense_columns_exact(params)
            rel = abs(m / D - e["density_theoretical"]) / e["density_theoretical"]
            assert rel <= 1e-8, (params, m / D, e["density_theoretical"])
            _, mi = dense_columns_asymptotic(params)
            ref_m = math.exp(e["ln_asymptotic"])
            # within +-1 in m, plus the slack of the 10-digit printed ln
            assert abs(mi - ref_m) <= 1.0 + ref_m * 1e-8, (params, mi, ref_m)
        for key, want in anchors.items():
            got = dense_columns_asymptotic(SystemParams(*key))[1]
            assert got == want, (key, got, want)
        elapsed = time.monotonic() - start
        assert elapsed < 1.0, "runtime %.2fs exceeds 1s budget" % elapsed
    except AssertionError as exc:
        announce(3, False, str(exc))
        raise
    announce(3, True, "34 coordinates at 1e-8 relative; asymptotic anchors 24/100/366/1267")


def test_criterion_4_structural_suite():
    start = time.monotonic()
    cases = 0
    try:
        for params in grid():
            h = hilbert_binomial(params)
            ok, _ = is_unimodal(h)
            assert ok, params
            q1 = quotient_series(params, 1)
            assert q1(1) == h.max_coeff(), params
            prev_deg = q1.degree
            for e in range(1, params.delta + 2):
                nxt = quotient_series(params, e + 1)
                assert nxt.degree - prev_deg in (0, 1), (params, e)
                prev_deg = nxt.degree
                drop = section_drop(params, e)  # raises if not 0 or a monomial
                assert drop.is_zero() or drop.max_coeff() > 0
            cases += 1
        elapsed = time.monotonic() - start
        assert elapsed < 30.0, "runtime %.1fs exceeds 30s budget" % elapsed
    except AssertionError as exc:
        announce(4, False, str(exc))
        raise
    announce(4, True, "%d triples: unimodal, degree steps, drops, telescoping" % cases)


def test_criterion_5_quadratic_closed_formula():
    start = time.monotonic()
    anchors = {(2, 4, 9): 275, (2, 4, 10): 426, (2, 4, 11): 623}
    try:
        thresholds = {}
        for p in range(1, 6):
            n0 = quadratic_match_threshold(p)
            assert n0 <= 3 * p + 2, (p, n0)
            thresholds[p] = n0
            for n in range(n0, 21):
                params = SystemParams(2, p, n)
                assert dense_columns_quadratic(params) == dense_columns_exact(params), params
        for key, want in anchors.items():
            params = SystemParams(*key)
            assert dense_columns_quadratic(params) == want
            assert dense_columns_exact(params) == want
        elapsed = time.monotonic() - start
        assert elapsed < 1.0, "runtime %.2fs exceeds 1s budget" % elapsed
    except AssertionError as exc:
        announce(5, False, str(exc))
        raise
    announce(5, True, "thresholds %s; anchors 275/426/623" % thresholds)


def test_criterion_6_groebner_verification():
    start = time.monotonic()
    expect = {(2, 2, 4): (12, 5), (3, 2, 3): (36, 8), (2, 3, 5): (48, 16), (3, 2, 4): (108, 24)}
    seeds = [1, 2, 3]
    try:
        for (d, p, n), (dim, dense) in expect.items():
            params = SystemParams(d, p, n)
            assert ideal_degree(params) == dim
            assert dense_columns_exact(params) == dense
            reports = verify_many(params, seeds, extend=True)
            for rep in reports:
                assert rep.finding is None, (params, rep.seed, rep.finding)
                assert rep.checks["dimension_match"], (params, rep.seed)
                assert rep.info["staircase_size"] == dim
                assert rep.checks["hilbert_function_match"], (params, rep.seed)
                assert rep.checks["structure_theorem"], (params, rep.seed)
                assert rep.checks["column_count_match"], (params, rep.seed)
                assert rep.info["nontrivial_columns"] == dense
                assert rep.checks["quotient_series_match"], (params, rep.seed)
                assert rep.checks["section_bookkeeping"], (params, rep.seed)
                assert rep.checks["shape_position"], (params, rep.seed)
                assert rep.info["min_poly_degree"] == dim
                assert rep.checks["lex_residuals_zero"], (params, rep.seed)
    except AssertionError as exc:
        announce(6, False, str(exc))
        raise
    announce(
        6,
        True,
        "4 parameter sets x %d seeds over GF(2^31-1), %.1fs" % (len(seeds), time.monotonic() - start),
    )


def test_criterion_7_central_coefficient_sanity():
    try:
        exact10 = central_trinomial_exact(10)
        assert exact10 == 8953
        est10 = float(central_coefficient_estimate(3, 10))
        assert abs(est10 - exact10) / exact10 < 0.02
        s = 10**4
        exact = central_trinomial_exact(s)
        est = central_coefficient_estimate(3, s)
        rel = abs(float((est - exact) / exact))
        assert rel < 1e-3, rel
    except AssertionError as exc:
        announce(7, False, str(exc))
        raise
    announce(7, True, "trinomial estimate: <2%% at s=10, %.2e at s=10^4" % rel)


def test_criterion_8_full_scale_out_of_scope():
    # The reference table's "Actual" column needs bases with dimension up to
    # 18144; that is explicitly beyond desk scale.  The degree guard refuses
    # such runs unless overridden, and criterion 6 is the small-instance
    # replacement for that column's oracle role.
    try:
        with pytest.raises(GuardExceeded):
            verify_many(SystemParams(3, 3, 8), [1], guard=1000)  # D = 18144
        with pytest.raises(GuardExceeded):
            verify_many(SystemParams(6, 2, 5), [1], guard=1000)  # D = 18000
    except AssertionError as exc:
        announce(8, False, str(exc))
        raise
    announce(8, True, "full-scale runs blocked by the degree guard; criterion 6 replaces them")
