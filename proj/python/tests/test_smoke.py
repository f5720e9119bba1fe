import math

import numpy as np
import pytest

import fastmarch as fm


def test_solve_local_examples():
    assert fm.solve_local(0.0, math.inf, 0.1, 1.0) == pytest.approx(0.1)
    assert fm.solve_local(0.0, 0.0, 0.1, 1.0) == pytest.approx(0.1 / math.sqrt(2))
    assert fm.hopf_lax(0.0, 0.05, 0.1, 2.0) == pytest.approx(
        fm.solve_local(0.0, 0.05, 0.1, 2.0), abs=1e-4
    )


def test_march_constant_speed_axis():
    n = 20
    speed = fm.speed_field("constant", n)
    t, metrics = fm.march(speed, [(0, 0)])
    assert t.shape == (n + 1, n + 1)
    np.testing.assert_allclose(t[:, 0], np.arange(n + 1) / n, rtol=1e-14)
    assert metrics["cycles"] == (n + 1) ** 2 - 1


def test_march_matches_oracle_and_untidy_is_above():
    speed = fm.speed_field("inv-uniform", 40, {"seed": 3})
    sources = [(40, 0), (10, 30)]
    exact, _ = fm.march(speed, sources)
    oracle = fm.sweep_oracle(speed, sources, 1e-14)
    assert np.max(np.abs(exact - oracle)) <= 1e-12
    untidy, metrics = fm.march(speed, sources, queue="untidy", buckets=40)
    assert np.all(untidy >= exact - 1e-12)
    assert metrics["max_point_insertions"] <= 4
    lo, hi = fm.residual_range(exact, speed, sources)
    assert abs(lo - 1) < 1e-8 and abs(hi - 1) < 1e-8


def test_error_report_and_comparison():
    speed = fm.speed_field("sin-ratio", 50, {"r": 8})
    rep = fm.error_report(speed, [(50, 0)], 32, f_min=1.0, f_max=8.0)
    assert rep["violation"] is None
    assert rep["error_bound"] == pytest.approx(math.sqrt(2) * 8 / 32)
    t, _ = fm.march(speed, [(50, 0)])
    assert fm.check_comparison(0.5 * t, t, speed, [(50, 0)])
    with pytest.raises(fm.ComparisonHypothesisError):
        fm.check_comparison(2.0 * t, t, speed, [(50, 0)])


def test_experiments_small():
    rows = fm.fig1(n=20, ratios=[1, 4], buckets=[2, 8])
    assert len(rows) == 4
    assert all(r["max_rel_err"] <= r["bound"] + 1e-12 for r in rows)
    rows = fm.fig2(sizes=[16, 32])
    assert sorted(r["queue_kind"] for r in rows) == ["exact", "exact", "untidy", "untidy"]


def test_invalid_inputs():
    with pytest.raises(ValueError):
        fm.speed_field("sin-ratio", 10)
    with pytest.raises(ValueError):
        fm.march(np.ones((4, 5)), [(0, 0)])
    with pytest.raises(ValueError):
        fm.march(fm.speed_field("constant", 4), [(0, 0)], queue="untidy")
    bad = np.ones((5, 5))
    bad[2, 3] = 0.0
    with pytest.raises(ValueError, match=r"\(2, 3\)"):
        fm.march(bad, [(0, 0)])
