"""Tests for the exploration layer: the width-ratio functional, the
equatorial support profile, reproduction reports, and the randomized
counterexample search."""

import math

import numpy as np
import pytest

from convexiq import bodies, explorer, inequalities as iq
from convexiq.errors import InvalidArgument, UndefinedValue

from conftest import random_polytope


# ---------------------------------------------------------------------------
# width-ratio functional


def test_width_ratio_on_cube(spec3):
    assert explorer.mean_width_ratio(bodies.cube(3), spec3) == \
        pytest.approx(0.5, rel=1e-9)


def test_width_ratio_on_cross(spec3):
    got = explorer.mean_width_ratio(bodies.cross_polytope(3), spec3)
    assert got == pytest.approx(math.acos(1.0 / 3.0) / math.pi, rel=1e-12)


def test_width_ratio_scale_invariant(rng, spec3):
    p = random_polytope(rng, 3)
    r1 = explorer.mean_width_ratio(p, spec3)
    r2 = explorer.mean_width_ratio(bodies.scale_body(p, 7.5), spec3)
    assert r2 == pytest.approx(r1, rel=1e-9)


def test_width_ratio_undefined_for_points(spec3):
    point = bodies.convex_hull(np.zeros((1, 3)))
    with pytest.raises(UndefinedValue):
        explorer.mean_width_ratio(point, spec3)


# ---------------------------------------------------------------------------
# band integral


def test_band_integral_closed_forms():
    # n = 2: integral of sin over the band is sin(arctan t) = t/sqrt(1+t^2)
    for t in (0.3, 1.0, 2.5):
        assert explorer.sine_power_integral(t, 2) == \
            pytest.approx(t / math.sqrt(1.0 + t * t), rel=1e-12)
    # n = 3 at t = 1: theta/2 + sin(2 theta)/4 with theta = pi/4
    assert explorer.sine_power_integral(1.0, 3) == \
        pytest.approx(math.pi / 8.0 + 0.25, rel=1e-12)
    assert explorer.sine_power_integral(0.0, 5) == pytest.approx(0.0, abs=1e-15)


def test_band_integral_monotone():
    ts = np.linspace(0.0, 3.0, 40)
    vals = [explorer.sine_power_integral(t, 4) for t in ts]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    with pytest.raises(InvalidArgument):
        explorer.sine_power_integral(-0.1, 3)
    with pytest.raises(InvalidArgument):
        explorer.sine_power_integral(1.0, 1)


# ---------------------------------------------------------------------------
# equatorial support profile


def test_support_ratio_constant_on_cross():
    prof = explorer.support_ratio_profile(bodies.cross_polytope(3), points=16)
    assert prof.shape == (16, 2)
    assert prof[0, 0] == 0.0
    assert prof[-1, 0] == pytest.approx(1.0 / math.sqrt(2.0))
    assert np.allclose(prof[:, 1], 1.0, atol=1e-12)


def test_support_ratio_on_cube():
    for x2 in (0.0, 0.3, 1.0 / math.sqrt(2.0)):
        got = explorer.equatorial_support_ratio(bodies.cube(3), x2)
        x1 = math.sqrt(1.0 - x2 * x2)
        assert got == pytest.approx((x1 + x2) / x1, rel=1e-12)


def test_support_ratio_profile_nondecreasing_on_invariant_bodies():
    for body in (bodies.cube(3), bodies.ball(3), bodies.k1()):
        prof = explorer.support_ratio_profile(body, points=64)
        assert np.all(np.diff(prof[:, 1]) >= -1e-9)


def test_support_ratio_guards(rng):
    lopsided = random_polytope(rng, 3)
    with pytest.raises(InvalidArgument, match="symmetr"):
        explorer.equatorial_support_ratio(lopsided, 0.2)
    # the guard can be waived explicitly
    explorer.equatorial_support_ratio(lopsided, 0.2, check_symmetry=False)
    with pytest.raises(InvalidArgument):
        explorer.equatorial_support_ratio(bodies.cube(3), 0.9)
    with pytest.raises(InvalidArgument):
        explorer.equatorial_support_ratio(bodies.cube(4), 0.2)
    with pytest.raises(InvalidArgument):
        explorer.support_ratio_profile(bodies.cube(3), points=1)


# ---------------------------------------------------------------------------
# discrete ordered-sum check


def test_ordered_sum_check_true_case():
    f = np.array([-1.0, -1.0, 1.0, 1.0])
    g = np.array([0.0, 1.0, 2.0, 3.0])
    assert explorer.chebyshev_sum_check(f, g) is True


def test_ordered_sum_check_inapplicable_cases():
    g = np.array([0.0, 1.0, 2.0, 3.0])
    # nonzero mean
    assert explorer.chebyshev_sum_check(np.array([1.0, 1.0, 1.0, 1.0]), g) is None
    # wrong crossing direction (positive block first)
    assert explorer.chebyshev_sum_check(np.array([1.0, 1.0, -1.0, -1.0]), g) is None
    # g not nondecreasing
    f = np.array([-1.0, -1.0, 1.0, 1.0])
    assert explorer.chebyshev_sum_check(f, g[::-1].copy()) is None
    # g negative
    assert explorer.chebyshev_sum_check(f, g - 5.0) is None
    with pytest.raises(InvalidArgument):
        explorer.chebyshev_sum_check(f, g[:3])


# ---------------------------------------------------------------------------
# reproduction reports


def test_repro_all_targets_pass():
    reports = explorer.run_repro("all")
    assert tuple(r.target for r in reports) == explorer.REPRO_TARGETS
    for rep in reports:
        assert rep.passed, rep.table()


def test_repro_disk_hull_routes_agree():
    rep = explorer.run_repro("k1")[0]
    rows = {r.name: r for r in rep.rows}
    assert rows["disk-hull-width-quadrature"].computed == \
        pytest.approx(3.8663, abs=1e-3)
    assert rows["route-agreement"].computed <= 1e-5
    assert rows["scaled-cross-exceeds-disk-hull"].computed > 0


def test_repro_ratio_constants():
    rep = explorer.run_repro("eq1-c3")[0]
    rows = {r.name: r for r in rep.rows}
    assert rows["cross-width-closed-form"].computed == \
        pytest.approx(3.324758543877433, abs=1e-12)
    assert rows["squared-bound-ratio"].computed == pytest.approx(0.46058, abs=1e-4)
    assert rows["gamma-ratio-closed-form"].computed == \
        pytest.approx(4.0 / math.pi ** 2, abs=1e-9)


def test_repro_unknown_target():
    with pytest.raises(InvalidArgument, match="unknown reproduction target"):
        explorer.run_repro("k9")


def test_repro_row_semantics():
    row = explorer.ReproRow("x", 1.5, reference=1.4, tolerance=0.2)
    assert row.passed
    assert "PASS" in row.table_line()
    row = explorer.ReproRow("x", 1.5, reference=1.4, tolerance=0.01)
    assert not row.passed
    assert "FAIL" in row.table_line()
    assert explorer.ReproRow("x", 0.5).passed          # bare assertion: > 0
    assert not explorer.ReproRow("x", -0.5).passed
    rep = explorer.run_repro("c0")[0]
    assert rep.table().startswith("[c0]")


# ---------------------------------------------------------------------------
# search configuration


def test_validate_config_normalizes_defaults():
    cfg = explorer.validate_config(explorer.SearchConfig(
        problem="cg33", n=3, m=1, family="zonotope", iterations=5))
    assert cfg.family_size == 6
    cfg = explorer.validate_config(explorer.SearchConfig(
        problem="heron_n3", n=3, m=2, family="cross-perturbation",
        iterations=5))
    assert cfg.m is None                    # heron ignores m
    assert cfg.family_size == 6             # 2n vertices, forced


@pytest.mark.parametrize("bad", [
    dict(problem="nope", n=3, m=1),
    dict(problem="cg33", n=3, m=1, family="nope"),
    dict(problem="cg33", n=9, m=1),
    dict(problem="cg33", n=3, m=None),
    dict(problem="cg33", n=3, m=3),
    dict(problem="cg33", n=3, m=1, iterations=0),
    dict(problem="cg33", n=3, m=1, restarts=0),
    dict(problem="cg33", n=3, m=1, proposal_scale=-0.5),
    dict(problem="cg33", n=3, m=1, seed=-1),
    dict(problem="cg33", n=3, m=1, constant=0.5),      # takes no constant
    dict(problem="prob4", n=3, m=1, family="unconditional-polytope"),  # no c2
    dict(problem="prob4", n=3, m=1, family="zonotope", constant=0.5),  # settled
    dict(problem="eq11_midrange", n=5, m=2, family="cross-perturbation"),
    dict(problem="eq11_midrange", n=4, m=2),
    dict(problem="heron_n3", n=4, m=None, family="cross-perturbation"),
    dict(problem="cg33", n=3, m=1, family="cross-perturbation", family_size=5),
    dict(problem="cg33", n=3, m=1, family_size=2),
])
def test_validate_config_rejections(bad):
    with pytest.raises(InvalidArgument):
        explorer.validate_config(explorer.SearchConfig(**bad))


def test_config_hash_tracks_content():
    a = explorer.SearchConfig(problem="cg33", n=3, m=1, seed=7)
    b = explorer.SearchConfig(problem="cg33", n=3, m=1, seed=7)
    c = explorer.SearchConfig(problem="cg33", n=3, m=1, seed=8)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()
    assert len(a.config_hash()) == 16


# ---------------------------------------------------------------------------
# search runs


CFG = explorer.SearchConfig(problem="cg33", n=3, m=1, family="zonotope",
                            iterations=60, restarts=2, seed=42)


def test_search_is_deterministic():
    r1 = explorer.search(CFG)
    r2 = explorer.search(CFG)
    assert r1.best_slack == r2.best_slack
    assert r1.best_report.body_fingerprint == r2.best_report.body_fingerprint
    assert r1.trajectory == r2.trajectory
    assert r1.evaluations == r2.evaluations
    assert r1.stamp == r2.stamp
    # the stamp hashes the validated config (defaults filled in)
    assert r1.stamp["config_hash"] == explorer.validate_config(CFG).config_hash()
    assert r1.stamp["seed"] == 42


def test_search_on_proven_bound_finds_no_violation():
    r = explorer.search(CFG)
    assert r.best_slack >= 0.0
    assert r.violations == ()
    assert r.evaluations == 2 * (60 + 1)
    # trajectory quantiles are ordered and pooled across restarts
    assert len(r.trajectory) == 1
    chunk, count, q0, q25, q50, q75, q100 = r.trajectory[0]
    assert chunk == 0 and count == 120
    assert q0 <= q25 <= q50 <= q75 <= q100


def test_search_records_proven_violations_of_bad_constants():
    """An over-ambitious candidate constant for the open family must be
    falsified on exact evaluation routes, with full provenance rows."""
    cfg = explorer.SearchConfig(problem="prob4", n=3, m=1,
                                family="cross-perturbation",
                                iterations=20, restarts=1, seed=3,
                                constant=100.0)
    r = explorer.search(cfg)
    assert r.best_slack < 0.0
    assert r.violations
    v = r.violations[0]
    assert v.inequality_id == "prob4_family"
    assert v.slack < -10.0 * v.tolerance
    assert isinstance(v.body, bodies.VPolytope)
    assert v.restart == 0


def test_search_matches_across_thread_budgets(monkeypatch):
    serial = explorer.search(CFG)
    monkeypatch.setenv("CONVEXIQ_THREADS", "2")
    threaded = explorer.search(CFG)
    assert threaded.best_slack == serial.best_slack
    assert threaded.trajectory == serial.trajectory
    assert threaded.best_report.body_fingerprint == \
        serial.best_report.body_fingerprint


def test_thread_budget(monkeypatch):
    monkeypatch.delenv("CONVEXIQ_THREADS", raising=False)
    assert explorer.thread_budget() == 1
    monkeypatch.setenv("CONVEXIQ_THREADS", "4")
    assert explorer.thread_budget() == 4
    monkeypatch.setenv("CONVEXIQ_THREADS", "0")
    assert explorer.thread_budget() == 1
    monkeypatch.setenv("CONVEXIQ_THREADS", "garbage")
    assert explorer.thread_budget() == 1


def test_search_midrange_zonotopes():
    # conjectured range (m strictly between 1 and n-2): the descent runs on
    # exact zonotope routes and, with at least three projections active for
    # any rank >= 2 generator set, finds no violation
    cfg = explorer.SearchConfig(problem="eq11_midrange", n=5, m=2,
                                family="zonotope", iterations=15,
                                restarts=1, seed=9)
    r = explorer.search(cfg)
    assert r.best_slack >= 0.0
    assert r.violations == ()
