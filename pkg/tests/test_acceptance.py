"""Exit criteria, one PASS/FAIL line each (shown in the terminal summary)."""

import math
import time

import numpy as np
import pytest

from isoperix.functionals import compute_all
from isoperix.fuzz import case_curve, run_fuzz
from isoperix.generators import PointCloud, fit_support_fourier, sample_params
from isoperix.inequalities import PANXU_H2_PARAMS, PRESETS, corollary_residuals, deficit
from isoperix.quadrature import oracle_functionals, oracle_h1_sq, oracle_h2_sq, oracle_integrals
from isoperix.stability import (
    PANXU_H1_CONSTANT,
    PANXU_H2_CONSTANT,
    check_panxu,
    h1_sq,
    h2_sq,
    stability_constant,
    stability_series,
)
from isoperix.support import SupportFourier, circle, curve_points, uniform_angles

from conftest import record_acceptance

pytestmark = pytest.mark.acceptance
PI = math.pi
FUNCTIONALS = ("L", "A", "A_tilde_oriented", "int_rho_sq")


def _rel(x, y):
    return abs(x - y) / max(1.0, abs(y))


def test_1_circle_exactness():
    t0 = time.perf_counter()
    worst = 0.0
    for r in (0.5, 1.0, 7.0):
        c = circle(r)
        f = compute_all(c)
        worst = max(worst, _rel(f.L, 2 * PI * r), _rel(f.A, PI * r * r), abs(f.A_tilde_abs),
                    _rel(f.int_rho_sq, 2 * PI * r * r))
        worst = max(worst, *(abs(v) for v in corollary_residuals(c).values()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    record_acceptance(1, ok, f"circles r in {{0.5,1,7}}: max deviation {worst:.2e} (tol 1e-12), {elapsed:.3f}s (< 1s)")
    assert ok


def test_2_worked_curve():
    c = SupportFourier(1.0, ((0.0, 0.0), (0.1, 0.0)))
    f, q = compute_all(c), oracle_functionals(c, 64)
    eq2 = deficit(c, PRESETS["eq2"]).value
    eq2_oracle = 4 * PI * (q.A + q.A_tilde_abs) - q.L**2
    rows = [
        ("L", f.L, q.L, 2 * PI),
        ("A", f.A, q.A, 0.985 * PI),
        ("|A~|", f.A_tilde_abs, q.A_tilde_abs, 0.06 * PI),
        ("int rho^2", f.int_rho_sq, q.int_rho_sq, 2.09 * PI),
        ("Phi = 4pi(A+|A~|) - L^2", eq2, eq2_oracle, 0.18 * PI**2),
        ("h2^2", h2_sq(c), oracle_h2_sq(c), 0.01 * PI),
        ("h1^2", h1_sq(c), oracle_h1_sq(c), 0.01),
    ]
    worst = max(max(abs(v - e) / abs(e), abs(o - e) / abs(e), abs(v - o) / abs(o)) for _, v, o, e in rows)
    ok = worst <= 1e-11
    record_acceptance(2, ok, f"p = 1 + 0.1 cos 2t: 7 values vs closed form and oracle, max rel err {worst:.2e} (tol 1e-11)")
    assert ok


def test_3_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        c, _ = case_curve(2024, i, 16)
        f, q = compute_all(c), oracle_integrals(c)
        worst = max(worst, *(abs(q[k] - getattr(f, k)) / max(1.0, abs(getattr(f, k))) for k in FUNCTIONALS))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-11 and elapsed < 10.0
    record_acceptance(3, ok, f"1000 random curves N<=16: max rel diff {worst:.2e} (tol 1e-11), {elapsed:.2f}s (< 10s)")
    assert ok


def test_4_theorem_1_2_fuzz():
    t0 = time.perf_counter()
    s = run_fuzz(10_000, seed=42, checks=("theorem_1_2", "equality"))
    elapsed = time.perf_counter() - t0
    ok = s.ok and elapsed < 60.0
    record_acceptance(4, ok, f"10000 cone-(4) cases + equality instances: {len(s.failures)} failures, "
                             f"{elapsed:.2f}s (< 60s)")
    assert ok, s.failures[:3]


def test_5_stability_fuzz():
    t0 = time.perf_counter()
    s = run_fuzz(10_000, seed=42, checks=("theorem_4_2", "theorem_4_3", "remark_2"))
    rng = np.random.default_rng(42)
    tail = max(stability_series(sample_params(rng, "cond20")).tail_error for _ in range(10_000))
    eq2 = stability_series(PRESETS["eq2"])
    closed = (PI**2 / 12 - 11 / 16) / (2 * PI**2)
    C, _ = stability_constant(PRESETS["eq2"])
    elapsed = time.perf_counter() - t0
    ok = s.ok and tail <= 1e-12 and abs(eq2.series - closed) <= 1e-10 and C == 1.0 and elapsed < 120.0
    record_acceptance(5, ok, f"10000 cond20/cond25 cases: {len(s.failures)} failures; max tail error {tail:.2e} "
                             f"(tol 1e-12); eq2 series - closed form {eq2.series - closed:.1e}, C = {C}; "
                             f"{elapsed:.2f}s (< 120s)")
    assert ok, s.failures[:3]


def test_6_panxu_consistency():
    worst_route = 0.0
    bad = 0
    for i in range(1000):
        c, _ = case_curve(7, i, 16)
        px = check_panxu(c)
        phi = deficit(c, PRESETS["eq2"]).value
        bad += not (h1_sq(c) <= PANXU_H1_CONSTANT * phi + 1e-9 * max(1.0, px.phi) and px.h2_ok)
        via43 = deficit(c, PANXU_H2_PARAMS).value
        worst_route = max(worst_route, abs(via43 - PANXU_H2_CONSTANT * phi) / abs(PANXU_H2_CONSTANT * phi))
    ok = bad == 0 and worst_route <= 1e-12
    record_acceptance(6, ok, f"1000 curves: {bad} bound violations; h2 bound via (0,-1/(18pi),2/9,2/9) "
                             f"max rel diff {worst_route:.2e} (tol 1e-12)")
    assert ok


def test_7_equality_sharpness_eq8():
    worst8, worst_gap = 0.0, 0.0
    positive = True
    for a2 in (0.05, 0.1, 0.2):
        c = SupportFourier(1.0, ((0.0, 0.0), (a2, 0.0)))
        r = corollary_residuals(c)
        n2_term = dict(deficit(c, PRESETS["eq8"]).harmonic_terms)[2]
        at = compute_all(c).A_tilde_abs
        worst8 = max(worst8, abs(r["eq8"]), abs(n2_term))
        # eq2 minus eq8 residual is 4pi|A~| - pi|A~| = 3 pi |A~|, and the eq8 residual is zero here
        worst_gap = max(worst_gap, abs(r["eq2"] - 3 * PI * at) / (3 * PI * at))
        positive &= r["eq2"] > 0
    ok = worst8 <= 1e-12 and worst_gap <= 1e-12 and positive
    record_acceptance(7, ok, f"a2 in {{0.05,0.1,0.2}}: max |eq8 residual| {worst8:.1e} (tol 1e-12); "
                             f"eq2 residual = 3*pi*|A~| to {worst_gap:.1e} rel, all > 0")
    assert ok


def test_8_ingestion_round_trip():
    c = SupportFourier(1.3, ((0.4, -0.2), (0.05, 0.03), (-0.01, 0.02), (0.004, -0.003), (0.0, 0.001),
                             (0.0, 0.0), (2e-4, 0.0), (0.0, -1e-4)))
    M, N = 64, 8
    rep = fit_support_fourier(PointCloud(curve_points(c, uniform_angles(M))), N, M)
    got, want = rep.curve.padded(N), c.padded(N)
    coef_err = max(abs(got.a0 - want.a0), np.max(np.abs(got.a - want.a)), np.max(np.abs(got.b - want.b)))
    t = uniform_angles(720)
    ell = fit_support_fourier(PointCloud(np.c_[2 * np.cos(t), np.sin(t)]), 8, 256)
    area_err = abs(compute_all(ell.curve).A - 2 * PI) / (2 * PI)
    ok = coef_err <= 1e-9 and area_err <= 0.01
    record_acceptance(8, ok, f"N=8, M=64 coefficient error {coef_err:.1e} (tol 1e-9); "
                             f"ellipse a=2,b=1 area rel err {area_err:.2e} (tol 1%)")
    assert ok


def test_9_mutation_self_test():
    s = run_fuzz(200, seed=42, mutation="negate-evolute-area")
    by = {k: v for k, v in s.failures_by_check().items() if v}
    ok = not s.ok
    record_acceptance(9, ok, f"negated |A~| term: {len(s.failures)} failures reported {by}")
    assert ok
