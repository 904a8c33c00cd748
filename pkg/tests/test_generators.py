import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoperix.functionals import area
from isoperix.generators import (
    PointCloud,
    RandomCurveSpec,
    fit_support_fourier,
    load_point_cloud,
    make_circle,
    make_degree_two,
    random_convex,
    sample_equality_params,
    sample_params,
    support_of_cloud,
)
from isoperix.inequalities import cone_check, deficit
from isoperix.support import SupportFourier, convexity_lower_bound, curve_points, is_strictly_convex, min_rho, uniform_angles

PI = math.pi
SQUARE = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


def test_make_circle():
    assert make_circle(1.0) == SupportFourier(1.0)
    assert make_circle(2.0, (3.0, 4.0)) == SupportFourier(2.0, ((3.0, 4.0),))
    with pytest.raises(ValueError):
        make_circle(0.0)


def test_make_degree_two():
    assert min_rho(make_degree_two(1.0, 0.1, 0.0))[0] == pytest.approx(0.7, abs=1e-15)
    with pytest.raises(ValueError):
        make_degree_two(1.0, 0.3, 0.2)


def test_degree_two_equality_instance():
    p = sample_equality_params(np.random.default_rng(5))
    assert cone_check(p).cond7
    assert deficit(make_degree_two(2.0, 0.3, -0.2), p).value == pytest.approx(0.0, abs=1e-12 * 16 * PI**2)


def test_random_convex_deterministic():
    spec = RandomCurveSpec(max_harmonic=10, seed=123)
    assert random_convex(spec) == random_convex(spec)
    assert random_convex(spec) != random_convex(RandomCurveSpec(max_harmonic=10, seed=124))


@pytest.mark.parametrize("kwargs", [dict(max_harmonic=1), dict(decay=2.0), dict(budget=1.0), dict(seed=-1)])
def test_random_spec_validation(kwargs):
    with pytest.raises(ValueError):
        RandomCurveSpec(**kwargs)


def test_random_convex_margin_over_many_seeds():
    rng = np.random.default_rng(0)
    for seed in range(10_000):
        budget = float(rng.uniform(0.01, 0.99))
        spec = RandomCurveSpec(max_harmonic=int(rng.integers(2, 17)), decay=float(rng.uniform(2.05, 4)),
                               budget=budget, seed=seed)
        c = random_convex(spec)
        assert c.a0 == 1.0
        assert convexity_lower_bound(c) >= 1 - budget - 1e-12
        assert is_strictly_convex(c)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["cond4", "cond20", "cond25", "both"]))
def test_sampled_params_lie_in_their_cone(seed, cone):
    s = cone_check(sample_params(np.random.default_rng(seed), cone))
    want = {"cond4": s.cond4, "cond20": s.cond20, "cond25": s.cond25, "both": s.cond20 and s.cond25}
    assert want[cone]


def test_sampler_hits_faces():
    rng = np.random.default_rng(1)
    hits = sum(cone_check(sample_params(rng, "cond4")).cond6 for _ in range(400))
    assert 50 < hits < 200
    with pytest.raises(ValueError):
        sample_params(rng, "cond99")


def test_support_of_square():
    pc = PointCloud(SQUARE)
    assert support_of_cloud(pc, 0.0) == pytest.approx(1.0)
    assert support_of_cloud(pc, PI / 4) == pytest.approx(math.sqrt(2))


def test_support_of_sampled_circle():
    M, r = 360, 2.5
    t = uniform_angles(M)
    pc = PointCloud(r * np.c_[np.cos(t), np.sin(t)])
    h = support_of_cloud(pc, np.linspace(0, 2 * PI, 1000))
    assert np.all(h <= r + 1e-12) and np.all(h >= r * math.cos(PI / M) - 1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_support_invariant_to_order_and_interior_points(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(30, 2))
    inner = pts.mean(axis=0) + 0.01 * rng.normal(size=(10, 2))
    theta = rng.uniform(0, 2 * PI, size=50)
    base = support_of_cloud(PointCloud(pts), theta)
    assert np.array_equal(support_of_cloud(PointCloud(pts[rng.permutation(30)]), theta), base)
    # convex combinations of cloud points never raise the support function
    w = rng.dirichlet(np.ones(30), size=10)
    more = np.vstack([pts, w @ pts])
    np.testing.assert_array_equal(support_of_cloud(PointCloud(more), theta), base)


def test_point_cloud_validation():
    with pytest.raises(ValueError):
        PointCloud(np.array([[0.0, 0.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        PointCloud(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
    with pytest.raises(ValueError):
        PointCloud(np.array([[0.0, 0.0], [1.0, np.nan], [2.0, 0.0]]))


def test_load_point_cloud(tmp_path):
    j = tmp_path / "p.json"
    j.write_text(json.dumps(SQUARE.tolist()))
    np.testing.assert_array_equal(load_point_cloud(j).points, SQUARE)
    c = tmp_path / "p.csv"
    c.write_text("x,y\n" + "\n".join(f"{x},{y}" for x, y in SQUARE) + "\n")
    np.testing.assert_array_equal(load_point_cloud(c).points, SQUARE)
    bad = tmp_path / "bad.csv"
    bad.write_text("1,1\n2,oops\n")
    with pytest.raises(ValueError):
        load_point_cloud(bad)


def test_fit_recovers_bandlimited_curve():
    c = SupportFourier(1.3, ((0.4, -0.2), (0.05, 0.03), (-0.01, 0.02), (0.004, -0.003), (0.0, 0.001)))
    M, N = 64, 8
    pc = PointCloud(curve_points(c, uniform_angles(M)))
    rep = fit_support_fourier(pc, N, M)
    np.testing.assert_allclose(rep.curve.padded(N).a, c.padded(N).a, atol=1e-9)
    np.testing.assert_allclose(rep.curve.padded(N).b, c.padded(N).b, atol=1e-9)
    assert rep.curve.a0 == pytest.approx(c.a0, abs=1e-9)
    assert rep.residual_sup < 1e-9 and rep.convex


def test_fit_circle_cloud():
    t = uniform_angles(360)
    rep = fit_support_fourier(PointCloud(np.c_[np.cos(t), np.sin(t)]), 8, 256)
    assert rep.curve.a0 == pytest.approx(1.0, abs=1e-3)
    assert np.all(np.abs(rep.curve.a) <= 1e-3) and np.all(np.abs(rep.curve.b) <= 1e-3)


def test_fit_ellipse_area():
    t = uniform_angles(720)
    rep = fit_support_fourier(PointCloud(np.c_[2 * np.cos(t), np.sin(t)]), 8, 256)
    assert area(rep.curve) == pytest.approx(2 * PI, rel=0.01)


def test_fit_square_reports():
    rep = fit_support_fourier(PointCloud(SQUARE), 2, 64)
    assert rep.residual_sup > 0.1
    assert rep.convex == is_strictly_convex(rep.curve)
    d = rep.to_dict()
    assert set(d) == {"a0", "harmonics", "residual_sup", "convex"}
    with pytest.raises(ValueError):
        fit_support_fourier(PointCloud(SQUARE), 8, 35)
