"""Separation, covering radius estimation, mesh ratio, and figure exports.

Oracles: brute-force pairwise loops for separation, analytic covering radii
of the tight families, and the packing bound covering >= separation / 2.
"""

import csv

import numpy as np
import pytest

from cxdesign import (
    CoveringOptions,
    RealPointSet,
    covering_estimate,
    mesh_ratio,
    separation,
    sorted_inner_products,
    stereographic_inverse,
    stereographic_projection,
    symmetrize,
    write_covering_csv,
    write_inner_products_csv,
    write_stereographic_csv,
)
from conftest import random_unit_points


def _brute_separation(points):
    best = np.inf
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            u = min(1.0, max(-1.0, float(np.dot(points[i], points[j]))))
            best = min(best, np.arccos(u))
    return best


def _cross_polytope(dim):
    return symmetrize(np.eye(dim))


def test_separation_matches_brute_force():
    rng = np.random.default_rng(401)
    for n, dim in [(6, 4), (15, 6), (9, 3)]:
        X = RealPointSet(points=random_unit_points(rng, n, dim))
        assert separation(X) == pytest.approx(_brute_separation(X.points), abs=1e-14)


def test_separation_known_values():
    assert separation(_cross_polytope(4)) == pytest.approx(np.pi / 2, abs=0)
    pair = RealPointSet(
        points=np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]]), symmetric=True
    )
    assert separation(pair) == pytest.approx(np.pi, abs=1e-15)


def test_sorted_inner_products():
    rng = np.random.default_rng(402)
    X = RealPointSet(points=random_unit_points(rng, 8, 4))
    vals = sorted_inner_products(X)
    gram = X.points @ X.points.T
    expected = np.sort(gram[np.triu_indices(8, k=1)])[::-1]
    assert vals.shape == (8 * 7 // 2,)
    assert np.allclose(vals, expected, atol=1e-15)
    assert np.all(np.diff(vals) <= 0)


def test_covering_tight_families_hit_analytic_values():
    # antipodal pair on S^3: covering exactly pi/2
    pair = RealPointSet(
        points=np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]]), symmetric=True
    )
    value, unc = covering_estimate(pair)
    assert value == pytest.approx(np.pi / 2, abs=1e-9)
    assert unc > 0
    # cross-polytopes: covering arccos(1 / sqrt(dim))
    for dim in (4, 6, 8):
        X = _cross_polytope(dim)
        value, _ = covering_estimate(X)
        assert value == pytest.approx(np.arccos(1 / np.sqrt(dim)), abs=1e-6)


def test_covering_estimate_is_a_lower_bound():
    # the estimator reports an exactly-evaluated nearest-point distance, so
    # it can never exceed the true covering radius
    for dim in (4, 6):
        X = _cross_polytope(dim)
        value, _ = covering_estimate(X)
        assert value <= np.arccos(1 / np.sqrt(dim)) + 1e-12


def test_covering_monotone_under_insertion():
    # adding a point cannot increase the covering radius (same net, seed)
    rng = np.random.default_rng(403)
    base = random_unit_points(rng, 10, 4)
    extra = random_unit_points(rng, 1, 4)
    opts = CoveringOptions(seeds=2**13, refine_iters=25, seed=7)
    before, _ = covering_estimate(RealPointSet(points=base), opts)
    after, _ = covering_estimate(
        RealPointSet(points=np.vstack([base, extra])), opts
    )
    assert after <= before + 1e-9


def test_covering_deterministic():
    rng = np.random.default_rng(404)
    X = RealPointSet(points=random_unit_points(rng, 12, 4))
    opts = CoveringOptions(seeds=2**12, refine_iters=20, seed=3)
    a = covering_estimate(X, opts)
    b = covering_estimate(X, opts)
    assert a == b


def test_mesh_ratio_report():
    X = _cross_polytope(4)
    report = mesh_ratio(X)
    assert report.N == 8
    assert report.separation == pytest.approx(np.pi / 2, abs=0)
    assert report.covering == pytest.approx(np.arccos(0.5), abs=1e-6)
    assert report.mesh_ratio == pytest.approx(
        report.covering / (0.5 * report.separation), rel=1e-12
    )
    assert report.mesh_ratio == pytest.approx(4.0 / 3.0, abs=2e-3)


def test_mesh_ratio_at_least_one():
    # covering radius always dominates half the separation
    rng = np.random.default_rng(405)
    for n, dim in [(8, 4), (20, 6)]:
        X = RealPointSet(points=random_unit_points(rng, n, dim))
        report = mesh_ratio(X, CoveringOptions(seeds=2**13))
        assert report.mesh_ratio >= 1.0 - 1e-9


def test_stereographic_roundtrip():
    rng = np.random.default_rng(406)
    X = RealPointSet(points=random_unit_points(rng, 25, 4))
    Y = stereographic_projection(X)
    assert Y.shape == (25, 3)
    back = stereographic_inverse(Y)
    assert np.max(np.abs(back - X.points)) < 1e-12


def test_stereographic_general_pole():
    rng = np.random.default_rng(407)
    X = RealPointSet(points=random_unit_points(rng, 10, 4))
    pole = random_unit_points(rng, 1, 4)[0]
    Y = stereographic_projection(X, pole=pole)
    back = stereographic_inverse(Y, pole=pole)
    assert np.max(np.abs(back - X.points)) < 1e-12


def test_stereographic_rejects_bad_input():
    pole_hit = RealPointSet(points=np.array([[1.0, 0, 0, 0]]))
    with pytest.raises(ValueError):
        stereographic_projection(pole_hit)
    wrong_dim = RealPointSet(points=np.eye(3))
    with pytest.raises(ValueError):
        stereographic_projection(wrong_dim)


def test_csv_exports(tmp_path):
    rng = np.random.default_rng(408)
    X = RealPointSet(points=random_unit_points(rng, 6, 4))

    ip_path = tmp_path / "ip.csv"
    write_inner_products_csv(ip_path, X)
    with open(ip_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["rank", "inner_product"]
    assert len(rows) == 1 + 6 * 5 // 2

    cov_path = tmp_path / "cov.csv"
    write_covering_csv(cov_path, X, CoveringOptions(seeds=2**10, refine_iters=10))
    with open(cov_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["rank", "local_max_radians"]
    assert len(rows) > 1

    st_path = tmp_path / "st.csv"
    write_stereographic_csv(st_path, X)
    with open(st_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["y1", "y2", "y3"]
    assert len(rows) == 7
