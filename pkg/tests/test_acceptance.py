"""Acceptance gate: one test per shipped guarantee, at the stated tolerance.

Run with `pytest -v tests/test_acceptance.py` to get a pass/fail line per
criterion; each test also prints a one-line summary with the measured
numbers (visible with -s or on failure).
"""

import time
from math import comb

import numpy as np
import pytest
from scipy.special import ndtri
from scipy.stats import qmc

from cxdesign import (
    ComplexPointSet,
    CoveringOptions,
    OptimizerConfig,
    RealPointSet,
    complex_monomial_integral,
    covering_estimate,
    demo_error_curve,
    dim_harm,
    find_design,
    is_spherical_design,
    map_design,
    mesh_ratio,
    monomial_pairs,
    per_degree_sums,
    point_counts,
    real_to_complex,
    separation,
    symmetrize,
    tight_design,
    variational_gradient,
    variational_value,
    verify_triangular_design,
    zonal_psi,
)
from cxdesign.orthopoly import legendre_normalized
from conftest import random_unit_points


def _report(criterion, detail):
    print(f"ACCEPTANCE {criterion}: PASS  ({detail})")


# ---------------------------------------------------------------------------
# 1. point-count formulas reproduce the published symmetric node counts
# ---------------------------------------------------------------------------

def test_criterion_1_point_counts():
    published_d2 = [
        28, 60, 114, 194, 308, 458, 650, 890, 1184, 1538, 1954, 2440,
        3000, 3642,
    ]
    computed = [point_counts(2, t).nbar for t in range(5, 32, 2)]
    assert computed == published_d2

    published_rest = {
        (3, 5): 56, (3, 7): 192, (3, 9): 522, (3, 11): 1208,
        (4, 5): 102, (4, 7): 498,
        (5, 5): 170,
        (6, 5): 260,
    }
    for (d, t), n in published_rest.items():
        assert point_counts(d, t).nbar == n
    # the t = 3 rows of those tables are cross-polytopes with 4d points
    for d, n in zip((3, 4, 5, 6), (12, 16, 20, 24)):
        assert 4 * d == n

    _report(1, f"{len(published_d2) + len(published_rest)} published counts exact")


# ---------------------------------------------------------------------------
# 2. tight families: verification, exact separation, covering, mesh ratio
# ---------------------------------------------------------------------------

def test_criterion_2_tight_families():
    worst_cov = 0.0
    for d in (2, 3, 4, 5, 6):
        rule = tight_design(d, 3)
        check = verify_triangular_design(rule.nodes, 3, tol=1e-12)
        assert check.passed, f"d={d} cross-polytope fails at 1e-12"

        X = symmetrize(np.eye(2 * d))
        assert separation(X) == np.pi / 2  # inner products exactly zero

        cov, _ = covering_estimate(X)
        target = float(np.arccos(1.0 / np.sqrt(2 * d)))
        worst_cov = max(worst_cov, abs(cov - target))
        assert abs(cov - target) <= 1e-3

        if d == 2:
            ratio = mesh_ratio(X).mesh_ratio
            assert abs(ratio - 4.0 / 3.0) <= 2e-3

    pair = RealPointSet(
        points=np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]]), symmetric=True
    )
    pair_ratio = mesh_ratio(pair).mesh_ratio
    assert abs(pair_ratio - 1.0) <= 1e-9

    _report(
        2,
        f"d=2..6 verified at 1e-12; worst covering gap {worst_cov:.2e}; "
        f"antipodal ratio err {abs(pair_ratio - 1.0):.2e}",
    )


# ---------------------------------------------------------------------------
# 3. desk-scale searches converge with the published quality
# ---------------------------------------------------------------------------

def test_criterion_3_desk_scale_searches(design_library):
    t0 = time.monotonic()
    r5 = design_library.get(2, 5, N=28, restarts=10)
    t5 = time.monotonic() - t0
    assert t5 <= 600
    assert r5.converged and r5.per_degree_max <= 1e-12
    assert r5.mesh_ratio <= 1.9

    t0 = time.monotonic()
    r7 = design_library.get(2, 7, N=60, restarts=10)
    t7 = time.monotonic() - t0
    assert t7 <= 600
    assert r7.converged and r7.per_degree_max <= 1e-12
    assert r7.mesh_ratio <= 2.1

    t0 = time.monotonic()
    r3 = design_library.get(3, 3, N=12)
    t3 = time.monotonic() - t0
    assert t3 <= 600
    assert r3.converged
    sep = separation(r3.points)
    assert sep >= 1.55

    _report(
        3,
        f"t=5 ratio {r5.mesh_ratio:.4f} in {t5:.1f}s; "
        f"t=7 ratio {r7.mesh_ratio:.4f} in {t7:.1f}s; "
        f"d=3 separation {sep:.5f} in {t3:.1f}s",
    )


# ---------------------------------------------------------------------------
# 4. integration demo ladder: exactness and error decay
# ---------------------------------------------------------------------------

def test_criterion_4_integration_demo(design_library):
    degrees = (3, 5, 7, 9, 11)
    rules = []
    worst = 0.0
    for t in degrees:
        result = design_library.get(2, t)
        assert result.converged, f"search failed for t={t}"
        rule = map_design(result.points, t, tol=1e-11)
        assert rule.report.max_error <= 1e-11
        worst = max(worst, rule.report.max_error)
        rules.append(rule)

    x0 = np.array([1 + 1j, 1 + 1j])
    rows = demo_error_curve(rules, x0)
    errors = [err for _, _, err in rows]
    assert errors[-1] <= 1e-2 * errors[0]
    for a, b in zip(errors, errors[1:]):
        assert b <= 3.0 * a, "demo error not nonincreasing within factor 3"

    _report(
        4,
        f"worst monomial err {worst:.2e}; demo errors "
        + " -> ".join(f"{e:.2e}" for e in errors),
    )


# ---------------------------------------------------------------------------
# 5. the real-to-complex fold preserves the geometry
# ---------------------------------------------------------------------------

def _complex_side_metrics(Z, opts):
    # independent complex-side evaluation: distances from Re <u, v>
    pts = Z.points
    gram = np.clip((pts @ pts.conj().T).real, -1.0, 1.0)
    np.fill_diagonal(gram, -2.0)
    sep = float(np.arccos(gram.max()))
    unfolded = np.empty((pts.shape[0], 2 * pts.shape[1]))
    unfolded[:, 0::2] = pts.real
    unfolded[:, 1::2] = pts.imag
    cov, unc = covering_estimate(RealPointSet(points=unfolded), opts)
    return sep, cov, unc, cov / (0.5 * sep)


def test_criterion_5_bridge_preservation():
    rng = np.random.default_rng(951)
    opts = CoveringOptions(seeds=2**13, refine_iters=25, seed=5)
    worst_sep = worst_ratio = worst_cov = 0.0
    for k in range(50):
        dim = 4 if k % 2 == 0 else 6
        n = int(rng.integers(8, 25))
        X = RealPointSet(points=random_unit_points(rng, n, dim))
        sep_r = separation(X)
        cov_r, unc_r = covering_estimate(X, opts)
        ratio_r = cov_r / (0.5 * sep_r)

        Z = ComplexPointSet(points=real_to_complex(X.points))
        sep_c, cov_c, unc_c, ratio_c = _complex_side_metrics(Z, opts)

        worst_sep = max(worst_sep, abs(sep_r - sep_c))
        worst_ratio = max(worst_ratio, abs(ratio_r - ratio_c))
        worst_cov = max(worst_cov, abs(cov_r - cov_c))
        assert abs(sep_r - sep_c) <= 1e-12
        assert abs(ratio_r - ratio_c) <= 1e-12
        assert abs(cov_r - cov_c) <= unc_r + unc_c

    _report(
        5,
        f"50 sets: max sep gap {worst_sep:.1e}, max ratio gap "
        f"{worst_ratio:.1e}, max covering gap {worst_cov:.1e}",
    )


# ---------------------------------------------------------------------------
# 6. kernel identity, analytic gradient, parity of symmetric sums
# ---------------------------------------------------------------------------

def test_criterion_6_kernel_and_gradient():
    rng = np.random.default_rng(961)
    u = rng.uniform(-1.0, 1.0, size=64)
    worst_kernel = 0.0
    for m in (3, 5, 7, 9, 11):
        for t in (1, 2, 3, 5, 9, 17, 25, 31):
            vals, _ = zonal_psi(t, m, u)
            series = np.zeros_like(u)
            for ell in range(1, t + 1):
                series += dim_harm(m, ell) * legendre_normalized(ell, m, u)
            rel = np.max(np.abs(vals - series) / np.maximum(1.0, np.abs(series)))
            worst_kernel = max(worst_kernel, rel)
            assert rel <= 1e-9

    h = 1e-6
    worst_grad = 0.0
    for k in range(20):
        m = int(rng.integers(2, 6))  # m <= 5
        t = int(rng.integers(1, 8))  # t <= 7
        symmetric = bool(k % 2)
        n_gen = int(rng.integers(4, 9))
        G = random_unit_points(rng, n_gen, m + 1)

        def build(gens):
            return symmetrize(gens) if symmetric else RealPointSet(points=gens)

        grad = variational_gradient(build(G), t)
        i = int(rng.integers(n_gen))
        direction = rng.standard_normal(m + 1)
        direction -= np.dot(direction, G[i]) * G[i]
        direction /= np.linalg.norm(direction)

        def value_at(eps):
            moved = G.copy()
            y = G[i] + eps * direction
            moved[i] = y / np.linalg.norm(y)
            return variational_value(build(moved), t)

        fd = (value_at(h) - value_at(-h)) / (2 * h)
        analytic = float(np.dot(grad[i], direction))
        rel = abs(analytic - fd) / max(1e-8, abs(fd))
        worst_grad = max(worst_grad, rel)
        assert rel <= 1e-6

    worst_odd = 0.0
    for m, n_gen, t in [(3, 6, 7), (5, 9, 5), (4, 7, 6)]:
        X = symmetrize(random_unit_points(rng, n_gen, m + 1))
        w = per_degree_sums(X, t)
        for ell in range(1, t + 1, 2):
            worst_odd = max(worst_odd, abs(w[ell - 1]) / X.npoints**2)
            assert abs(w[ell - 1]) <= 1e-10 * X.npoints**2

    _report(
        6,
        f"kernel rel err {worst_kernel:.1e}; gradient rel err "
        f"{worst_grad:.1e} over 20 instances; odd-degree sums {worst_odd:.1e}",
    )


# ---------------------------------------------------------------------------
# 7. exact moments vs quasi-Monte Carlo with >= 1e7 nodes
# ---------------------------------------------------------------------------

def _qmc_moment_table(d, t, total_nodes, chunk, seed):
    """Means and standard errors of all monomials z^a conj(z)^b, |a|+|b| <= t.

    Streams a scrambled digital net through chunks: each chunk is mapped to
    the sphere by inverse-normal transform and normalization, every monomial
    of degree <= t is tabulated, and cross-products accumulate into Gram
    matrices for the mean and the second moment.
    """
    # enumerate single-sided exponent vectors of total degree <= t
    def _vectors(prefix, remaining, slots):
        if slots == 1:
            for a in range(remaining + 1):
                yield prefix + (a,)
            return
        for a in range(remaining + 1):
            yield from _vectors(prefix + (a,), remaining - a, slots - 1)

    exponents = [g for g in _vectors((), t, d)]
    index = {g: i for i, g in enumerate(exponents)}
    k = len(exponents)

    engine = qmc.Sobol(d=2 * d, scramble=True, seed=seed)
    s1 = np.zeros((k, k), dtype=complex)
    s2 = np.zeros((k, k))
    done = 0
    while done < total_nodes:
        raw = engine.random(chunk)
        normals = ndtri(np.clip(raw, 1e-15, 1.0 - 1e-15))
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        z = normals[:, 0::2] + 1j * normals[:, 1::2]
        # power table: pows[j][a] = z_j ** a
        pows = [
            [np.ones(chunk, dtype=complex)] for _ in range(d)
        ]
        for j in range(d):
            for a in range(1, t + 1):
                pows[j].append(pows[j][a - 1] * z[:, j])
        m = np.empty((chunk, k), dtype=complex)
        for g, i in index.items():
            col = pows[0][g[0]].copy()
            for j in range(1, d):
                col *= pows[j][g[j]]
            m[:, i] = col
        s1 += m.conj().T @ m
        a2 = (m.real**2 + m.imag**2)
        s2 += a2.T @ a2
        done += chunk
    mean = s1 / done
    second = s2 / done
    var = np.maximum(second - np.abs(mean) ** 2, 0.0)
    se = np.sqrt(var / done)
    return index, mean, se, done


def test_criterion_7_moment_oracle():
    worst_sigma = 0.0
    for d in (2, 3):
        t = 6
        chunk = 2**17
        total = 78 * chunk  # 10,223,616 >= 1e7
        index, mean, se, done = _qmc_moment_table(d, t, total, chunk, seed=77)
        assert done >= 10**7
        checked = 0
        for alpha, beta in monomial_pairs(d, t):
            ia, ib = index[alpha], index[beta]
            # mean[ib, ia] = average of conj(z^beta) z^alpha
            approx = mean[ib, ia]
            exact = complex_monomial_integral(d, alpha, beta)
            err = abs(approx - exact)
            bound = 3.0 * se[ib, ia] + 1e-12
            assert err <= bound, (
                f"d={d} pair {alpha}|{beta}: err {err:.2e} > 3 SE {bound:.2e}"
            )
            if se[ib, ia] > 0:
                worst_sigma = max(worst_sigma, err / se[ib, ia])
            checked += 1
        assert checked == comb(2 * d + t, t)

    _report(
        7,
        f"all pairs within 3 SE of QMC ({done:,} nodes); worst z-score "
        f"{worst_sigma:.2f}",
    )
