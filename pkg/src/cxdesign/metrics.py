"""Separation, covering radius, mesh ratio, and figure-data exports.

Complex point sets are measured through their real unfolding: the real part
of a Hermitian inner product equals the real inner product of the unfolded
vectors, so all three metrics transfer verbatim and agree bit for bit.

The covering radius is estimated, not certified: exact computation needs a
spherical Delaunay triangulation, which is impractical above S^3. The
estimator runs projected ascent on the min-distance function from a large
quasi-random start net plus every point's far pole, and only ever accepts
steps that improve the exact objective, so the returned value is a certified
lower bound on the true covering radius. The reported uncertainty is the
covering radius of the start net itself, bounded by pi * seeds**(-1/m).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .sphere import ComplexPointSet, RealPointSet, complex_to_real

__all__ = [
    "CoveringOptions",
    "MetricsReport",
    "separation",
    "covering_estimate",
    "mesh_ratio",
    "sorted_inner_products",
    "stereographic_projection",
    "stereographic_inverse",
    "write_inner_products_csv",
    "write_covering_csv",
    "write_stereographic_csv",
]

_SEED_FACTOR = 4096
_SEED_CAP = 2**22
_CHUNK = 2**18
_TOP_K = 48


@dataclass(frozen=True)
class CoveringOptions:
    """Knobs for covering_estimate.

    seeds: quasi-random start count; None means 4096*N, rounded up to a
    power of two for the digital net and capped at 2**22.
    """

    seeds: int | None = None
    refine_iters: int = 50
    seed: int = 0


@dataclass(frozen=True)
class MetricsReport:
    separation: float
    covering: float
    covering_uncertainty: float
    mesh_ratio: float
    N: int


def _real_matrix(X):
    if isinstance(X, ComplexPointSet):
        return complex_to_real(X.points)
    if isinstance(X, RealPointSet):
        return X.points
    raise TypeError("expected a RealPointSet or ComplexPointSet")


def separation(X):
    """Smallest pairwise geodesic distance, exact up to arccos rounding."""
    pts = _real_matrix(X)
    n = pts.shape[0]
    if n < 2:
        raise ValueError("separation needs at least 2 points")
    gram = pts @ pts.T
    np.fill_diagonal(gram, -2.0)
    return float(np.arccos(np.clip(np.max(gram), -1.0, 1.0)))


def sorted_inner_products(X):
    """The N(N-1)/2 off-diagonal inner products, descending.

    Real inner products for real sets; real parts of Hermitian products for
    complex sets (identical numbers via the unfolding).
    """
    pts = _real_matrix(X)
    n = pts.shape[0]
    if n < 2:
        raise ValueError("need at least 2 points")
    gram = pts @ pts.T
    iu = np.triu_indices(n, k=1)
    vals = gram[iu]
    return np.sort(vals)[::-1]


def _exact_min_dist(Y, pts):
    # F(y) = min_i arccos(y . x_i), evaluated exactly for each row of Y
    u = np.clip(Y @ pts.T, -1.0, 1.0)
    return np.arccos(np.max(u, axis=1))


def _net_on_sphere(n, dim, engine):
    raw = engine.random(n)
    # inverse normal CDF turns the digital net into a Gaussian net; rows
    # then normalize to the sphere
    g = ndtri(np.clip(raw, 1e-15, 1.0 - 1e-15))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return g / norms


def _top_starts(pts, seeds, seed):
    n, dim = pts.shape
    engine = qmc.Sobol(d=dim, scramble=True, seed=seed)
    best_vals = np.full(_TOP_K, -1.0)
    best_pts = np.zeros((_TOP_K, dim))
    remaining = seeds
    while remaining > 0:
        take = min(_CHUNK, remaining)
        Y = _net_on_sphere(take, dim, engine)
        F = _exact_min_dist(Y, pts)
        vals = np.concatenate([best_vals, F])
        cand = np.vstack([best_pts, Y])
        order = np.argsort(vals)[::-1][:_TOP_K]
        best_vals = vals[order]
        best_pts = cand[order]
        remaining -= take
    return best_pts[best_vals >= 0.0]


def _refine(Y, pts, iters):
    """Vectorized projected ascent on the smoothed min-distance function.

    Softmin smoothing with a decreasing temperature handles the kinks where
    several points tie for nearest; every step is validated against the
    exact objective before acceptance.
    """
    taus = np.geomspace(0.5, 1e-10, max(iters, 2))
    F = _exact_min_dist(Y, pts)
    h = np.full(Y.shape[0], 0.05)
    for tau in taus[:iters]:
        u = np.clip(Y @ pts.T, -1.0, 1.0)
        d = np.arccos(u)
        dmin = np.min(d, axis=1, keepdims=True)
        w = np.exp(-(d - dmin) / tau)
        w /= np.sum(w, axis=1, keepdims=True)
        # d/dy arccos(y.x) = -x / sqrt(1 - (y.x)^2), then project to tangent
        coef = w / np.sqrt(np.maximum(1.0 - u * u, 1e-30))
        G = -(coef @ pts)
        G -= np.sum(G * Y, axis=1, keepdims=True) * Y
        gnorm = np.linalg.norm(G, axis=1)
        alive = gnorm > 1e-17
        if not np.any(alive):
            break
        U = np.zeros_like(Y)
        U[alive] = G[alive] / gnorm[alive, None]
        accepted = np.zeros(Y.shape[0], dtype=bool)
        step = h.copy()
        for _ in range(30):
            trying = alive & ~accepted & (step > 1e-15)
            if not np.any(trying):
                break
            T = np.cos(step[trying, None]) * Y[trying] + np.sin(
                step[trying, None]
            ) * U[trying]
            T /= np.linalg.norm(T, axis=1, keepdims=True)
            Ft = _exact_min_dist(T, pts)
            better = Ft > F[trying]
            idx = np.flatnonzero(trying)
            good = idx[better]
            Y[good] = T[better]
            F[good] = Ft[better]
            accepted[good] = True
            step[idx[~better]] *= 0.5
        h[accepted] = np.minimum(step[accepted] * 1.5, 0.5)
        h[~accepted] = np.maximum(h[~accepted] * 0.5, 1e-15)
    return F


def covering_estimate(X, opts=None):
    """Estimate the covering radius; returns (value, uncertainty).

    The value is a certified lower bound (the exact min-distance at the best
    point the search visited). The uncertainty is the resolution of the
    start net, pi * seeds**(-1/m); the refinement typically does far better,
    but only the net density is guaranteed.
    """
    if opts is None:
        opts = CoveringOptions()
    pts = _real_matrix(X)
    n, dim = pts.shape
    m = dim - 1
    if opts.seeds is not None:
        seeds = int(opts.seeds)
        if seeds < 1:
            raise ValueError("seeds must be positive")
    else:
        seeds = _SEED_FACTOR * n
    seeds = min(_SEED_CAP, 2 ** int(np.ceil(np.log2(seeds))))
    starts = _top_starts(pts, seeds, opts.seed)
    far_poles = -pts
    Y = np.vstack([starts, far_poles])
    F = _refine(Y.copy(), pts, opts.refine_iters)
    uncertainty = np.pi * seeds ** (-1.0 / m)
    return float(np.max(F)), float(uncertainty)


def mesh_ratio(X, opts=None):
    """Separation, covering, and their ratio 2*covering/separation."""
    sep = separation(X)
    cov, unc = covering_estimate(X, opts)
    pts = _real_matrix(X)
    return MetricsReport(
        separation=sep,
        covering=cov,
        covering_uncertainty=unc,
        mesh_ratio=2.0 * cov / sep,
        N=pts.shape[0],
    )


def _pole_frame(pole):
    pole = np.asarray(pole, dtype=float)
    if pole.shape != (4,):
        raise ValueError("pole must be a point on S^3")
    if abs(np.linalg.norm(pole) - 1.0) > 1e-10:
        raise ValueError("pole must be a unit vector")
    # Householder reflection taking the pole to e_1; identity when it is e_1
    v = pole - np.array([1.0, 0.0, 0.0, 0.0])
    nv = np.dot(v, v)
    H = np.eye(4)
    if nv > 1e-30:
        H -= 2.0 * np.outer(v, v) / nv
    return H


def stereographic_projection(X, pole=(1.0, 0.0, 0.0, 0.0)):
    """Stereographic image in R^3 of points on S^3 from the given pole.

    The pole's antipode maps to the origin and the orthogonal equator maps
    to the unit sphere. Points may not coincide with the pole.
    """
    pts = _real_matrix(X)
    if pts.shape[1] != 4:
        raise ValueError("stereographic projection is defined here for S^3 only")
    H = _pole_frame(pole)
    W = pts @ H.T
    denom = 1.0 - W[:, 0]
    if np.min(np.abs(denom)) < 1e-12:
        raise ValueError("a point coincides with the projection pole")
    return W[:, 1:] / denom[:, None]


def stereographic_inverse(Y, pole=(1.0, 0.0, 0.0, 0.0)):
    """Inverse of stereographic_projection; returns points on S^3."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y.reshape(1, -1)
    if Y.shape[1] != 3:
        raise ValueError("expected R^3 coordinates")
    H = _pole_frame(pole)
    r2 = np.sum(Y * Y, axis=1)
    W = np.empty((Y.shape[0], 4))
    W[:, 0] = (r2 - 1.0) / (r2 + 1.0)
    W[:, 1:] = 2.0 * Y / (r2 + 1.0)[:, None]
    return W @ H


def _write_rows(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_inner_products_csv(path, X):
    """Columns: rank, inner_product (descending)."""
    vals = sorted_inner_products(X)
    _write_rows(
        path,
        ["rank", "inner_product"],
        [(i + 1, f"{v:.16e}") for i, v in enumerate(vals)],
    )
    return Path(path)


def write_covering_csv(path, X, opts=None):
    """Columns: rank, local_max_radians for every refined ascent candidate.

    The first row is the covering estimate itself; the spread of the rest
    shows how many distinct basins the search explored.
    """
    if opts is None:
        opts = CoveringOptions()
    pts = _real_matrix(X)
    n = pts.shape[0]
    seeds = opts.seeds if opts.seeds is not None else _SEED_FACTOR * n
    seeds = min(_SEED_CAP, 2 ** int(np.ceil(np.log2(max(int(seeds), 1)))))
    starts = _top_starts(pts, seeds, opts.seed)
    Y = np.vstack([starts, -pts])
    F = _refine(Y.copy(), pts, opts.refine_iters)
    F = np.sort(F)[::-1]
    _write_rows(
        path,
        ["rank", "local_max_radians"],
        [(i + 1, f"{v:.16e}") for i, v in enumerate(F)],
    )
    return Path(path)


def write_stereographic_csv(path, X, pole=(1.0, 0.0, 0.0, 0.0)):
    """Columns: y1, y2, y3, one row per point, same order as the input."""
    img = stereographic_projection(X, pole)
    _write_rows(
        path,
        ["y1", "y2", "y3"],
        [tuple(f"{v:.16e}" for v in row) for row in img],
    )
    return Path(path)
