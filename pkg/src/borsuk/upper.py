"""Partition upper bounds for spheres of radius just above one half.

A sphere of radius r in R^d splits into the d+1 radial projections of
the facets of an inscribed regular simplex.  Each piece is congruent, so
one number controls everything: the largest distance between two points
of a single projected facet.  For r = 1/2 the circle case gives the
classical sqrt(3)/2, and as long as the piece diameter stays below 1 the
partition witnesses an upper bound matching the construction's regime
r = 1/2 + Theta(1/d).

The piece diameter is computed by projected gradient ascent over pairs
of points in one facet, written as convex weight vectors.  Distances on
a sphere of radius r are exactly r times the unit-sphere values, so the
optimization runs once per dimension at unit radius and is cached.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactnum import PRECISION_BITS, LogReal, mp

MIN_DIMENSION = 2
MAX_NUMERIC_DIMENSION = 12

_MAX_ITERS = 4000
_ETA_MIN = 1e-13


def simplex_vertices(d: int, r: float) -> np.ndarray:
    """Vertices of a regular simplex inscribed in the radius-r sphere.

    Returns a (d+1, d) array with |v_i| = r and <v_i, v_j> = -r^2/d.
    Built from the centered coordinate frame in R^(d+1) pushed through
    an orthonormal basis of the sum-zero hyperplane.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    if r <= 0:
        raise ValueError("radius must be positive")
    # rows of H: orthonormal basis of {x : sum x = 0} in R^(d+1)
    H = np.zeros((d, d + 1))
    for j in range(1, d + 1):
        H[j - 1, :j] = 1.0
        H[j - 1, j] = -float(j)
        H[j - 1] /= np.sqrt(j * (j + 1.0))
    U = np.eye(d + 1) - 1.0 / (d + 1)
    V = U @ H.T
    # rows come out with norm sqrt(d/(d+1)); rescale to radius r
    V *= r / np.sqrt(np.sum(V[0] ** 2))
    return V


def _project_rows(Y: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    S, m = Y.shape
    U = np.sort(Y, axis=1)[:, ::-1]
    css = np.cumsum(U, axis=1) - 1.0
    idx = np.arange(1, m + 1)
    cond = U - css / idx > 0
    # cond[:, 0] is always true; take the last true index per row
    rho = m - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(S), rho] / (rho + 1.0)
    return np.maximum(Y - theta[:, None], 0.0)


def _radial(L: np.ndarray, F: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    W = L @ F
    norms = np.sqrt(np.sum(W * W, axis=1))
    return W / norms[:, None], norms


def _pair_objective(L, M, F):
    P, _ = _radial(L, F)
    Q, _ = _radial(M, F)
    diff = P - Q
    return np.sum(diff * diff, axis=1)


def _pair_gradients(L, M, F):
    P, nl = _radial(L, F)
    Q, nm = _radial(M, F)
    u = P - Q
    tl = (u - P * np.sum(P * u, axis=1)[:, None]) / nl[:, None]
    tm = (-u - Q * np.sum(Q * (-u), axis=1)[:, None]) / nm[:, None]
    return tl @ F.T, tm @ F.T


def _start_points(d: int, restarts: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Deterministic starts: vertex pairs, subset splits, Dirichlet draws."""
    Ls: List[np.ndarray] = []
    Ms: List[np.ndarray] = []
    eye = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            Ls.append(eye[i])
            Ms.append(eye[j])
    centroid = np.full(d, 1.0 / d)
    for i in range(d):
        Ls.append(eye[i])
        Ms.append(centroid)
    # balanced splits of the facet vertex set; these carry the true
    # optimum for every dimension in the numeric range
    s = d // 2
    if s >= 1:
        idx = np.arange(d)
        for shift in range(d):
            rolled = np.roll(idx, shift)
            lo, hi = rolled[:s], rolled[s:]
            wl = np.zeros(d)
            wl[lo] = 1.0 / len(lo)
            wm = np.zeros(d)
            wm[hi] = 1.0 / len(hi)
            Ls.append(wl)
            Ms.append(wm)
    rng = np.random.default_rng([seed, d])
    if restarts > 0:
        Ls.append(rng.dirichlet(np.ones(d), size=restarts))
        Ms.append(rng.dirichlet(np.ones(d), size=restarts))
    L = np.vstack([np.atleast_2d(x) for x in Ls])
    M = np.vstack([np.atleast_2d(x) for x in Ms])
    return L, M


@functools.lru_cache(maxsize=None)
def _unit_piece_diameter(d: int, restarts: int, seed: int) -> float:
    """Largest distance between two points of one projected facet, r = 1."""
    V = simplex_vertices(d, 1.0)
    F = V[:-1]
    L, M = _start_points(d, restarts, seed)
    f = _pair_objective(L, M, F)
    eta = np.full(len(f), 0.25)
    for _ in range(_MAX_ITERS):
        active = eta >= _ETA_MIN
        if not active.any():
            break
        gL, gM = _pair_gradients(L, M, F)
        Lc = _project_rows(L + eta[:, None] * gL)
        Mc = _project_rows(M + eta[:, None] * gM)
        fc = _pair_objective(Lc, Mc, F)
        improve = active & (fc > f + 1e-18)
        L[improve] = Lc[improve]
        M[improve] = Mc[improve]
        f[improve] = fc[improve]
        eta[improve] = np.minimum(eta[improve] * 1.25, 1.0)
        eta[active & ~improve] *= 0.5
    else:
        stuck = int(np.sum(eta >= _ETA_MIN))
        if stuck:
            raise RuntimeError(
                "piece diameter ascent did not converge for %d of %d starts "
                "at d=%d (max step %.3e)" % (stuck, len(f), d, float(eta.max()))
            )
    # stationarity probe: a frozen start must not admit an improving step
    gL, gM = _pair_gradients(L, M, F)
    probe = _pair_objective(
        _project_rows(L + 1e-6 * gL), _project_rows(M + 1e-6 * gM), F
    )
    drifts = probe - f
    worst = float(drifts.max())
    if worst > 1e-10 * (1.0 + float(f.max())):
        raise RuntimeError(
            "piece diameter ascent stalled before stationarity at d=%d "
            "(residual improvement %.3e)" % (d, worst)
        )
    return float(np.sqrt(f.max()))


def piece_diameter(d: int, r: float, restarts: int = 50, seed: int = 0) -> float:
    """Diameter of one projected-facet piece on the radius-r sphere.

    Exact homothety: the value is r times the unit-radius diameter, so
    the numeric work depends only on d, restarts and seed.
    """
    if not MIN_DIMENSION <= d <= MAX_NUMERIC_DIMENSION:
        raise ValueError(
            "dimension outside numeric range [%d, %d]"
            % (MIN_DIMENSION, MAX_NUMERIC_DIMENSION)
        )
    if r <= 0:
        raise ValueError("radius must be positive")
    if restarts < 1:
        raise ValueError("need at least one restart")
    return r * _unit_piece_diameter(d, restarts, seed)


@dataclass(frozen=True)
class SimplexPartitionReport:
    """One row of the partition table.

    piece_diam is measured for d in the numeric range and extrapolated
    from the fitted gap trend beyond it; passes means the piece stays
    strictly below diameter 1.
    """

    d: int
    r: float
    piece_diam: float
    c_fit: float
    residual: float
    extrapolated: bool
    passes: bool


def _gap_trend(c_r: float, restarts: int, seed: int) -> Tuple[float, float]:
    """Fit gap(d) = 2r - piece_diam against x = 2r/d over the numeric range.

    Returns (c_fit, rms residual).  The gap closes like a constant times
    2r/d, which is what lets the radius margin c_r/d survive in every
    dimension.
    """
    xs = []
    ys = []
    for d in range(MIN_DIMENSION, MAX_NUMERIC_DIMENSION + 1):
        r = 0.5 + c_r / d
        diam = piece_diameter(d, r, restarts=restarts, seed=seed)
        xs.append(2.0 * r / d)
        ys.append(2.0 * r - diam)
    x = np.array(xs)
    y = np.array(ys)
    c_fit = float(np.sum(x * y) / np.sum(x * x))
    residual = float(np.sqrt(np.mean((y - c_fit * x) ** 2)))
    return c_fit, residual


def simplex_partition_check(
    d: int, c_r: float = 0.01, restarts: int = 50, seed: int = 0
) -> SimplexPartitionReport:
    """Check the facet partition at radius r = 1/2 + c_r/d.

    Within the numeric dimension range the piece diameter is measured;
    beyond it the fitted trend extrapolates, and the row says so.
    """
    if d < MIN_DIMENSION:
        raise ValueError("dimension must be at least %d" % MIN_DIMENSION)
    if c_r < 0:
        raise ValueError("radius margin must be nonnegative")
    r = 0.5 + c_r / d
    c_fit, residual = _gap_trend(c_r, restarts, seed)
    if d <= MAX_NUMERIC_DIMENSION:
        diam = piece_diameter(d, r, restarts=restarts, seed=seed)
        extrapolated = False
    else:
        diam = 2.0 * r - c_fit * (2.0 * r / d)
        extrapolated = True
    return SimplexPartitionReport(
        d=d,
        r=r,
        piece_diam=diam,
        c_fit=c_fit,
        residual=residual,
        extrapolated=extrapolated,
        passes=diam < 1.0,
    )


def partition_table(
    d_values: Sequence[int],
    c_r: float = 0.01,
    restarts: int = 50,
    seed: int = 0,
) -> List[SimplexPartitionReport]:
    """Partition reports for a list of dimensions, shared trend fit."""
    return [simplex_partition_check(d, c_r, restarts, seed) for d in d_values]


def covering_log_upper(r: float, d: int) -> LogReal:
    """ln of (2r)^d, the growth scale no partition argument can beat.

    Any covering-based upper bound for the radius-r sphere costs at most
    exponentially many pieces with base 2r, so lower-bound bases must be
    compared against this ceiling.  Requires r > 1/2.
    """
    if r <= 0.5:
        raise ValueError("radius not above one half")
    if d < 1:
        raise ValueError("dimension must be positive")
    with mp.workprec(PRECISION_BITS):
        return LogReal.from_log(d * mp.log(2 * mp.mpf(r)), 1)
