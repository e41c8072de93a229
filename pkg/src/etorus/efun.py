"""Exact evaluation of E-functions as sums of roots of unity.

An E-function is the sum of exponentials exp(2 pi i <w lambda, x>) over the
even Weyl group.  On lattice points every exponent is an exact fraction with
denominator center * M, so each term is a lookup into a precomputed table of
roots of unity and the only floating point happens in the final compensated
summation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from .errors import SizeLimitError
from .rootdata import PointCoord, WeightCoord, euclidean_realization

DEFAULT_TABLE_CAP = 5 * 10 ** 7


@lru_cache(maxsize=64)
def unit_roots(order):
    """The `order` complex roots of unity, index k -> exp(2 pi i k / order)."""
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    roots.setflags(write=False)
    return roots


def _kahan_add(total, comp, term):
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def evaluate_E(rsd, even_group, lam, x):
    """Value of the E-function with label lam at the lattice point x.

    Sums over all group elements in canonical order (repeated orbit weights
    contribute multiply), with Kahan compensation.
    """
    t = lam.vector if isinstance(lam, WeightCoord) else np.asarray(lam, dtype=int)
    if isinstance(x, PointCoord):
        s, M = x.vector, x.level
    else:
        raise TypeError("evaluate_E expects a PointCoord; use evaluate_E_real off-lattice")
    order = rsd.center * M
    roots = unit_roots(order)
    adj_s = rsd.cartan_adjugate @ s
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for w in even_group:
        k = int((w.matrix @ t) @ adj_s) % order
        total, comp = _kahan_add(total, comp, roots[k])
    return total


def evaluate_E_real(rsd, even_group, lam, y, realization=None):
    """E-function at an arbitrary real point y in omega-check coordinates.

    Pairings are evaluated through the Euclidean realization of the bases;
    exact lattice arithmetic does not apply off-lattice.
    """
    t = lam.vector if isinstance(lam, WeightCoord) else np.asarray(lam, dtype=int)
    if realization is None:
        realization = euclidean_realization(rsd)
    x_euc = np.asarray(y, dtype=float) @ realization.dual_weights
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for w in even_group:
        lam_euc = (w.matrix @ t) @ realization.weights
        total, comp = _kahan_add(total, comp, np.exp(2j * np.pi * float(lam_euc @ x_euc)))
    return total


def _needs_bigint(T, group_mats, adj, S):
    """Conservative overflow check for the int64 phase matmuls."""
    n = adj.shape[0]
    tmax = int(np.abs(T).max(initial=0))
    smax = int(np.abs(S).max(initial=0))
    amax = max(int(np.abs(A).max()) for A in group_mats)
    admax = int(np.abs(adj).max())
    return n ** 3 * tmax * amax * admax * smax >= 2 ** 62


def _accumulate_rows(rsd, group_mats, T, adj_S, order, out_rows):
    roots = unit_roots(order)
    total = np.zeros((T.shape[0], adj_S.shape[1]), dtype=complex)
    comp = np.zeros_like(total)
    for A in group_mats:
        term = roots[((T @ A.T @ adj_S) % order).astype(np.int64)]
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    out_rows[:] = total


def evaluate_E_table(rsd, even_group, weights, points, M, threads=1, cap=DEFAULT_TABLE_CAP):
    """Matrix of E-function values, row = weight label, column = grid point.

    `weights` and `points` are integer coordinate matrices (one row per
    weight in omega coordinates, one row per point in omega-check numerator
    coordinates at level M).  Work is split over complete weight-row blocks,
    each accumulated in canonical group order, so the result is identical for
    any thread count.
    """
    T = np.asarray(weights, dtype=np.int64).reshape(len(weights), rsd.rank)
    S = np.asarray(points, dtype=np.int64).reshape(len(points), rsd.rank).T
    if T.shape[0] * S.shape[1] > cap:
        raise SizeLimitError(
            f"table of {T.shape[0]}x{S.shape[1]} values exceeds cap {cap}",
            required=T.shape[0] * S.shape[1],
        )
    order = rsd.center * M
    mats = [w.matrix for w in even_group]
    if _needs_bigint(T, mats, rsd.cartan_adjugate, S):
        # exact Python-int arithmetic; slow path for extreme levels
        T = T.astype(object)
    adj_S = rsd.cartan_adjugate @ S
    out = np.empty((T.shape[0], S.shape[1]), dtype=complex)
    threads = max(1, int(threads))
    if threads == 1 or T.shape[0] < 2 * threads:
        _accumulate_rows(rsd, mats, T, adj_S, order, out)
        return out
    bounds = np.linspace(0, T.shape[0], threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_accumulate_rows, rsd, mats, T[a:b], adj_S, order, out[a:b])
            for a, b in zip(bounds[:-1], bounds[1:]) if b > a
        ]
        for fut in futures:
            fut.result()
    return out


def evaluate_E_pairs(rsd, even_group, weights, points, M):
    """Vectorized elementwise evaluation: value k pairs weights[k] with points[k]."""
    T = np.asarray(weights, dtype=np.int64).reshape(-1, rsd.rank)
    S = np.asarray(points, dtype=np.int64).reshape(-1, rsd.rank)
    if T.shape[0] != S.shape[0]:
        raise ValueError("pairwise evaluation needs equally many weights and points")
    order = rsd.center * M
    roots = unit_roots(order)
    mats = [w.matrix for w in even_group]
    if _needs_bigint(T, mats, rsd.cartan_adjugate, S):
        T = T.astype(object)
    adj_S = S @ rsd.cartan_adjugate.T
    total = np.zeros(T.shape[0], dtype=complex)
    comp = np.zeros_like(total)
    for A in mats:
        k = (((T @ A.T) * adj_S).sum(axis=1) % order).astype(np.int64)
        term = roots[k]
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
