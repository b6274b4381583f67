"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

The public names (``pairwise_margins``, ``word_products``, ``slope_census``,
``tangent_pairs``) are bound at import time to the numba versions unless
``KLEINIAN_DISABLE_NUMBA=1``.  Both variants stay importable under the
``*_numba`` / ``*_numpy`` suffixes so the test-suite and the benchmark can
compare them directly.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

try:
    from numba import prange
except ImportError:  # pragma: no cover
    prange = range


# ---------------------------------------------------------------------------
# circle margins


def pairwise_margins_numpy(c1, r1, c2, r2):
    c1 = np.asarray(c1, dtype=np.complex128)
    c2 = np.asarray(c2, dtype=np.complex128)
    r1 = np.asarray(r1, dtype=np.float64)
    r2 = np.asarray(r2, dtype=np.float64)
    return np.abs(c1[:, None] - c2[None, :]) - (r1[:, None] + r2[None, :])


@njit(parallel=True)
def _pairwise_margins_nb(c1, r1, c2, r2):
    n = c1.shape[0]
    m = c2.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    for i in prange(n):
        for j in range(m):
            dz = c1[i] - c2[j]
            out[i, j] = np.hypot(dz.real, dz.imag) - (r1[i] + r2[j])
    return out


def pairwise_margins_numba(c1, r1, c2, r2):
    return _pairwise_margins_nb(
        np.ascontiguousarray(c1, dtype=np.complex128),
        np.ascontiguousarray(r1, dtype=np.float64),
        np.ascontiguousarray(c2, dtype=np.complex128),
        np.ascontiguousarray(r2, dtype=np.float64),
    )


# ---------------------------------------------------------------------------
# ordered products of generator matrices
#
# ``words`` is an (N, L) integer array of generator indices, padded with -1.


def word_products_numpy(gens, words):
    gens = np.asarray(gens, dtype=np.complex128)
    words = np.asarray(words, dtype=np.int64)
    n, length = words.shape
    out = np.broadcast_to(np.eye(2, dtype=np.complex128), (n, 2, 2)).copy()
    for k in range(length):
        col = words[:, k]
        live = col >= 0
        if not live.any():
            break
        out[live] = out[live] @ gens[col[live]]
    return out


@njit
def _word_products_nb(gens, words):
    n = words.shape[0]
    length = words.shape[1]
    out = np.empty((n, 2, 2), dtype=np.complex128)
    for i in range(n):
        a = 1.0 + 0j
        b = 0j
        c = 0j
        d = 1.0 + 0j
        for k in range(length):
            g = words[i, k]
            if g < 0:
                break
            ga = gens[g, 0, 0]
            gb = gens[g, 0, 1]
            gc = gens[g, 1, 0]
            gd = gens[g, 1, 1]
            a, b, c, d = (
                a * ga + b * gc,
                a * gb + b * gd,
                c * ga + d * gc,
                c * gb + d * gd,
            )
        out[i, 0, 0] = a
        out[i, 0, 1] = b
        out[i, 1, 0] = c
        out[i, 1, 1] = d
    return out


def word_products_numba(gens, words):
    return _word_products_nb(
        np.ascontiguousarray(gens, dtype=np.complex128),
        np.ascontiguousarray(words, dtype=np.int64),
    )


# ---------------------------------------------------------------------------
# primitive slopes of a flat torus shorter than a bound
#
# Slopes are taken up to sign with representative q > 0, or (1, 0).


def slope_census_numpy(u, v, bound, pmax, qmax):
    p = np.arange(-pmax, pmax + 1, dtype=np.int64)
    q = np.arange(0, qmax + 1, dtype=np.int64)
    P, Q = np.meshgrid(p, q, indexing="ij")
    P = P.ravel()
    Q = Q.ravel()
    keep = (Q > 0) | ((Q == 0) & (P == 1))
    keep &= np.gcd(P, Q) == 1
    P = P[keep]
    Q = Q[keep]
    lengths = np.abs(P * complex(u) + Q * complex(v))
    short = lengths <= bound
    return P[short], Q[short], lengths[short]


@njit
def _gcd(x, y):
    x = abs(x)
    y = abs(y)
    while y:
        x, y = y, x % y
    return x


@njit
def _slope_census_nb(u, v, bound, pmax, qmax):
    cap = (2 * pmax + 1) * (qmax + 1)
    ps = np.empty(cap, dtype=np.int64)
    qs = np.empty(cap, dtype=np.int64)
    ls = np.empty(cap, dtype=np.float64)
    k = 0
    for p in range(-pmax, pmax + 1):
        for q in range(0, qmax + 1):
            if q == 0 and p != 1:
                continue
            if _gcd(p, q) != 1:
                continue
            z = p * u + q * v
            length = np.hypot(z.real, z.imag)
            if length <= bound:
                ps[k] = p
                qs[k] = q
                ls[k] = length
                k += 1
    return ps[:k], qs[:k], ls[:k]


def slope_census_numba(u, v, bound, pmax, qmax):
    return _slope_census_nb(complex(u), complex(v), float(bound), int(pmax), int(qmax))


# ---------------------------------------------------------------------------
# tangent pairs in a large packing: sweep in the real direction, O(N) memory

_CHUNK = 1024


def tangent_pairs_numpy(centers, radii, tol):
    centers = np.asarray(centers, dtype=np.complex128)
    radii = np.asarray(radii, dtype=np.float64)
    n = centers.shape[0]
    out_i, out_j = [], []
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        m = pairwise_margins_numpy(centers[lo:hi], radii[lo:hi], centers, radii)
        ii, jj = np.nonzero(np.abs(m) <= tol)
        ii = ii + lo
        keep = ii < jj
        out_i.append(ii[keep])
        out_j.append(jj[keep])
    if not out_i:
        return np.empty((0, 2), dtype=np.int64)
    pairs = np.stack([np.concatenate(out_i), np.concatenate(out_j)], axis=1).astype(np.int64)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


@njit
def _tangent_pairs_nb(centers, radii, tol):
    n = centers.shape[0]
    xs = np.empty(n, dtype=np.float64)
    for i in range(n):
        xs[i] = centers[i].real
    order = np.argsort(xs, kind="mergesort")
    rmax = 0.0
    for i in range(n):
        rmax = max(rmax, radii[i])
    cap = 16
    out = np.empty((cap, 2), dtype=np.int64)
    k = 0
    for s in range(n):
        i = order[s]
        reach = xs[i] + radii[i] + rmax + tol
        for t in range(s + 1, n):
            j = order[t]
            if xs[j] > reach:
                break
            dz = centers[i] - centers[j]
            mg = np.hypot(dz.real, dz.imag) - (radii[i] + radii[j])
            if abs(mg) <= tol:
                if k == cap:
                    cap *= 2
                    grown = np.empty((cap, 2), dtype=np.int64)
                    grown[:k] = out[:k]
                    out = grown
                out[k, 0] = min(i, j)
                out[k, 1] = max(i, j)
                k += 1
    return out[:k]


def tangent_pairs_numba(centers, radii, tol):
    pairs = _tangent_pairs_nb(
        np.ascontiguousarray(centers, dtype=np.complex128),
        np.ascontiguousarray(radii, dtype=np.float64),
        float(tol),
    )
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


if USE_NUMBA:
    pairwise_margins = pairwise_margins_numba
    word_products = word_products_numba
    slope_census = slope_census_numba
    tangent_pairs = tangent_pairs_numba
else:
    pairwise_margins = pairwise_margins_numpy
    word_products = word_products_numpy
    slope_census = slope_census_numpy
    tangent_pairs = tangent_pairs_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
