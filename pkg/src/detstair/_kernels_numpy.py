"""Pure-numpy implementations of the hot kernels.

Fallback twins of the numba kernels in _kernels_numba: prime-field polynomial
normal forms, multiplication-matrix application and modular linear algebra.
Polynomials travel as parallel arrays (packed int64 monomial keys sorted
descending, int64 coefficients in [0, q)).  Results must be bit-identical to
the numba path; the test suite enforces that.
"""
from __future__ import annotations

import numpy as np

from .order import unpack_array

_EMPTY = np.zeros(0, dtype=np.int64)


def _collapse(keys: np.ndarray, coeffs: np.ndarray, q: int):
    """Combine duplicate keys mod q, drop zeros, sort descending."""
    if keys.size == 0:
        return _EMPTY, _EMPTY
    uniq, inv = np.unique(keys, return_inverse=True)
    acc = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(acc, inv, coeffs)
    acc %= q
    mask = acc != 0
    return uniq[mask][::-1].copy(), acc[mask][::-1].copy()


def merge_scaled(k1, c1, shift1, scale1, k2, c2, shift2, scale2, q):
    """scale1 * t^shift1 * f1 + scale2 * t^shift2 * f2 over GF(q)."""
    keys = np.concatenate([k1 + shift1, k2 + shift2])
    coeffs = np.concatenate([(c1 * scale1) % q, (c2 * scale2) % q])
    return _collapse(keys, coeffs, q)


def mul_full(k1, c1, k2, c2, q):
    """Full polynomial product over GF(q)."""
    if k1.size == 0 or k2.size == 0:
        return _EMPTY, _EMPTY
    keys = (k1[:, None] + k2[None, :]).ravel()
    coeffs = ((c1[:, None] * c2[None, :]) % q).ravel()
    return _collapse(keys, coeffs, q)


def nf_reduce(keys, coeffs, lm_keys, bkeys, bcoeffs, boffs, q, nvars):
    """Full normal form of a polynomial against a basis.

    Every term is reduced, not just the lead; the divisor is always the first
    basis element (in the given order) whose leading monomial divides.
    """
    lm_exps = unpack_array(lm_keys, nvars)
    out_k: list[int] = []
    out_c: list[int] = []
    wk, wc = keys, coeffs
    pos = 0
    while pos < wk.shape[0]:
        k0 = int(wk[pos])
        c0 = int(wc[pos])
        e0 = unpack_array(np.array([k0], dtype=np.int64), nvars)[0]
        hits = np.nonzero((lm_exps <= e0).all(axis=1))[0]
        if hits.size == 0:
            out_k.append(k0)
            out_c.append(c0)
            pos += 1
            continue
        b = int(hits[0])
        s0, s1 = int(boffs[b]), int(boffs[b + 1])
        shift = k0 - int(lm_keys[b])
        scale = (c0 * pow(int(bcoeffs[s0]), q - 2, q)) % q
        neg = (q - scale) % q
        wk, wc = merge_scaled(
            wk[pos + 1 :], wc[pos + 1 :], 0, 1, bkeys[s0 + 1 : s1], bcoeffs[s0 + 1 : s1], shift, neg, q
        )
        pos = 0
    return np.array(out_k, dtype=np.int64), np.array(out_c, dtype=np.int64)


def matvec_mod(triv_src, triv_dst, dense_src, dense_mat, v, q):
    """Apply a column-structured multiplication matrix to a vector."""
    out = np.zeros(v.shape[0], dtype=np.int64)
    np.add.at(out, triv_dst, v[triv_src])
    if dense_src.size:
        weights = v[dense_src]
        active = np.nonzero(weights)[0]
        for s in active:
            out += (dense_mat[s] * int(weights[s])) % q
            out %= q
    return out % q


def _eliminate(rows, q):
    """Forward elimination with row tracking.

    Returns (R, T, piv) where R is the reduced matrix with monic pivots,
    T the transformation (T @ rows == R mod q) and piv[r] the pivot column
    of row r or -1 where the row vanished.
    """
    nrows, _ = rows.shape
    R = rows % q
    T = np.zeros((nrows, nrows), dtype=np.int64)
    piv = np.full(nrows, -1, dtype=np.int64)
    for r in range(nrows):
        T[r, r] = 1
        for j in range(r):
            if piv[j] < 0:
                continue
            f = int(R[r, piv[j]])
            if f:
                R[r] = (R[r] + (q - f) * R[j]) % q
                T[r, : j + 1] = (T[r, : j + 1] + (q - f) * T[j, : j + 1]) % q
        nz = np.nonzero(R[r])[0]
        if nz.size:
            inv = pow(int(R[r, nz[0]]), q - 2, q)
            R[r] = (R[r] * inv) % q
            T[r, : r + 1] = (T[r, : r + 1] * inv) % q
            piv[r] = nz[0]
    return R, T, piv


def krylov_minpoly(rows, q):
    """Minimal monic dependency among the rows, scanned in order.

    Returns (r, coeffs) where sum_k coeffs[k] * rows[k] == 0 mod q and
    coeffs[r] == 1, or (-1, empty) if the rows are independent.
    """
    nrows, _ = rows.shape
    R = rows % q
    T = np.zeros((nrows, nrows), dtype=np.int64)
    piv = np.full(nrows, -1, dtype=np.int64)
    for r in range(nrows):
        T[r, r] = 1
        for j in range(r):
            f = int(R[r, piv[j]])
            if f:
                R[r] = (R[r] + (q - f) * R[j]) % q
                T[r, : j + 1] = (T[r, : j + 1] + (q - f) * T[j, : j + 1]) % q
        nz = np.nonzero(R[r])[0]
        if nz.size == 0:
            return r, T[r, : r + 1].copy()
        inv = pow(int(R[r, nz[0]]), q - 2, q)
        R[r] = (R[r] * inv) % q
        T[r, : r + 1] = (T[r, : r + 1] * inv) % q
        piv[r] = nz[0]
    return -1, _EMPTY


def solve_in_row_space(rows, targets, q):
    """Express each target vector as a combination of the given rows.

    Returns (coeffs, ok): coeffs[t] @ rows == targets[t] mod q where
    ok[t] == 1; rows need not be independent.
    """
    R, T, piv = _eliminate(rows, q)
    nrows = rows.shape[0]
    nt = targets.shape[0]
    coeffs = np.zeros((nt, nrows), dtype=np.int64)
    ok = np.zeros(nt, dtype=np.uint8)
    for t in range(nt):
        vec = targets[t] % q
        mu = np.zeros(nrows, dtype=np.int64)
        for j in range(nrows):
            if piv[j] < 0:
                continue
            f = int(vec[piv[j]])
            if f:
                vec = (vec + (q - f) * R[j]) % q
                mu[j] = f
        if not vec.any():
            ok[t] = 1
            acc = np.zeros(nrows, dtype=np.int64)
            for j in np.nonzero(mu)[0]:
                acc = (acc + int(mu[j]) * T[j]) % q
            coeffs[t] = acc
    return coeffs, ok


def polymul_mod(a, b, q):
    """Dense univariate product mod q (coefficients ascending)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return _EMPTY
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    for i in range(a.shape[0]):
        ai = int(a[i])
        if ai:
            out[i : i + b.shape[0]] = (out[i : i + b.shape[0]] + ai * b) % q
    return out


def polyrem_mod(a, g, q):
    """Remainder of a modulo the monic polynomial g (ascending coefficients)."""
    dg = g.shape[0] - 1
    if dg <= 0:
        return _EMPTY
    r = np.zeros(max(a.shape[0], dg), dtype=np.int64)
    r[: a.shape[0]] = a % q
    for k in range(r.shape[0] - 1, dg - 1, -1):
        f = int(r[k])
        if f:
            r[k] = 0
            r[k - dg : k] = (r[k - dg : k] + (q - f) * g[:dg]) % q
    return r[:dg].copy()
