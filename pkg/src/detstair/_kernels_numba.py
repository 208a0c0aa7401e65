"""Numba-compiled implementations of the hot kernels.

Same contracts as _kernels_numpy (which is the readable reference); these are
tight int64 loops compiled with @njit.  All modular arithmetic keeps operands
below 2**62, so int64 never overflows for primes up to 2**31.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .order import FIELD_BITS, FIELD_MASK

_EMPTY = np.zeros(0, dtype=np.int64)


@njit(cache=True)
def _mod_inv(a, q):
    result = np.int64(1)
    base = a % q
    e = q - 2
    while e:
        if e & 1:
            result = (result * base) % q
        base = (base * base) % q
        e >>= 1
    return result


@njit(cache=True)
def _divides(mkey, ukey, nvars):
    prev_m = np.int64(0)
    prev_u = np.int64(0)
    for i in range(nvars):
        cm = (mkey >> (FIELD_BITS * i)) & FIELD_MASK
        cu = (ukey >> (FIELD_BITS * i)) & FIELD_MASK
        if cm - prev_m > cu - prev_u:
            return False
        prev_m = cm
        prev_u = cu
    return True


@njit(cache=True)
def merge_scaled(k1, c1, shift1, scale1, k2, c2, shift2, scale2, q):
    n1 = k1.shape[0]
    n2 = k2.shape[0]
    ok = np.empty(n1 + n2, np.int64)
    oc = np.empty(n1 + n2, np.int64)
    i = 0
    j = 0
    w = 0
    while i < n1 and j < n2:
        a = k1[i] + shift1
        b = k2[j] + shift2
        if a > b:
            cc = (c1[i] * scale1) % q
            if cc:
                ok[w] = a
                oc[w] = cc
                w += 1
            i += 1
        elif a < b:
            cc = (c2[j] * scale2) % q
            if cc:
                ok[w] = b
                oc[w] = cc
                w += 1
            j += 1
        else:
            cc = ((c1[i] * scale1) % q + (c2[j] * scale2) % q) % q
            if cc:
                ok[w] = a
                oc[w] = cc
                w += 1
            i += 1
            j += 1
    while i < n1:
        cc = (c1[i] * scale1) % q
        if cc:
            ok[w] = k1[i] + shift1
            oc[w] = cc
            w += 1
        i += 1
    while j < n2:
        cc = (c2[j] * scale2) % q
        if cc:
            ok[w] = k2[j] + shift2
            oc[w] = cc
            w += 1
        j += 1
    return ok[:w].copy(), oc[:w].copy()


@njit(cache=True)
def mul_full(k1, c1, k2, c2, q):
    n1 = k1.shape[0]
    n2 = k2.shape[0]
    total = n1 * n2
    if total == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    kk = np.empty(total, np.int64)
    cc = np.empty(total, np.int64)
    w = 0
    for i in range(n1):
        for j in range(n2):
            kk[w] = k1[i] + k2[j]
            cc[w] = (c1[i] * c2[j]) % q
            w += 1
    order = np.argsort(kk)
    ok = np.empty(total, np.int64)
    oc = np.empty(total, np.int64)
    w = 0
    idx = total - 1
    while idx >= 0:
        key = kk[order[idx]]
        acc = np.int64(0)
        while idx >= 0 and kk[order[idx]] == key:
            acc = (acc + cc[order[idx]]) % q
            idx -= 1
        if acc:
            ok[w] = key
            oc[w] = acc
            w += 1
    return ok[:w].copy(), oc[:w].copy()


@njit(cache=True)
def nf_reduce(keys, coeffs, lm_keys, bkeys, bcoeffs, boffs, q, nvars):
    nb = lm_keys.shape[0]
    wk = keys.copy()
    wc = coeffs.copy()
    cap = keys.shape[0] + 16
    out_k = np.empty(cap, np.int64)
    out_c = np.empty(cap, np.int64)
    n_out = 0
    pos = 0
    while pos < wk.shape[0]:
        k0 = wk[pos]
        c0 = wc[pos]
        red = -1
        for b in range(nb):
            if _divides(lm_keys[b], k0, nvars):
                red = b
                break
        if red < 0:
            if n_out == out_k.shape[0]:
                grown_k = np.empty(out_k.shape[0] * 2, np.int64)
                grown_c = np.empty(out_k.shape[0] * 2, np.int64)
                grown_k[:n_out] = out_k[:n_out]
                grown_c[:n_out] = out_c[:n_out]
                out_k = grown_k
                out_c = grown_c
            out_k[n_out] = k0
            out_c[n_out] = c0
            n_out += 1
            pos += 1
            continue
        s0 = boffs[red]
        s1 = boffs[red + 1]
        shift = k0 - lm_keys[red]
        scale = (c0 * _mod_inv(bcoeffs[s0], q)) % q
        rem = wk.shape[0] - pos - 1
        tail = s1 - s0 - 1
        nk = np.empty(rem + tail, np.int64)
        nc = np.empty(rem + tail, np.int64)
        i = pos + 1
        j = s0 + 1
        w = 0
        while i < wk.shape[0] and j < s1:
            kj = bkeys[j] + shift
            ki = wk[i]
            if ki > kj:
                nk[w] = ki
                nc[w] = wc[i]
                w += 1
                i += 1
            elif ki < kj:
                cc = (q - (scale * bcoeffs[j]) % q) % q
                if cc:
                    nk[w] = kj
                    nc[w] = cc
                    w += 1
                j += 1
            else:
                cc = (wc[i] + q - (scale * bcoeffs[j]) % q) % q
                if cc:
                    nk[w] = ki
                    nc[w] = cc
                    w += 1
                i += 1
                j += 1
        while i < wk.shape[0]:
            nk[w] = wk[i]
            nc[w] = wc[i]
            w += 1
            i += 1
        while j < s1:
            cc = (q - (scale * bcoeffs[j]) % q) % q
            if cc:
                nk[w] = bkeys[j] + shift
                nc[w] = cc
                w += 1
            j += 1
        wk = nk[:w]
        wc = nc[:w]
        pos = 0
    return out_k[:n_out].copy(), out_c[:n_out].copy()


@njit(cache=True)
def matvec_mod(triv_src, triv_dst, dense_src, dense_mat, v, q):
    dim = v.shape[0]
    out = np.zeros(dim, np.int64)
    for t in range(triv_src.shape[0]):
        c = v[triv_src[t]]
        if c:
            out[triv_dst[t]] = (out[triv_dst[t]] + c) % q
    for s in range(dense_src.shape[0]):
        c = v[dense_src[s]]
        if c:
            for r in range(dim):
                out[r] = (out[r] + c * dense_mat[s, r]) % q
    return out


@njit(cache=True)
def krylov_minpoly(rows, q):
    nrows, dim = rows.shape
    R = rows % q
    T = np.zeros((nrows, nrows), np.int64)
    piv = np.full(nrows, -1, np.int64)
    for r in range(nrows):
        T[r, r] = 1
        for j in range(r):
            f = R[r, piv[j]]
            if f:
                for c in range(dim):
                    R[r, c] = (R[r, c] + (q - f) * R[j, c]) % q
                for c in range(j + 1):
                    T[r, c] = (T[r, c] + (q - f) * T[j, c]) % q
        pc = -1
        for c in range(dim):
            if R[r, c]:
                pc = c
                break
        if pc < 0:
            return r, T[r, : r + 1].copy()
        inv = _mod_inv(R[r, pc], q)
        for c in range(dim):
            R[r, c] = (R[r, c] * inv) % q
        for c in range(r + 1):
            T[r, c] = (T[r, c] * inv) % q
        piv[r] = pc
    return -1, np.zeros(0, np.int64)


@njit(cache=True)
def solve_in_row_space(rows, targets, q):
    nrows, dim = rows.shape
    R = rows % q
    T = np.zeros((nrows, nrows), np.int64)
    piv = np.full(nrows, -1, np.int64)
    for r in range(nrows):
        T[r, r] = 1
        for j in range(r):
            if piv[j] < 0:
                continue
            f = R[r, piv[j]]
            if f:
                for c in range(dim):
                    R[r, c] = (R[r, c] + (q - f) * R[j, c]) % q
                for c in range(j + 1):
                    T[r, c] = (T[r, c] + (q - f) * T[j, c]) % q
        pc = -1
        for c in range(dim):
            if R[r, c]:
                pc = c
                break
        if pc >= 0:
            inv = _mod_inv(R[r, pc], q)
            for c in range(dim):
                R[r, c] = (R[r, c] * inv) % q
            for c in range(r + 1):
                T[r, c] = (T[r, c] * inv) % q
            piv[r] = pc
    nt = targets.shape[0]
    coeffs = np.zeros((nt, nrows), np.int64)
    ok = np.zeros(nt, np.uint8)
    mu = np.zeros(nrows, np.int64)
    vec = np.zeros(dim, np.int64)
    for t in range(nt):
        for c in range(dim):
            vec[c] = targets[t, c] % q
        for j in range(nrows):
            mu[j] = 0
        for j in range(nrows):
            if piv[j] < 0:
                continue
            f = vec[piv[j]]
            if f:
                for c in range(dim):
                    vec[c] = (vec[c] + (q - f) * R[j, c]) % q
                mu[j] = f
        residual = False
        for c in range(dim):
            if vec[c]:
                residual = True
                break
        if not residual:
            ok[t] = 1
            for k in range(nrows):
                acc = np.int64(0)
                for j in range(nrows):
                    if mu[j]:
                        acc = (acc + mu[j] * T[j, k]) % q
                coeffs[t, k] = acc
    return coeffs, ok


@njit(cache=True)
def polymul_mod(a, b, q):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, np.int64)
    out = np.zeros(a.shape[0] + b.shape[0] - 1, np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai:
            for j in range(b.shape[0]):
                out[i + j] = (out[i + j] + ai * b[j]) % q
    return out


@njit(cache=True)
def polyrem_mod(a, g, q):
    dg = g.shape[0] - 1
    if dg <= 0:
        return np.zeros(0, np.int64)
    size = a.shape[0] if a.shape[0] > dg else dg
    r = np.zeros(size, np.int64)
    for i in range(a.shape[0]):
        r[i] = a[i] % q
    for k in range(size - 1, dg - 1, -1):
        f = r[k]
        if f:
            r[k] = 0
            for j in range(dg):
                r[k - dg + j] = (r[k - dg + j] + (q - f) * g[j]) % q
    return r[:dg].copy()
