"""Packed-key order laws and numba/numpy backend equivalence."""
import itertools
import random

import numpy as np
import pytest

from detstair import _kernels_numpy as knp
from detstair.order import (
    drl_greater,
    key_degree,
    key_least_exponent,
    least_exponents_array,
    least_unit_key,
    pack_array,
    pack_exponents,
    unit_key,
    unpack_array,
    unpack_key,
)

try:
    from detstair import _kernels_numba as knb

    BACKENDS = [("numpy", knp), ("numba", knb)]
except ImportError:
    knb = None
    BACKENDS = [("numpy", knp)]

Q = 2**31 - 1


def exps_upto(nvars, deg):
    return [e for e in itertools.product(range(deg + 1), repeat=nvars) if sum(e) <= deg]


def test_pack_roundtrip_and_order():
    for nvars in (1, 2, 3, 4):
        all_exps = exps_upto(nvars, 4)
        keys = [pack_exponents(e) for e in all_exps]
        assert len(set(keys)) == len(keys)
        for e, k in zip(all_exps, keys):
            assert unpack_key(k, nvars) == e
        # integer comparison of keys == reference DRL comparison
        for ea, ka in zip(all_exps, keys):
            for eb, kb in zip(all_exps, keys):
                assert (ka > kb) == drl_greater(ea, eb)


def test_pack_addition_is_multiplication():
    rng = random.Random(3)
    for _ in range(300):
        nvars = rng.randint(1, 5)
        ea = tuple(rng.randint(0, 6) for _ in range(nvars))
        eb = tuple(rng.randint(0, 6) for _ in range(nvars))
        assert pack_exponents(ea) + pack_exponents(eb) == pack_exponents(
            tuple(a + b for a, b in zip(ea, eb))
        )


def test_pack_array_matches_scalar():
    rng = np.random.default_rng(5)
    exps = rng.integers(0, 7, size=(50, 4))
    keys = pack_array(exps)
    for row, k in zip(exps, keys):
        assert pack_exponents(tuple(int(v) for v in row)) == int(k)
    assert (unpack_array(keys, 4) == exps).all()


def test_unit_and_least_keys():
    for nvars in range(1, 8):
        for v in range(nvars):
            e = tuple(1 if i == v else 0 for i in range(nvars))
            assert unit_key(v, nvars) == pack_exponents(e)
        assert least_unit_key(nvars) == unit_key(nvars - 1, nvars)
    keys = pack_array(np.array([[2, 0, 1], [0, 3, 0], [1, 1, 4]]))
    assert list(least_exponents_array(keys, 3)) == [1, 0, 4]
    assert [key_degree(int(k), 3) for k in keys] == [3, 3, 6]
    assert [key_least_exponent(int(k), 3) for k in keys] == [1, 0, 4]
    assert key_least_exponent(pack_exponents((5,)), 1) == 5


def test_pack_limits():
    with pytest.raises(ValueError):
        pack_exponents((0,) * 8)
    with pytest.raises(ValueError):
        pack_exponents((300,))
    with pytest.raises(ValueError):
        pack_exponents((-1, 2))


def random_poly(rng, nvars, deg, max_terms):
    pool = exps_upto(nvars, deg)
    chosen = rng.sample(pool, min(max_terms, len(pool)))
    keys = np.array(sorted((pack_exponents(e) for e in chosen), reverse=True), dtype=np.int64)
    coeffs = np.array([rng.randrange(1, Q) for _ in keys], dtype=np.int64)
    return keys, coeffs


@pytest.mark.skipif(knb is None, reason="numba unavailable")
def test_backends_merge_scaled_equal():
    rng = random.Random(11)
    for _ in range(60):
        k1, c1 = random_poly(rng, 3, 5, 12)
        k2, c2 = random_poly(rng, 3, 5, 12)
        s1, s2 = rng.randrange(Q), rng.randrange(Q)
        sh1 = pack_exponents((rng.randint(0, 2),) * 3)
        sh2 = pack_exponents((rng.randint(0, 2),) * 3)
        a = knp.merge_scaled(k1, c1, sh1, s1, k2, c2, sh2, s2, Q)
        b = knb.merge_scaled(k1, c1, sh1, s1, k2, c2, sh2, s2, Q)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@pytest.mark.skipif(knb is None, reason="numba unavailable")
def test_backends_mul_full_equal():
    rng = random.Random(13)
    for _ in range(40):
        k1, c1 = random_poly(rng, 3, 4, 10)
        k2, c2 = random_poly(rng, 3, 4, 10)
        a = knp.mul_full(k1, c1, k2, c2, Q)
        b = knb.mul_full(k1, c1, k2, c2, Q)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def _basis(rng, nvars, count):
    polys = []
    for _ in range(count):
        k, c = random_poly(rng, nvars, 3, 6)
        polys.append((k, c))
    lm = np.array([k[0] for k, _ in polys], dtype=np.int64)
    flatk = np.concatenate([k for k, _ in polys])
    flatc = np.concatenate([c for _, c in polys])
    offs = np.zeros(count + 1, dtype=np.int64)
    np.cumsum([k.size for k, _ in polys], out=offs[1:])
    return lm, flatk, flatc, offs


@pytest.mark.skipif(knb is None, reason="numba unavailable")
def test_backends_nf_reduce_equal():
    rng = random.Random(17)
    for _ in range(30):
        lm, fk, fc, offs = _basis(rng, 3, 4)
        k, c = random_poly(rng, 3, 6, 20)
        a = knp.nf_reduce(k, c, lm, fk, fc, offs, Q, 3)
        b = knb.nf_reduce(k, c, lm, fk, fc, offs, Q, 3)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@pytest.mark.skipif(knb is None, reason="numba unavailable")
def test_backends_linear_algebra_equal():
    rng = np.random.default_rng(19)
    for _ in range(20):
        dim = int(rng.integers(2, 12))
        rows = rng.integers(0, Q, size=(dim + 1, dim)).astype(np.int64)
        a = knp.krylov_minpoly(rows, Q)
        b = knb.krylov_minpoly(rows, Q)
        assert a[0] == b[0] and np.array_equal(a[1], b[1])
        targets = rng.integers(0, Q, size=(3, dim)).astype(np.int64)
        ca, oa = knp.solve_in_row_space(rows[:dim], targets, Q)
        cb, ob = knb.solve_in_row_space(rows[:dim], targets, Q)
        assert np.array_equal(ca, cb) and np.array_equal(oa, ob)


@pytest.mark.skipif(knb is None, reason="numba unavailable")
def test_backends_polyops_equal():
    rng = np.random.default_rng(23)
    for _ in range(30):
        a = rng.integers(0, Q, size=int(rng.integers(1, 30))).astype(np.int64)
        b = rng.integers(0, Q, size=int(rng.integers(1, 20))).astype(np.int64)
        g = rng.integers(0, Q, size=int(rng.integers(2, 15))).astype(np.int64)
        g[-1] = 1  # monic
        pa = knp.polymul_mod(a, b, Q)
        pb = knb.polymul_mod(a, b, Q)
        assert np.array_equal(pa, pb)
        ra = knp.polyrem_mod(a, g, Q)
        rb = knb.polyrem_mod(a, g, Q)
        assert np.array_equal(ra, rb)


def test_solve_in_row_space_roundtrip():
    rng = np.random.default_rng(29)
    dim = 8
    rows = rng.integers(0, Q, size=(dim, dim)).astype(np.int64)
    coeff = rng.integers(0, Q, size=(2, dim)).astype(np.int64)
    targets = np.zeros((2, dim), dtype=np.int64)
    for t in range(2):
        acc = np.zeros(dim, dtype=np.int64)
        for j in range(dim):
            acc = (acc + int(coeff[t, j]) * rows[j]) % Q
        targets[t] = acc
    out, ok = knp.solve_in_row_space(rows, targets, Q)
    assert ok.all()
    for t in range(2):
        acc = np.zeros(dim, dtype=np.int64)
        for j in range(dim):
            acc = (acc + int(out[t, j]) * rows[j]) % Q
        assert np.array_equal(acc, targets[t])


def test_polyrem_reference():
    # (t^2 + 1) mod (t^2 - 3) = 4 over GF(7)
    q = 7
    a = np.array([1, 0, 1], dtype=np.int64)
    g = np.array([4, 0, 1], dtype=np.int64)  # t^2 - 3 == t^2 + 4
    assert list(knp.polyrem_mod(a, g, q)) == [4, 0]
