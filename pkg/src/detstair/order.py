"""Packed monomial keys for the degree-reverse-lexicographic order.

A monomial (e_1, ..., e_n) is stored as a single int64 whose byte i holds the
prefix sum e_1 + ... + e_{i+1}.  The top used byte is then the total degree,
and plain integer comparison of keys realises DRL with the LAST variable
least: ties in degree are broken by the smaller exponent on the last
variable, then the second-to-last, and so on.  Key addition is monomial
multiplication, because prefix sums add.

Seven 8-bit fields fit below the sign bit, so the encoding supports up to 7
variables and total degree up to 255 -- ample for desk-scale verification.
"""
from __future__ import annotations

import numpy as np

MAX_VARS = 7
FIELD_BITS = 8
FIELD_MASK = 0xFF
MAX_DEGREE = 255


def pack_exponents(exps) -> int:
    """Pack an exponent sequence into its int64 key."""
    if len(exps) > MAX_VARS:
        raise ValueError("at most %d variables supported" % MAX_VARS)
    key = 0
    acc = 0
    for i, e in enumerate(exps):
        if e < 0:
            raise ValueError("negative exponent")
        acc += e
        key |= acc << (FIELD_BITS * i)
    if acc > MAX_DEGREE:
        raise ValueError("total degree %d exceeds the packing bound %d" % (acc, MAX_DEGREE))
    return key


def unpack_key(key: int, nvars: int) -> tuple[int, ...]:
    """Recover the exponent tuple from a packed key."""
    exps = []
    prev = 0
    for i in range(nvars):
        c = (key >> (FIELD_BITS * i)) & FIELD_MASK
        exps.append(c - prev)
        prev = c
    return tuple(exps)


def key_degree(key: int, nvars: int) -> int:
    return (key >> (FIELD_BITS * (nvars - 1))) & FIELD_MASK


def key_least_exponent(key: int, nvars: int) -> int:
    """Exponent of the least (last) variable."""
    if nvars == 1:
        return key & FIELD_MASK
    hi = (key >> (FIELD_BITS * (nvars - 1))) & FIELD_MASK
    lo = (key >> (FIELD_BITS * (nvars - 2))) & FIELD_MASK
    return hi - lo


def unit_key(var: int, nvars: int) -> int:
    """Key of the single variable x_{var+1} (0-based index)."""
    if not 0 <= var < nvars:
        raise ValueError("variable index out of range")
    key = 0
    for i in range(var, nvars):
        key |= 1 << (FIELD_BITS * i)
    return key


def least_unit_key(nvars: int) -> int:
    return 1 << (FIELD_BITS * (nvars - 1))


def pack_array(exps: np.ndarray) -> np.ndarray:
    """Vectorised packing of an (m, nvars) exponent matrix."""
    exps = np.asarray(exps, dtype=np.int64)
    if exps.ndim != 2 or exps.shape[1] > MAX_VARS:
        raise ValueError("expected (m, nvars<=%d) exponent matrix" % MAX_VARS)
    csum = np.cumsum(exps, axis=1)
    if csum.size and csum[:, -1].max() > MAX_DEGREE:
        raise ValueError("total degree exceeds the packing bound")
    shifts = np.int64(1) << (FIELD_BITS * np.arange(exps.shape[1], dtype=np.int64))
    return (csum * shifts).sum(axis=1)


def unpack_array(keys: np.ndarray, nvars: int) -> np.ndarray:
    """Vectorised unpacking to an (m, nvars) exponent matrix."""
    keys = np.asarray(keys, dtype=np.int64)
    csum = np.empty((keys.shape[0], nvars), dtype=np.int64)
    for i in range(nvars):
        csum[:, i] = (keys >> (FIELD_BITS * i)) & FIELD_MASK
    exps = csum.copy()
    exps[:, 1:] -= csum[:, :-1]
    return exps


def degrees_array(keys: np.ndarray, nvars: int) -> np.ndarray:
    return (np.asarray(keys, dtype=np.int64) >> (FIELD_BITS * (nvars - 1))) & FIELD_MASK


def least_exponents_array(keys: np.ndarray, nvars: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    hi = (keys >> (FIELD_BITS * (nvars - 1))) & FIELD_MASK
    if nvars == 1:
        return hi
    lo = (keys >> (FIELD_BITS * (nvars - 2))) & FIELD_MASK
    return hi - lo


def drl_greater(ea, eb) -> bool:
    """Reference DRL comparison on exponent tuples (last variable least).

    Used only by tests to pin down what the packed keys must realise.
    """
    da, db = sum(ea), sum(eb)
    if da != db:
        return da > db
    for x, y in zip(reversed(ea), reversed(eb)):
        if x != y:
            return x < y
    return False
