"""Prime-field multivariate polynomials and a reduced-basis Buchberger engine.

Polynomials live over GF(q) for a configurable prime q (default 2**31 - 1:
large enough that seeded random systems behave generically, small enough for
native int64 modular arithmetic).  Monomials are packed int64 keys realising
a DRL order with the last ring variable least; the hot arithmetic is done by
the kernels module.

Random determinantal systems come in two flavours: fully generic (p dense
degree-d polynomials plus the maximal minors of a dense p x (n-1) matrix of
degree d-1 entries) and critical-point (the matrix is the partial-derivative
block of the p polynomials with respect to all variables but the first).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .order import (
    MAX_DEGREE,
    MAX_VARS,
    degrees_array,
    least_exponents_array,
    least_unit_key,
    pack_exponents,
    unit_key,
    unpack_array,
    unpack_key,
)

DEFAULT_PRIME = 2**31 - 1

_EMPTY = np.zeros(0, dtype=np.int64)


class DimensionError(Exception):
    """The staircase is not finite (ideal not zero-dimensional) or blew past
    its size guard."""


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers all 64-bit inputs)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PolyRing:
    """GF(q)[x_1, ..., x_nvars] with DRL order, last variable least."""

    nvars: int
    q: int
    names: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= self.nvars <= MAX_VARS:
            raise ValueError("nvars must be in 1..%d" % MAX_VARS)
        if len(self.names) != self.nvars:
            raise ValueError("need one name per variable")
        if self.q < 3 or not is_probable_prime(self.q):
            raise ValueError("modulus %d is not an odd prime" % self.q)

    @classmethod
    def make(cls, nvars: int, q: int = DEFAULT_PRIME) -> "PolyRing":
        return cls(nvars, q, tuple("x%d" % (i + 1) for i in range(nvars)))

    def extended(self) -> "PolyRing":
        """Adjoin one more variable 'y' as the new least variable."""
        return PolyRing(self.nvars + 1, self.q, self.names + ("y",))


class MPoly:
    """Multivariate polynomial: packed keys (descending DRL) + coefficients."""

    __slots__ = ("ring", "keys", "coeffs")

    def __init__(self, ring: PolyRing, keys: np.ndarray, coeffs: np.ndarray):
        self.ring = ring
        self.keys = keys
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ring: PolyRing) -> "MPoly":
        return cls(ring, _EMPTY, _EMPTY)

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: dict) -> "MPoly":
        """Build from {exponent tuple: coefficient}; coefficients reduced mod q."""
        items = []
        for exps, c in terms.items():
            c %= ring.q
            if c:
                items.append((pack_exponents(exps), c))
        items.sort(reverse=True)
        keys = np.array([k for k, _ in items], dtype=np.int64)
        coeffs = np.array([c for _, c in items], dtype=np.int64)
        return cls(ring, keys, coeffs)

    @classmethod
    def variable(cls, ring: PolyRing, var: int) -> "MPoly":
        return cls(ring, np.array([unit_key(var, ring.nvars)], dtype=np.int64), np.array([1], dtype=np.int64))

    def is_zero(self) -> bool:
        return self.keys.size == 0

    @property
    def lm_key(self) -> int:
        return int(self.keys[0])

    @property
    def lc(self) -> int:
        return int(self.coeffs[0])

    @property
    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return int(degrees_array(self.keys[:1], self.ring.nvars)[0])

    def num_terms(self) -> int:
        return int(self.keys.size)

    def terms(self):
        nv = self.ring.nvars
        for k, c in zip(self.keys, self.coeffs):
            yield unpack_key(int(k), nv), int(c)

    def monic(self) -> "MPoly":
        if self.is_zero() or self.lc == 1:
            return self
        inv = pow(self.lc, -1, self.ring.q)
        return MPoly(self.ring, self.keys, (self.coeffs * inv) % self.ring.q)

    def scaled(self, c: int) -> "MPoly":
        c %= self.ring.q
        if c == 0:
            return MPoly.zero(self.ring)
        keys, coeffs = kernels.merge_scaled(self.keys, self.coeffs, 0, c, _EMPTY, _EMPTY, 0, 0, self.ring.q)
        return MPoly(self.ring, keys, coeffs)

    def __add__(self, other: "MPoly") -> "MPoly":
        keys, coeffs = kernels.merge_scaled(
            self.keys, self.coeffs, 0, 1, other.keys, other.coeffs, 0, 1, self.ring.q
        )
        return MPoly(self.ring, keys, coeffs)

    def __sub__(self, other: "MPoly") -> "MPoly":
        keys, coeffs = kernels.merge_scaled(
            self.keys, self.coeffs, 0, 1, other.keys, other.coeffs, 0, self.ring.q - 1, self.ring.q
        )
        return MPoly(self.ring, keys, coeffs)

    def __mul__(self, other: "MPoly") -> "MPoly":
        if self.is_zero() or other.is_zero():
            return MPoly.zero(self.ring)
        if self.total_degree + other.total_degree > MAX_DEGREE:
            raise ValueError("product degree exceeds the packing bound")
        keys, coeffs = kernels.mul_full(self.keys, self.coeffs, other.keys, other.coeffs, self.ring.q)
        return MPoly(self.ring, keys, coeffs)

    def derivative(self, var: int) -> "MPoly":
        """Partial derivative with respect to variable index var (0-based)."""
        q = self.ring.q
        out: dict[tuple, int] = {}
        for exps, c in self.terms():
            e = exps[var]
            if e:
                dexps = exps[:var] + (e - 1,) + exps[var + 1 :]
                out[dexps] = (out.get(dexps, 0) + c * e) % q
        return MPoly.from_terms(self.ring, out)

    def map_to(self, ring: PolyRing) -> "MPoly":
        """Reinterpret in a ring with extra trailing variables (exponent 0)."""
        if ring.nvars < self.ring.nvars or ring.q != self.ring.q:
            raise ValueError("target ring must extend the source ring")
        pad = (0,) * (ring.nvars - self.ring.nvars)
        return MPoly.from_terms(ring, {exps + pad: c for exps, c in self.terms()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MPoly)
            and self.ring == other.ring
            and np.array_equal(self.keys, other.keys)
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.ring, self.keys.tobytes(), self.coeffs.tobytes()))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in itertools.islice(self.terms(), 8):
            mono = "*".join(
                "%s^%d" % (self.ring.names[i], e) if e > 1 else self.ring.names[i]
                for i, e in enumerate(exps)
                if e
            )
            parts.append("%d%s" % (c, "*" + mono if mono else ""))
        tail = " + ..." if self.num_terms() > 8 else ""
        return " + ".join(parts) + tail


def _basis_arrays(basis: list[MPoly]):
    lm_keys = np.array([g.lm_key for g in basis], dtype=np.int64)
    bkeys = np.concatenate([g.keys for g in basis]) if basis else _EMPTY
    bcoeffs = np.concatenate([g.coeffs for g in basis]) if basis else _EMPTY
    boffs = np.zeros(len(basis) + 1, dtype=np.int64)
    np.cumsum([g.keys.size for g in basis], out=boffs[1:])
    return lm_keys, bkeys, bcoeffs, boffs


def normal_form(f: MPoly, basis: list[MPoly], arrays=None) -> MPoly:
    """Full normal form of f against the basis (every term reduced)."""
    if f.is_zero() or not basis:
        return f
    if arrays is None:
        arrays = _basis_arrays(basis)
    lm_keys, bkeys, bcoeffs, boffs = arrays
    keys, coeffs = kernels.nf_reduce(
        f.keys, f.coeffs, lm_keys, bkeys, bcoeffs, boffs, f.ring.q, f.ring.nvars
    )
    return MPoly(f.ring, keys, coeffs)


def _lcm_key(fkey: int, gkey: int, nvars: int) -> int:
    ef = unpack_key(fkey, nvars)
    eg = unpack_key(gkey, nvars)
    return pack_exponents(tuple(max(a, b) for a, b in zip(ef, eg)))


def s_polynomial(f: MPoly, g: MPoly) -> MPoly:
    """S-polynomial, normalised so both head terms are monic at the lcm."""
    ring = f.ring
    q = ring.q
    lcm = _lcm_key(f.lm_key, g.lm_key, ring.nvars)
    keys, coeffs = kernels.merge_scaled(
        f.keys,
        f.coeffs,
        lcm - f.lm_key,
        pow(f.lc, -1, q),
        g.keys,
        g.coeffs,
        lcm - g.lm_key,
        q - pow(g.lc, -1, q),
        q,
    )
    return MPoly(ring, keys, coeffs)


def buchberger_reduced(system: list[MPoly]) -> list[MPoly]:
    """The reduced minimal DRL Groebner basis of the ideal the system spans.

    Buchberger's algorithm with normal (smallest-lcm) pair selection, the
    coprime-leads criterion and the chain criterion in its strict form (the
    bridging monomial must give two strictly smaller lcms, which makes the
    skip unconditionally sound).  The final basis is monic, pairwise fully
    reduced and sorted by ascending leading monomial, hence canonical.
    """
    polys = [p for p in system if not p.is_zero()]
    if not polys:
        raise ValueError("cannot take a Groebner basis of the zero system")
    ring = polys[0].ring
    if any(p.ring != ring for p in polys):
        raise ValueError("mixed rings in input system")
    polys.sort(key=lambda f: (f.lm_key, f.keys.tobytes(), f.coeffs.tobytes()))

    G: list[MPoly] = []
    lm_exps: list[np.ndarray] = []
    pairs: dict[tuple[int, int], int] = {}
    arrays = None

    def push(r: MPoly):
        nonlocal arrays
        idx = len(G)
        for i in range(idx):
            pairs[(i, idx)] = _lcm_key(G[i].lm_key, r.lm_key, ring.nvars)
        G.append(r)
        lm_exps.append(unpack_array(r.keys[:1], ring.nvars)[0])
        arrays = None

    for p in polys:
        if arrays is None and G:
            arrays = _basis_arrays(G)
        r = normal_form(p, G, arrays)
        if not r.is_zero():
            push(r.monic())

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij], ij))
        lcm = pairs.pop((i, j))
        if lcm == G[i].lm_key + G[j].lm_key:
            continue  # coprime leading monomials: S-polynomial reduces to zero
        lcm_exps_ij = unpack_key(lcm, ring.nvars)
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if all(a <= b for a, b in zip(lm_exps[k], lcm_exps_ij)):
                lik = _lcm_key(G[i].lm_key, G[k].lm_key, ring.nvars)
                ljk = _lcm_key(G[j].lm_key, G[k].lm_key, ring.nvars)
                if lik != lcm and ljk != lcm:
                    skip = True
                    break
        if skip:
            continue
        if arrays is None:
            arrays = _basis_arrays(G)
        r = normal_form(s_polynomial(G[i], G[j]), G, arrays)
        if not r.is_zero():
            push(r.monic())

    return _interreduce(G)


def _interreduce(G: list[MPoly]) -> list[MPoly]:
    ring = G[0].ring
    minimal: list[MPoly] = []
    min_exps: list[np.ndarray] = []
    for g in sorted(G, key=lambda f: f.lm_key):
        e = unpack_array(g.keys[:1], ring.nvars)[0]
        if any((m <= e).all() for m in min_exps):
            continue
        minimal.append(g)
        min_exps.append(e)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = normal_form(g, others)
        if r.is_zero() or r.lm_key != g.lm_key:
            raise AssertionError("leading monomial lost during interreduction")
        out.append(r.monic())
    out.sort(key=lambda f: f.lm_key)
    return out


def monomials_upto(nvars: int, max_deg: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree <= max_deg, ascending in DRL."""
    out = []
    for total in range(max_deg + 1):
        for bars in itertools.combinations(range(total + nvars - 1), nvars - 1):
            prev = -1
            exps = []
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(total + nvars - 1 - prev - 1)
            out.append(tuple(exps))
    out.sort(key=pack_exponents)
    return out


def _random_dense(ring: PolyRing, deg: int, rng: random.Random) -> MPoly:
    terms = {}
    for exps in monomials_upto(ring.nvars, deg):
        c = rng.randrange(ring.q)
        if c:
            terms[exps] = c
    return MPoly.from_terms(ring, terms)


def _matrix_minor(rows: list[list[MPoly]], cols: tuple[int, ...], memo: dict, row0: int = 0) -> MPoly:
    """Determinant of rows[row0:] restricted to the given columns, expanded
    along the first row with shared sub-minors memoised."""
    key = (row0, cols)
    if key in memo:
        return memo[key]
    ring = rows[0][0].ring
    if len(cols) == 0:
        result = MPoly.from_terms(ring, {(0,) * ring.nvars: 1})
    else:
        result = MPoly.zero(ring)
        for pos, c in enumerate(cols):
            entry = rows[row0][c]
            if entry.is_zero():
                continue
            sub = _matrix_minor(rows, cols[:pos] + cols[pos + 1 :], memo, row0 + 1)
            term = entry * sub
            result = result + term if pos % 2 == 0 else result - term
    memo[key] = result
    return result


def gen_system(params, seed: int, mode: str = "generic", q: int = DEFAULT_PRIME) -> list[MPoly]:
    """Seeded random determinantal system over GF(q).

    generic: p dense degree-d polynomials plus all maximal minors of a dense
    p x (n-1) matrix with degree-(d-1) entries.  critical_point: the matrix
    is [df_i/dx_j] for j = 2..n, so the minors cut out the critical points of
    the first-coordinate projection on the vanishing set of the f_i.
    Identical arguments reproduce the identical system.
    """
    if mode not in ("generic", "critical_point"):
        raise ValueError("mode must be 'generic' or 'critical_point'")
    if not is_probable_prime(q):
        raise ValueError("modulus %d is not prime" % q)
    d, p, n = params.d, params.p, params.n
    ring = PolyRing.make(n, q)
    rng = random.Random(seed)
    fs = [_random_dense(ring, d, rng) for _ in range(p)]
    if mode == "generic":
        hmat = [[_random_dense(ring, d - 1, rng) for _ in range(n - 1)] for _ in range(p)]
    else:
        hmat = [[fs[i].derivative(j) for j in range(1, n)] for i in range(p)]
    memo: dict = {}
    minors = [
        _matrix_minor(hmat, cols, memo)
        for cols in itertools.combinations(range(n - 1), p)
    ]
    return fs + minors


def extend_primitive(system: list[MPoly], seed: int) -> tuple[list[MPoly], tuple[int, ...]]:
    """Adjoin a primitive-element variable y (new least variable) and the
    relation y = sum_j lambda_j x_j with seeded distinct non-zero lambda."""
    ring = system[0].ring
    ext = ring.extended()
    rng = random.Random(seed ^ 0x5EED)
    lam: list[int] = []
    while len(lam) < ring.nvars:
        c = rng.randrange(1, ring.q)
        if c not in lam:
            lam.append(c)
    terms = {(0,) * ring.nvars + (1,): 1}
    for j, c in enumerate(lam):
        exps = [0] * ext.nvars
        exps[j] = 1
        terms[tuple(exps)] = ext.q - c
    relation = MPoly.from_terms(ext, terms)
    return [p.map_to(ext) for p in system] + [relation], tuple(lam)


@dataclass
class Staircase:
    """Monomials under the leading-term staircase of a zero-dimensional GB.

    keys are ascending (so index 0 is the monomial 1); rank gives each key's
    basis index; by_degree is the Hilbert function of the leading-term ideal;
    sections[e] holds the keys of staircase monomials with least-variable
    exponent exactly e, with that exponent stripped.
    """

    ring: PolyRing
    keys: np.ndarray
    rank: dict = field(repr=False)
    by_degree: list[int] = field(default_factory=list)
    sections: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return int(self.keys.size)

    def section_sizes(self) -> dict[int, int]:
        return {e: int(v.size) for e, v in self.sections.items()}


def _staircase_from_leads(ring: PolyRing, lead_keys: np.ndarray, cap: int) -> np.ndarray:
    nv = ring.nvars
    lead_exps = unpack_array(lead_keys, nv)
    # zero-dimensionality: every variable needs a pure power among the leads
    for v in range(nv):
        pure = (lead_exps[:, [i for i in range(nv) if i != v]] == 0).all(axis=1)
        if not pure.any():
            raise DimensionError("no pure power of %s leads the basis" % ring.names[v])
    units = np.array([unit_key(v, nv) for v in range(nv)], dtype=np.int64)
    if (lead_exps.sum(axis=1) == 0).any():
        return _EMPTY  # the ideal is the whole ring
    found = [np.zeros(1, dtype=np.int64)]
    total = 1
    level = found[0]
    while level.size:
        cand = np.unique((level[:, None] + units[None, :]).ravel())
        exps = unpack_array(cand, nv)
        dominated = (exps[:, None, :] >= lead_exps[None, :, :]).all(axis=2).any(axis=1)
        level = cand[~dominated]
        total += level.size
        if total > cap:
            raise DimensionError("staircase exceeded %d monomials" % cap)
        if level.size:
            found.append(level)
    return np.concatenate(found)


def staircase(gb: list[MPoly], expected_size: int | None = None, cap_factor: int = 10) -> Staircase:
    """Enumerate the staircase of a (zero-dimensional) reduced basis.

    Raises DimensionError when some variable has no pure-power leading
    monomial or the enumeration exceeds cap_factor * expected_size (absolute
    fallback 200000): the ideal is then not zero-dimensional, which for a
    seeded random run signals a degenerate instance.
    """
    ring = gb[0].ring
    lead_keys = np.array([g.lm_key for g in gb], dtype=np.int64)
    cap = cap_factor * expected_size if expected_size else 200000
    keys = np.sort(_staircase_from_leads(ring, lead_keys, cap))
    nv = ring.nvars
    degs = degrees_array(keys, nv)
    by_degree = np.bincount(degs).tolist() if keys.size else []
    least = least_exponents_array(keys, nv)
    unit = least_unit_key(nv)
    sections = {}
    for e in range(int(least.max()) + 1 if keys.size else 0):
        sel = keys[least == e]
        sections[e] = np.sort(sel - e * unit)
    rank = {int(k): i for i, k in enumerate(keys)}
    return Staircase(ring=ring, keys=keys, rank=rank, by_degree=by_degree, sections=sections)
