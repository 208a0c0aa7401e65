"""Hilbert series of generic determinantal quotient algebras.

The series of the quotient by p generic degree-d polynomials together with
the maximal minors of a p x (n-1) matrix of generic degree-(d-1) entries is
built two independent ways:

* a binomial-sum route:
      H = (sum_{k<p} C(n-p-1+k, k) t^{k(d-1)}) * geo(d)^p * geo(d-1)^(n-p)
* a determinant route through the (p-1) x (p-1) matrix of Pascal-coefficient
  polynomials, divided by an exact power of t.

Their coefficient-for-coefficient equality is the module's core cross-check.
On top of H the module computes the truncated quotient series (quotients by
powers of the least variable), the staircase sections and their drops, and
unimodality tests.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .intpoly import IntPoly, IntPolyMatrix, binomial, geo, poly_det


class InternalInconsistencyError(Exception):
    """A structural identity that should hold unconditionally failed."""


@dataclass(frozen=True)
class SystemParams:
    """Parameters (d, p, n): p polynomials of degree d >= 2 in n > p variables."""

    d: int
    p: int
    n: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if not 1 <= self.p < self.n:
            raise ValueError("need 1 <= p < n")

    @property
    def delta(self) -> int:
        """Degree of the Hilbert series."""
        d, p, n = self.d, self.p, self.n
        return (p - 1) * (d - 1) + p * (d - 1) + (n - p) * (d - 2)

    @property
    def degree(self) -> int:
        """Vector-space dimension of the quotient: d^p (d-1)^(n-p) C(n-1, p-1)."""
        d, p, n = self.d, self.p, self.n
        return d**p * (d - 1) ** (n - p) * binomial(n - 1, p - 1)


@lru_cache(maxsize=None)
def _hilbert_binomial(d: int, p: int, n: int) -> IntPoly:
    binsum = IntPoly()
    for k in range(p):
        binsum = binsum + IntPoly.term(binomial(n - p - 1 + k, k), k * (d - 1))
    return binsum * geo(d) ** p * geo(d - 1) ** (n - p)


def hilbert_binomial(params: SystemParams) -> IntPoly:
    """Hilbert series via the binomial-sum form."""
    return _hilbert_binomial(params.d, params.p, params.n)


@lru_cache(maxsize=None)
def _hilbert_determinant(d: int, p: int, n: int) -> IntPoly:
    if p == 1:
        det = IntPoly.one()
    else:
        step = d - 1
        entries = []
        for i in range(1, p):
            for j in range(1, p):
                poly = IntPoly()
                for k in range(min(p - i, n - 1 - j) + 1):
                    poly = poly + IntPoly.term(
                        binomial(p - i, k) * binomial(n - 1 - j, k), k * step
                    )
                entries.append(poly)
        det = poly_det(IntPolyMatrix(p - 1, p - 1, entries))
    det = det.divexact_tpow((d - 1) * binomial(p - 1, 2))
    return det * geo(d) ** p * geo(d - 1) ** (n - p)


def hilbert_determinant(params: SystemParams) -> IntPoly:
    """Hilbert series via the Pascal-matrix determinant form.

    Must agree with hilbert_binomial() on every valid parameter triple; for
    p = 1 the matrix is empty and its determinant is 1.
    """
    return _hilbert_determinant(params.d, params.p, params.n)


def truncate_plus(s: IntPoly) -> IntPoly:
    """Cut the coefficient sequence strictly before its first entry <= 0.

    A zero coefficient stops the truncation too; if every stored coefficient
    is positive the polynomial is returned unchanged.
    """
    for i, c in enumerate(s.coeffs):
        if c <= 0:
            return IntPoly(s.coeffs[:i])
    return s


def quotient_series(params: SystemParams, e: int) -> IntPoly:
    """Series of the quotient by the e-th power of the least variable:
    the truncation of (1 - t^e) H at its first non-positive coefficient.

    Stabilises to H itself once e exceeds deg H.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    h = hilbert_binomial(params)
    return truncate_plus(h - h.shift(e))


def section_series(params: SystemParams, e: int) -> IntPoly:
    """Series of the staircase section at least-variable degree e:
    (Q_{e+1} - Q_e) / t^e, with the e = 0 section defined as Q_1."""
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return quotient_series(params, 1)
    diff = quotient_series(params, e + 1) - quotient_series(params, e)
    if any(diff.coeffs[:e]):
        raise InternalInconsistencyError(
            "quotient-series difference not divisible by t^%d at %r" % (e, params)
        )
    return diff.divexact_tpow(e)


def section_drop(params: SystemParams, e: int) -> IntPoly:
    """Difference between consecutive sections, S_e - S_{e+1}.

    Always zero or a single positive term; its coefficient counts the
    reduced-basis leading monomials of least-variable degree e + 1.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    drop = section_series(params, e) - section_series(params, e + 1)
    nonzero = [c for c in drop.coeffs if c]
    if len(nonzero) > 1 or any(c < 0 for c in nonzero):
        raise InternalInconsistencyError(
            "section drop %r at e=%d for %r is not a single positive term"
            % (list(drop.coeffs), e, params)
        )
    return drop


def is_unimodal(f: IntPoly) -> tuple[bool, int | None]:
    """Whether the coefficients rise to a single peak and then fall.

    Returns (True, N) with N the least peak index, or (False, None).  Any
    negative coefficient makes the answer False; the zero polynomial and
    constants count as unimodal with peak 0.
    """
    cs = f.coeffs
    if not cs:
        return True, 0
    if any(c < 0 for c in cs):
        return False, None
    peak = cs.index(max(cs))
    ok = all(cs[i] <= cs[i + 1] for i in range(peak)) and all(
        cs[i] >= cs[i + 1] for i in range(peak, len(cs) - 1)
    )
    return (True, peak) if ok else (False, None)


@dataclass(frozen=True)
class HilbertProfile:
    """Summary of one Hilbert series: the polynomial, its degree, the least
    degree carrying the maximal coefficient, and that coefficient."""

    params: SystemParams
    series: IntPoly
    delta: int
    sigma: int
    max_coeff: int

    @property
    def degree_sum(self) -> int:
        return self.series(1)


def profile(params: SystemParams) -> HilbertProfile:
    """Build the profile and verify its defining identities."""
    h = hilbert_binomial(params)
    delta = h.degree
    if delta != params.delta:
        raise InternalInconsistencyError("series degree %d != %d" % (delta, params.delta))
    if h(1) != params.degree:
        raise InternalInconsistencyError("series value at 1 disagrees with the degree formula")
    dmax = h.max_coeff()
    sigma = h.coeffs.index(dmax)
    if quotient_series(params, 1).degree != sigma:
        raise InternalInconsistencyError("first quotient series degree disagrees with sigma")
    return HilbertProfile(params=params, series=h, delta=delta, sigma=sigma, max_coeff=dmax)
