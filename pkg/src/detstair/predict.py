"""Change-of-ordering cost predictions from the parameter triple alone.

The key quantity is the number of non-trivial columns of the multiplication
matrix of the least variable, written m below.  Under the conjectural
staircase structure it equals the largest Hilbert-series coefficient, so it
can be predicted exactly; a closed binomial sum covers d = 2, and a central-
coefficient estimate covers d >= 3 as n grows.  Square roots are evaluated
with 50-digit Decimal arithmetic so that the integer ceiling is stable even
where the exact prefactor reaches 10**18.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal, localcontext

from .hilbert import SystemParams, hilbert_binomial
from .intpoly import binomial

_PREC = 50
_PI = Decimal("3.14159265358979323846264338327950288419716939937511")


def ideal_degree(params: SystemParams) -> int:
    """Vector-space dimension of the quotient: d^p (d-1)^(n-p) C(n-1, p-1)."""
    d, p, n = params.d, params.p, params.n
    return d**p * (d - 1) ** (n - p) * binomial(n - 1, p - 1)


def dense_columns_exact(params: SystemParams) -> int:
    """Exact m: the largest coefficient of the Hilbert series."""
    return hilbert_binomial(params).max_coeff()


def dense_columns_quadratic(params: SystemParams) -> int:
    """Closed form for m when d = 2 and n is large relative to p:
    sum_{k<p} C(n-p-1+k, k) C(p, floor(3p/2)-1-k)."""
    if params.d != 2:
        raise ValueError("closed quadratic formula requires d = 2")
    p, n = params.p, params.n
    top = (3 * p) // 2 - 1
    return sum(binomial(n - p - 1 + k, k) * binomial(p, top - k) for k in range(p))


def quadratic_match_threshold(p: int, n_max: int = 20) -> int:
    """Least n0 such that the d = 2 closed form equals the exact m for every
    n in [n0, n_max]."""
    if p < 1:
        raise ValueError("p must be >= 1")
    n0 = n_max + 1
    for n in range(n_max, p, -1):
        params = SystemParams(2, p, n)
        if dense_columns_quadratic(params) != dense_columns_exact(params):
            break
        n0 = n
    if n0 > n_max:
        raise ValueError("closed form never matches up to n_max=%d for p=%d" % (n_max, p))
    return n0


def dense_columns_asymptotic(params: SystemParams) -> tuple[Decimal, int]:
    """Asymptotic m for d >= 3 as n grows:

        sqrt(6 / ((n-p) pi ((d-1)^2 - 1))) * d^p (d-1)^(n-p) C(n-2, p-1)

    Returns the high-precision real value and its integer ceiling (the
    ceiling reproduces the reference plot coordinates; rounding does not).
    """
    d, p, n = params.d, params.p, params.n
    if d < 3:
        raise ValueError("asymptotic formula requires d >= 3; use the d = 2 closed form")
    exact = d**p * (d - 1) ** (n - p) * binomial(n - 2, p - 1)
    with localcontext() as ctx:
        ctx.prec = _PREC
        scalar = (Decimal(6) / (Decimal((n - p) * ((d - 1) ** 2 - 1)) * _PI)).sqrt()
        value = Decimal(exact) * scalar
        ceiling = int(value.to_integral_value(rounding=ROUND_CEILING))
    return value, ceiling


def central_coefficient_estimate(q_terms: int, s: int) -> Decimal:
    """Estimate of the central coefficient of (1 + t + ... + t^(q_terms-1))^s:

        q_terms^s * sqrt(6 / ((q_terms^2 - 1) pi s))

    Exact for no finite s; the relative error decays like 1/s.  Returned as a
    Decimal because the power factor overflows binary floats for large s.
    """
    if q_terms < 2:
        raise ValueError("need at least two terms")
    if s < 1:
        raise ValueError("s must be >= 1")
    with localcontext() as ctx:
        ctx.prec = _PREC
        scalar = (Decimal(6) / (Decimal((q_terms**2 - 1) * s) * _PI)).sqrt()
        return Decimal(q_terms) ** s * scalar


def central_trinomial_exact(s: int) -> int:
    """Exact central coefficient of (1 + t + t^2)^s.

    Uses the integer recurrence n*T_n = (2n-1)*T_{n-1} + 3*(n-1)*T_{n-2}
    (division exact), which is fast enough for s = 10**4; the test suite
    cross-checks it against the binomial double sum and direct expansion.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if s == 0:
        return 1
    a, b = 1, 1
    for n in range(2, s + 1):
        a, b = b, ((2 * n - 1) * b + 3 * (n - 1) * a) // n
    return b


def central_trinomial_double_sum(s: int) -> int:
    """The same exact value as the binomial double sum
    sum_k C(s, 2k) C(2k, k); independent oracle for the recurrence."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return sum(math.comb(s, 2 * k) * math.comb(2 * k, k) for k in range(s // 2 + 1))


@dataclass(frozen=True)
class PredictionReport:
    """All predicted quantities for one parameter triple.

    Densities come in two conventions: the plain ratio m/D, and the adjusted
    count (m*D + (D - m)) / D^2 which also charges one unit entry per trivial
    column, i.e. the actual non-zero density of the multiplication matrix.
    Costs are dominant-term model estimates with unit constants, not measured
    operation counts.
    """

    params: SystemParams
    D: int
    m_exact: int
    m_closed_d2: int | None
    m_asymptotic_real: Decimal
    m_asymptotic_int: int
    density_theoretical: float
    density_adjusted: float
    density_asymptotic: float
    density_asymptotic_adjusted: float
    sparse_fglm_cost: float
    fglm_cost: float
    gain_exact: float
    gain_closed: float


def _adjusted(m: int, D: int) -> float:
    return (m * D + (D - m)) / (D * D)


def cost_model(params: SystemParams) -> PredictionReport:
    """Fill every prediction field for one parameter triple."""
    d, p, n = params.d, params.p, params.n
    D = ideal_degree(params)
    m = dense_columns_exact(params)
    if d == 2:
        m_closed = dense_columns_quadratic(params)
        # the quadratic closed form doubles as the d = 2 asymptotic estimate
        m_asym_real, m_asym = Decimal(m_closed), m_closed
    else:
        m_closed = None
        m_asym_real, m_asym = dense_columns_asymptotic(params)
    log2d = math.log2(D) if D > 1 else 0.0
    return PredictionReport(
        params=params,
        D=D,
        m_exact=m,
        m_closed_d2=m_closed,
        m_asymptotic_real=m_asym_real,
        m_asymptotic_int=m_asym,
        density_theoretical=m / D,
        density_adjusted=_adjusted(m, D),
        density_asymptotic=m_asym / D,
        density_asymptotic_adjusted=_adjusted(m_asym, D),
        sparse_fglm_cost=float(m * D**2) + n * D * log2d**2,
        fglm_cost=n * float(D) ** 3,
        gain_exact=m / (n * D),
        gain_closed=math.sqrt(n - p) / (n**2 * (d - 1)),
    )
