"""Multiplication matrix of the least variable, Krylov minimal polynomials
and the shape-position LEX parametrization.

The structural prediction under test says: for every staircase monomial b,
the product of b with the least variable either stays inside the staircase
(trivial column: a single unit entry) or is a leading monomial of the reduced
basis (dense column: the negated tail of that monic element, read off with
no arithmetic beyond negation).  Any third case raises StructureViolation,
which is a reportable verification outcome, not a crash.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .groebner import MPoly, Staircase, normal_form
from .order import least_unit_key, unpack_key

_EMPTY = np.zeros(0, dtype=np.int64)


class StructureViolation(Exception):
    """A staircase monomial times the least variable is neither in the
    staircase nor a leading monomial of the reduced basis."""

    def __init__(self, monomial, target):
        self.monomial = monomial
        self.target = target
        super().__init__("structure violation at %s -> %s" % (monomial, target))


class ShapePositionError(Exception):
    """The minimal polynomial of the least variable has degree < dim."""


@dataclass
class MulMatrix:
    """Column-oriented multiplication-by-least-variable matrix.

    Column j acts on the j-th staircase monomial (ascending order, so column
    0 is the monomial 1).  triv_src[k] -> triv_dst[k] are the unit columns;
    dense_cols[k] is the full column for source index dense_src[k].
    """

    dim: int
    q: int
    triv_src: np.ndarray
    triv_dst: np.ndarray
    dense_src: np.ndarray
    dense_cols: np.ndarray

    @property
    def nontrivial_count(self) -> int:
        return int(self.dense_src.size)

    @classmethod
    def from_dense(cls, matrix: np.ndarray, q: int) -> "MulMatrix":
        """Wrap an explicit dim x dim matrix (every column stored dense)."""
        matrix = np.asarray(matrix, dtype=np.int64) % q
        dim = matrix.shape[0]
        if matrix.shape != (dim, dim):
            raise ValueError("square matrix required")
        return cls(
            dim=dim,
            q=q,
            triv_src=_EMPTY,
            triv_dst=_EMPTY,
            dense_src=np.arange(dim, dtype=np.int64),
            dense_cols=matrix.T.copy(),
        )

    def apply(self, v: np.ndarray) -> np.ndarray:
        return kernels.matvec_mod(self.triv_src, self.triv_dst, self.dense_src, self.dense_cols, v, self.q)


def build_mul_matrix(gb: list[MPoly], stair: Staircase) -> MulMatrix:
    """Construct the matrix column by column, copying and negating only.

    Dense columns hold the negated tails of the monic basis elements whose
    leading monomial is the product; no field additions or multiplications
    happen on this path (the sign normalisation q - c is counted as free).
    """
    ring = gb[0].ring
    q = ring.q
    dim = stair.size
    if dim == 0:
        raise ValueError("empty staircase")
    unit = least_unit_key(ring.nvars)
    by_lead = {g.lm_key: g for g in gb}
    rank = stair.rank
    triv_s: list[int] = []
    triv_d: list[int] = []
    dense_s: list[int] = []
    cols: list[np.ndarray] = []
    for j, key in enumerate(stair.keys):
        target = int(key) + unit
        hit = rank.get(target)
        if hit is not None:
            triv_s.append(j)
            triv_d.append(hit)
            continue
        g = by_lead.get(target)
        if g is None:
            mono = unpack_key(int(key), ring.nvars)
            raise StructureViolation(mono, unpack_key(target, ring.nvars))
        col = np.zeros(dim, dtype=np.int64)
        for k, c in zip(g.keys[1:], g.coeffs[1:]):
            row = rank.get(int(k))
            if row is None:
                raise AssertionError("basis element has a tail outside the staircase: not reduced")
            col[row] = q - int(c)
        dense_s.append(j)
        cols.append(col)
    return MulMatrix(
        dim=dim,
        q=q,
        triv_src=np.array(triv_s, dtype=np.int64),
        triv_dst=np.array(triv_d, dtype=np.int64),
        dense_src=np.array(dense_s, dtype=np.int64),
        dense_cols=np.vstack(cols) if cols else np.zeros((0, dim), dtype=np.int64),
    )


def krylov_rows(M: MulMatrix, v: np.ndarray | None = None, count: int | None = None) -> np.ndarray:
    """The rows v, Mv, M^2 v, ... (count of them; default dim + 1)."""
    if count is None:
        count = M.dim + 1
    rows = np.zeros((count, M.dim), dtype=np.int64)
    if v is None:
        rows[0, 0] = 1  # coordinate vector of the monomial 1
    else:
        rows[0] = np.asarray(v, dtype=np.int64) % M.q
    for i in range(1, count):
        rows[i] = M.apply(rows[i - 1])
    return rows


def min_poly_least(M: MulMatrix, v: np.ndarray | None = None) -> np.ndarray:
    """Monic minimal polynomial of the Krylov sequence v, Mv, M^2 v, ...
    (coefficients ascending).  Shape position holds iff its degree is dim."""
    rows = krylov_rows(M, v)
    deg, coeffs = kernels.krylov_minpoly(rows, M.q)
    if deg < 0:
        raise AssertionError("no dependency among dim + 1 Krylov vectors")
    return coeffs


@dataclass
class ShapeParametrization:
    """LEX basis in shape position: x_i = var_polys[name](t) with t the
    least variable, and least_poly(t) = 0 its monic degree-dim relation."""

    least_poly: np.ndarray
    var_polys: dict[str, np.ndarray]


def lex_parametrization(M: MulMatrix, var_vectors: dict[str, np.ndarray]) -> ShapeParametrization:
    """Solve for each variable's expression in powers of the least variable.

    var_vectors maps variable names to their normal-form coordinate vectors
    in the staircase basis.  Requires shape position (minimal polynomial of
    degree dim); raises ShapePositionError otherwise.
    """
    least = min_poly_least(M)
    if least.size != M.dim + 1:
        raise ShapePositionError(
            "minimal polynomial degree %d < dim %d" % (least.size - 1, M.dim)
        )
    rows = krylov_rows(M, count=M.dim)
    names = list(var_vectors)
    targets = np.vstack([var_vectors[n] for n in names]).astype(np.int64)
    coeffs, ok = kernels.solve_in_row_space(rows, targets, M.q)
    if not ok.all():
        raise AssertionError("Krylov basis failed to span despite full minimal polynomial")
    return ShapeParametrization(least_poly=least, var_polys={n: coeffs[i] for i, n in enumerate(names)})


def variable_vectors(gb: list[MPoly], stair: Staircase) -> dict[str, np.ndarray]:
    """Normal-form coordinate vectors of every ring variable except the
    least one, expressed in the staircase basis."""
    ring = gb[0].ring
    out: dict[str, np.ndarray] = {}
    for i in range(ring.nvars - 1):
        nf = normal_form(MPoly.variable(ring, i), gb)
        vec = np.zeros(stair.size, dtype=np.int64)
        for k, c in zip(nf.keys, nf.coeffs):
            row = stair.rank.get(int(k))
            if row is None:
                raise AssertionError("normal form left the staircase")
            vec[row] = int(c)
        out[ring.names[i]] = vec
    return out


def parametrization_residuals(system: list[MPoly], par: ShapeParametrization) -> int:
    """Substitute the parametrization into each input polynomial and reduce
    modulo the least-variable relation; returns the number of non-zero
    residuals (0 means the parametrization checks out)."""
    ring = system[0].ring
    q = ring.q
    rel = par.least_poly
    images: list[np.ndarray] = []
    for i, name in enumerate(ring.names):
        if i == ring.nvars - 1:
            images.append(np.array([0, 1], dtype=np.int64))
        else:
            images.append(np.asarray(par.var_polys[name], dtype=np.int64))
    powers: list[dict[int, np.ndarray]] = [
        {0: np.array([1], dtype=np.int64), 1: img} for img in images
    ]

    def power(i: int, e: int) -> np.ndarray:
        cache = powers[i]
        top = max(cache)
        while top < e:
            nxt = kernels.polyrem_mod(kernels.polymul_mod(cache[top], images[i], q), rel, q)
            top += 1
            cache[top] = nxt
        return cache[e]

    failures = 0
    dim = rel.shape[0] - 1
    for poly in system:
        acc = np.zeros(dim, dtype=np.int64)
        for exps, c in poly.terms():
            term = np.array([c], dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    term = kernels.polyrem_mod(kernels.polymul_mod(term, power(i, e), q), rel, q)
            acc[: term.shape[0]] = (acc[: term.shape[0]] + term) % q
        if acc.any():
            failures += 1
    return failures
