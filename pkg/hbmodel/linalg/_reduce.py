"""Gaussian elimination over the rationals.

Pivoting always takes the first nonzero entry in column order, so every
basis returned here is a deterministic function of the input.
"""
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .._errors import IdentityFailed, InnerNotPositiveDefinite
from ._matrix import RatMatrix
from ._rational import vector, zeros


def _rref(rows: List[List[Fraction]], n_cols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form, in place. Returns the rows and the pivot columns."""
    pivots = []
    r = 0
    n_rows = len(rows)
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            rows[r] = pivot_row = [x * inv for x in pivot_row]
        for i in range(n_rows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _as_rows(m: RatMatrix) -> List[List[Fraction]]:
    return [list(row) for row in m.todense()]


class KernelImage(NamedTuple):
    rank: int
    kernel_basis: List[np.ndarray]
    image_basis: List[np.ndarray]


def rank_kernel_image(m: RatMatrix) -> KernelImage:
    """\
    Rank, kernel basis and image basis of `m`.

    The kernel basis has one vector per free column of the reduced echelon
    form (that coordinate set to 1); the image basis consists of the columns
    of `m` at the pivot positions.
    """
    rows, pivots = _rref(_as_rows(m), m.cols)
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        x = zeros(m.cols)
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -rows[i][f]
        kernel.append(x)
    image = [m.column(p) for p in pivots]
    return KernelImage(len(pivots), kernel, image)


def rank(m: RatMatrix) -> int:
    return len(_rref(_as_rows(m), m.cols)[1])


def rank_of_vectors(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    return len(_rref([list(v) for v in vectors], len(vectors[0]))[1])


def solve(m: RatMatrix, b: Sequence[Fraction]) -> Optional[np.ndarray]:
    """\
    Some `x` with `m @ x == b`, or `None` when `b` is not in the image.

    Free variables are set to zero.
    """
    if len(b) != m.rows:
        raise ValueError(f'Right hand side of length {len(b)} does not match {m.shape}.')
    dense = m.todense()
    rows = [list(dense[i]) + [Fraction(b[i])] for i in range(m.rows)]
    rows, pivots = _rref(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = zeros(m.cols)
    for i, p in enumerate(pivots):
        x[p] = rows[i][-1]
    wrong = [i for i, (u, v) in enumerate(zip(m.dot(x), b)) if u != Fraction(v)]
    if wrong:
        raise IdentityFailed('back substitution solves m @ x = b', f'row {wrong[0]}')
    return x


def inverse(m: RatMatrix) -> RatMatrix:
    n = m.rows
    if m.cols != n:
        raise ValueError(f'Cannot invert a non-square matrix of shape {m.shape}.')
    dense = m.todense()
    rows = [
        list(dense[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)
    ]
    rows, pivots = _rref(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError('Matrix is singular.')
    return RatMatrix.from_dense([row[n:] for row in rows], cols=n)


def ldl_check(inner: RatMatrix) -> List[Fraction]:
    """\
    Symmetric decomposition `inner = L D Lᵀ` without pivoting.

    Returns the diagonal of `D`. Raises
    :class:`~hbmodel._errors.InnerNotPositiveDefinite` when a pivot is not
    positive.
    """
    if not inner.is_symmetric():
        raise InnerNotPositiveDefinite(f'Inner product matrix {inner!r} is not symmetric.')
    a = _as_rows(inner)
    n = len(a)
    diag = []
    for k in range(n):
        d = a[k][k]
        if d <= 0:
            raise InnerNotPositiveDefinite(
                f'Inner product has non-positive pivot {d} at position {k}.'
            )
        diag.append(d)
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return diag


def orthogonal_project(
    subspace_basis: Sequence[Sequence[Fraction]],
    inner: RatMatrix,
    v: Sequence[Fraction],
) -> np.ndarray:
    """\
    Inner-product-orthogonal projection of `v` onto the span of `subspace_basis`.

    Solves the normal equations `Sᵀ A S c = Sᵀ A v` for the Gram matrix of
    the basis `S` under `A = inner`, and returns `S c`.
    """
    ldl_check(inner)
    if not subspace_basis:
        return zeros(len(v))
    s = RatMatrix.from_columns(subspace_basis, rows=len(v))
    sa = s.T @ inner
    gram = sa @ s
    c = solve(gram, sa.dot(vector(v)))
    if c is None:
        raise ValueError('Subspace basis is not linearly independent.')
    return s.dot(c)
