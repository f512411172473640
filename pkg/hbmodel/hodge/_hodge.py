from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from .. import logging as logg
from .._errors import DegreeOutOfRange, IdentityFailed
from .._settings import settings
from ..linalg import (
    RatMatrix,
    inverse,
    is_zero_vector,
    orthogonal_project,
    rank_kernel_image,
    rank_of_vectors,
    solve,
    unit_vector,
)
from ._complex import GradedComplex, betti_numbers


def codifferential(c: GradedComplex) -> Tuple[RatMatrix, ...]:
    """\
    Adjoint of `d` under the inner product.

    Returns `d*` as a tuple indexed by source degree: entry `m` maps `C^m` to
    `C^{m−1}` and equals `inner_{m−1}⁻¹ · d_{m−1}ᵀ · inner_m`.
    """
    out = [RatMatrix.zeros(0, c.dim(0))] if c.top >= 0 else []
    for m in range(1, c.top + 1):
        d = c.d(m - 1)
        dstar = inverse(c.inner(m - 1)) @ d.T @ c.inner(m)
        # ⟨d x, y⟩ = ⟨x, d* y⟩ on all basis pairs
        if d.T @ c.inner(m) != c.inner(m - 1) @ dstar:
            raise IdentityFailed('d* is adjoint to d', f'degree {m}')
        out.append(dstar)
    return tuple(out)


class _DegreeBlock(NamedTuple):
    laplacian: RatMatrix
    harmonic_basis: List[np.ndarray]
    boundary_basis: List[np.ndarray]
    coexact_basis: List[np.ndarray]
    harmonic_projector: RatMatrix
    greens: RatMatrix


def _degree_block(c: GradedComplex, dstar: Sequence[RatMatrix], m: int) -> _DegreeBlock:
    n = c.dim(m)
    inner = c.inner(m)
    d_in = c.d(m - 1)
    dstar_in = dstar[m + 1] if m + 1 <= c.top else RatMatrix.zeros(n, 0)
    lap = dstar_in @ c.d(m) + d_in @ dstar[m]
    kernel = rank_kernel_image(lap).kernel_basis
    boundary = rank_kernel_image(d_in).image_basis
    coexact = rank_kernel_image(dstar_in).image_basis
    h_cols = [orthogonal_project(kernel, inner, unit_vector(n, k)) for k in range(n)]
    h = RatMatrix.from_columns(h_cols, rows=n)
    g_cols = []
    for k in range(n):
        rhs = unit_vector(n, k) - h_cols[k]
        x = solve(lap, rhs)
        if x is None:
            raise IdentityFailed('Laplacian is onto the orthogonal complement of its kernel', c.label(m, k))
        g_cols.append(x - h.dot(x))
    g = RatMatrix.from_columns(g_cols, rows=n)
    return _DegreeBlock(lap, kernel, boundary, coexact, h, g)


class HodgeData:
    """\
    Hodge package of a :class:`GradedComplex`.

    All attributes are tuples indexed by degree.

    Attributes
    ----------
    harmonic_basis
        Basis of ℋ^m = ker Δ_m.
    boundary_basis
        Basis of B^m = im d_{m−1}.
    coexact_basis
        Basis of E^m = im d*_{m+1}.
    codifferential
        d*, entry `m` mapping C^m → C^{m−1}.
    laplacian
        Δ_m = d*d + dd*.
    harmonic_projector
        H_m, orthogonal projection onto ℋ^m.
    greens
        G_m, zero on ℋ^m and inverse to Δ_m on its image.
    """

    def __init__(self, complex: GradedComplex, codifferential, blocks: Sequence[_DegreeBlock]):
        self.complex = complex
        self.codifferential = tuple(codifferential)
        self.laplacian = tuple(b.laplacian for b in blocks)
        self.harmonic_basis = tuple(b.harmonic_basis for b in blocks)
        self.boundary_basis = tuple(b.boundary_basis for b in blocks)
        self.coexact_basis = tuple(b.coexact_basis for b in blocks)
        self.harmonic_projector = tuple(b.harmonic_projector for b in blocks)
        self.greens = tuple(b.greens for b in blocks)
        self._dstar_greens = tuple(
            self.dstar(m) @ self.greens[m] for m in complex.degrees
        )
        self._harmonic_matrix = tuple(
            RatMatrix.from_columns(basis, rows=complex.dim(m))
            for m, basis in enumerate(self.harmonic_basis)
        )

    @property
    def top(self) -> int:
        return self.complex.top

    def dstar(self, m: int) -> RatMatrix:
        """d* on C^m, as a map to C^{m−1}."""
        if 0 <= m <= self.top:
            return self.codifferential[m]
        return RatMatrix.zeros(self.complex.dim(m - 1), self.complex.dim(m))

    def dstar_greens(self, m: int) -> RatMatrix:
        """d*G on C^m, as a map to C^{m−1}."""
        if 0 <= m <= self.top:
            return self._dstar_greens[m]
        return RatMatrix.zeros(self.complex.dim(m - 1), self.complex.dim(m))

    def harmonic_dims(self) -> List[int]:
        return [len(b) for b in self.harmonic_basis]

    def harmonic_coordinates(self, m: int, v: Sequence) -> np.ndarray:
        """Coordinates of a harmonic vector in `harmonic_basis[m]`."""
        x = solve(self._harmonic_matrix[m], v)
        if x is None:
            raise ValueError(f'Vector {v!r} is not harmonic in degree {m}.')
        return x

    def is_harmonic(self, m: int, v: Sequence) -> bool:
        return all(a == b for a, b in zip(self.harmonic_projector[m].dot(v), v))

    def decompose(self, m: int, v: Sequence) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """See :func:`decompose`."""
        if not 0 <= m <= self.top:
            raise DegreeOutOfRange(f'Degree {m} outside 0..{self.top}.')
        c = self.complex
        gv = self.greens[m].dot(v)
        harmonic = self.harmonic_projector[m].dot(v)
        exact = c.d(m - 1).dot(self.dstar(m).dot(gv))
        if m + 1 <= self.top:
            coexact = self.dstar(m + 1).dot(c.d(m).dot(gv))
        else:
            coexact = c.zero(m)
        return harmonic, exact, coexact

    def check(self) -> List[Tuple[str, bool]]:
        """Every structural identity of the Hodge package, per degree."""
        c = self.complex
        out = []
        for m in c.degrees:
            n = c.dim(m)
            eye = RatMatrix.identity(n)
            h, g, lap = self.harmonic_projector[m], self.greens[m], self.laplacian[m]
            zero = RatMatrix.zeros(n, n)
            inner = c.inner(m)
            parts = [self.harmonic_basis[m], self.boundary_basis[m], self.coexact_basis[m]]
            orthogonal = all(
                inner.dot(y).dot(x) == 0
                for i, a in enumerate(parts)
                for b in parts[i + 1:]
                for x in a
                for y in b
            )
            spanning = (
                sum(len(p) for p in parts) == n
                and rank_of_vectors([v for p in parts for v in p]) == n
            )
            dg = c.d(m - 1) @ self.dstar(m) @ g
            gd = self.dstar(m + 1) @ c.d(m) @ g if m + 1 <= c.top else zero
            harmonic_is_closed = all(
                is_zero_vector(c.d(m).dot(x)) and is_zero_vector(self.dstar(m).dot(x))
                for x in self.harmonic_basis[m]
            )
            out += [
                (f'C^{m} = ℋ ⊕ B ⊕ E orthogonally', orthogonal and spanning),
                (f'H² = H in degree {m}', h @ h == h),
                (f'HG = GH = 0 in degree {m}', h @ g == zero and g @ h == zero),
                (f'ΔG = GΔ = I − H in degree {m}', lap @ g == eye - h and g @ lap == eye - h),
                (f'H + dd*G + d*dG = I in degree {m}', h + dg + gd == eye),
                (f'ℋ = ker d ∩ ker d* in degree {m}', harmonic_is_closed),
                (f'dG = Gd from degree {m}', c.d(m) @ g == self._greens(m + 1) @ c.d(m)),
                (
                    f'd*G = Gd* from degree {m}',
                    self.dstar(m) @ g == self._greens(m - 1) @ self.dstar(m),
                ),
            ]
        betti = betti_numbers(c)
        out.append(('dim ℋ^m = dim H^m(C)', betti == self.harmonic_dims()))
        return out

    def _greens(self, m: int) -> RatMatrix:
        if 0 <= m <= self.top:
            return self.greens[m]
        return RatMatrix.zeros(0, 0)

    def __repr__(self):
        dims = ', '.join(str(d) for d in self.harmonic_dims())
        return f'HodgeData(harmonic dims ({dims}))'


def hodge_data(c: GradedComplex, *, check: bool = False, n_jobs: Optional[int] = None) -> HodgeData:
    """\
    Harmonic forms, projector, Green's operator and Laplacian of `c`.

    Green's operator is obtained without eigenvalues: for every basis vector
    `e_k`, solve `Δx = (I − H)e_k` and remove the harmonic part of `x`.

    Parameters
    ----------
    c
        The complex.
    check
        Run :meth:`HodgeData.check` and raise :class:`AssertionError`
        on any failure.
    n_jobs
        Number of joblib workers for the independent per-degree blocks.
        Defaults to :attr:`~hbmodel._settings.HBConfig.n_jobs`.

    Returns
    -------
    The :class:`HodgeData` of `c`.
    """
    start = logg.info(f'computing Hodge decomposition of {c!r}')
    dstar = codifferential(c)
    n_jobs = settings.n_jobs if n_jobs is None else n_jobs
    blocks = Parallel(n_jobs=n_jobs)(
        delayed(_degree_block)(c, dstar, m) for m in c.degrees
    )
    h = HodgeData(c, dstar, blocks)
    if check:
        failed = [name for name, ok in h.check() if not ok]
        if failed:
            raise AssertionError(f'Hodge identities failed: {failed}')
    logg.info(
        '    finished',
        time=start,
        deep=f'harmonic dimensions {h.harmonic_dims()}',
    )
    return h


def decompose(h: HodgeData, m: int, v: Sequence) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """\
    Split `v ∈ C^m` as `H(v) + dd*G(v) + d*dG(v)`.

    Returns
    -------
    `(harmonic, exact, coexact)`, pairwise orthogonal and summing to `v`.
    """
    return h.decompose(m, v)
