from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd
import sympy
from joblib import Parallel, delayed

from .. import logging as logg
from .._docs import doc_datum, doc_weight_cap
from .._settings import settings
from .._utils import _doc_params
from ..equivariant import EquivariantDatum, ModuleElement, TruncatedModule
from ..equivariant._module import _monomials
from ..linalg import RatMatrix, rank, rank_kernel_image, rank_of_vectors
from ._model import HirschBrown, MinimalModel


@dataclass
class CohomologyTable:
    """\
    Dimensions of equivariant cohomology in total degrees `0, …, window`.

    Attributes
    ----------
    dims
        `dims[n] = dim H^n`.
    window
        Largest total degree whose dimension is exact, the cap W.
    source
        `'minimal'` or `'cartan'`.
    representatives
        Optional cycles spanning a complement of the boundaries, per degree.
    """

    dims: List[int]
    window: int
    source: str
    representatives: Optional[Dict[int, List[ModuleElement]]] = field(default=None, repr=False)

    def __getitem__(self, n: int) -> int:
        return self.dims[n]

    def to_df(self) -> pd.DataFrame:
        return pd.DataFrame(
            dict(degree=range(len(self.dims)), dim=self.dims)
        ).set_index('degree')

    def poincare_series(self, var: str = 'x') -> sympy.Expr:
        """`Σ_n dim H^n · x^n`, truncated at the window."""
        x = sympy.Symbol(var)
        return sum((d * x ** n for n, d in enumerate(self.dims)), sympy.Integer(0))

    def is_free_over_RG(self, harmonic_dims: Sequence[int], t_degrees: Sequence[int]) -> bool:
        """Whether the dimensions are those of the free module `R_G ⊗ ℋ`."""
        return self.dims == free_module_dims(harmonic_dims, t_degrees, self.window)

    def line(self) -> str:
        return ', '.join(f'{n}:{d}' for n, d in enumerate(self.dims))


def free_module_dims(harmonic_dims: Sequence[int], t_degrees: Sequence[int], window: int) -> List[int]:
    """Dimensions of `R_G ⊗ ℋ` in total degrees `0, …, window`."""
    out = [0] * (window + 1)
    for a in _monomials(tuple(t_degrees), window):
        w = sum(k * t for k, t in zip(a, t_degrees))
        for m, h in enumerate(harmonic_dims):
            if w + m <= window:
                out[w + m] += h
    return out


def _dims_from_ranks(block_dims: Sequence[int], ranks: Sequence[int]) -> List[int]:
    return [
        block_dims[n] - ranks[n] - (ranks[n - 1] if n > 0 else 0)
        for n in range(len(block_dims))
    ]


def _representatives(
    matrices: Sequence[RatMatrix], from_vector: Callable[[Sequence, int], ModuleElement]
) -> Dict[int, List[ModuleElement]]:
    """Kernel vectors completing the image, chosen by the pivot rule."""
    out = {}
    for n, m in enumerate(matrices):
        kernel = rank_kernel_image(m).kernel_basis
        image = rank_kernel_image(matrices[n - 1]).image_basis if n > 0 else []
        chosen = list(image)
        reps = []
        for v in kernel:
            if rank_of_vectors(chosen + [v]) > len(chosen):
                chosen.append(v)
                reps.append(from_vector(v, n))
        out[n] = reps
    return out


def cohomology_minimal(mm: MinimalModel, *, representatives: bool = False) -> CohomologyTable:
    """\
    Cohomology of `(R_G ⊗ ℋ, d_HB)` in total degrees ≤ W.

    Parameters
    ----------
    mm
        The minimal model.
    representatives
        Also return representative cycles.
    """
    window = mm.weight_cap
    start = logg.info(f'computing cohomology of the minimal model up to degree {window}')
    matrices = [mm.matrix(n) for n in range(window + 1)]
    ranks = [rank(m) for m in matrices]
    dims = _dims_from_ranks([len(mm.basis_in_degree(n)) for n in range(window + 1)], ranks)
    reps = None
    if representatives:
        reps = _representatives(
            matrices,
            lambda v, n: sum(
                (mm.element(b) * c for b, c in zip(mm.basis_in_degree(n), v) if c),
                mm.hb.module.zero(),
            ),
        )
    logg.info('    finished', time=start, deep=f'dims {dims}')
    return CohomologyTable(dims, window, 'minimal', reps)


def _dG_block(module: TruncatedModule, n: int) -> RatMatrix:
    return module.operator_matrix(module.apply_dG, n, n + 1)


@_doc_params(datum=doc_datum, weight_cap=doc_weight_cap)
def cohomology_cartan(
    datum: EquivariantDatum,
    weight_cap: Optional[int] = None,
    *,
    representatives: bool = False,
    n_jobs: Optional[int] = None,
) -> CohomologyTable:
    """\
    Cohomology of the truncated Cartan model `(R_G ⊗ C, d_G)` in total degrees ≤ W.

    Serves as the independent check of :func:`cohomology_minimal`.

    Parameters
    ----------
    {datum}
    {weight_cap}
    representatives
        Also return representative cycles.
    n_jobs
        Number of joblib workers for the per-degree matrices.
    """
    if weight_cap is None:
        weight_cap = datum.weight_cap or settings.weight_cap
    module = TruncatedModule(datum, weight_cap)
    start = logg.info(f'computing Cartan cohomology up to degree {weight_cap}')
    n_jobs = settings.n_jobs if n_jobs is None else n_jobs
    matrices = Parallel(n_jobs=n_jobs)(delayed(_dG_block)(module, n) for n in range(weight_cap + 1))
    ranks = Parallel(n_jobs=n_jobs)(delayed(rank)(m) for m in matrices)
    dims = _dims_from_ranks([module.dim(n) for n in range(weight_cap + 1)], ranks)
    reps = _representatives(matrices, module.from_vector) if representatives else None
    logg.info('    finished', time=start, deep=f'dims {dims}')
    return CohomologyTable(dims, weight_cap, 'cartan', reps)


def cohomology(hb: HirschBrown) -> CohomologyTable:
    """Cohomology of the minimal model of `hb`."""
    return cohomology_minimal(hb.minimal)
