from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from .. import logging as logg
from .._errors import (
    IdentityFailed,
    NoWitnessInWindow,
    NotAbelian,
    NotCEF,
    ProductUnavailable,
    TheoremMismatch,
)
from .._settings import settings
from ..equivariant import (
    CartanOperators,
    EquivariantDatum,
    ModuleElement,
    TruncatedModule,
    ValidationReport,
    validate,
)
from ..equivariant._module import Monomial
from ..hodge import HodgeData, hodge_data
from ..linalg import RatMatrix, solve, zeros

Harmonic = Union[str, ModuleElement]


class HarmonicBasisElement(NamedTuple):
    """`t^monomial ⊗ h` with `h` the `index`-th harmonic basis vector of degree `degree`."""

    monomial: Monomial
    degree: int
    index: int


class HirschBrown:
    """\
    Perturbed differentials of the Cartan model and the minimal model.

    Holds a datum, the Hodge data of its complex, the truncated module and
    the operators on it. `D̄ = ψ⁻¹ d_G ψ` and `d_HB = (I⊗H) D̄` restricted to
    `R_G ⊗ ℋ`.

    Parameters
    ----------
    datum
        A datum that passed the fatal checks of :func:`~hbmodel.equivariant.validate`.
    weight_cap
        Truncation cap W. Defaults to the datum's cap, then to
        :attr:`~hbmodel._settings.HBConfig.weight_cap`.
    hodge
        Precomputed Hodge data of the complex.
    """

    def __init__(
        self,
        datum: EquivariantDatum,
        weight_cap: Optional[int] = None,
        *,
        hodge: Optional[HodgeData] = None,
    ):
        if weight_cap is None:
            weight_cap = datum.weight_cap or settings.weight_cap
        self.datum = datum
        self.hodge = hodge_data(datum.complex) if hodge is None else hodge
        self.ops = CartanOperators(TruncatedModule(datum, weight_cap), self.hodge)
        self._validation: Optional[ValidationReport] = None
        self._minimal_model: Optional['MinimalModel'] = None

    @property
    def module(self) -> TruncatedModule:
        return self.ops.module

    @property
    def weight_cap(self) -> int:
        return self.module.weight_cap

    @property
    def validation(self) -> ValidationReport:
        if self._validation is None:
            self._validation = validate(self.datum, self.weight_cap, hodge=self.hodge)
        return self._validation

    @property
    def minimal(self) -> 'MinimalModel':
        if self._minimal_model is None:
            self._minimal_model = minimal_model(self.datum, self.weight_cap, hb=self)
        return self._minimal_model

    # harmonic generators

    def generators(self) -> List[Tuple[int, int]]:
        """`(degree, index)` of every harmonic basis vector."""
        return [
            (m, k) for m in self.datum.complex.degrees for k in range(len(self.hodge.harmonic_basis[m]))
        ]

    def harmonic_vector(self, m: int, k: int) -> np.ndarray:
        return self.hodge.harmonic_basis[m][k]

    def generator(self, m: int, k: int, monomial: Optional[Monomial] = None) -> ModuleElement:
        return self.module.from_form(m, self.harmonic_vector(m, k), monomial)

    def generator_label(self, m: int, k: int) -> str:
        return self.datum.complex.render(m, self.harmonic_vector(m, k))

    def harmonic(self, h: Harmonic) -> ModuleElement:
        """\
        Element of `R_G ⊗ ℋ` from a label or a module element.

        A label names a basis element of the complex that must be harmonic.
        """
        x = self.module.from_label(h) if isinstance(h, str) else h
        if not self.is_harmonic(x):
            raise ValueError(f'{x} is not harmonic.')
        return x

    def is_harmonic(self, x: ModuleElement) -> bool:
        return all(self.hodge.is_harmonic(m, v) for _, m, v in x)

    # operators

    def dbar(self, x: ModuleElement) -> ModuleElement:
        """`D̄ = ψ⁻¹ d_G ψ`."""
        return self.ops.dbar(x)

    def d_hb(self, h: Harmonic) -> ModuleElement:
        """\
        `d_HB(h)`, computed as `(I⊗H) D̄ h` and as `φ d_G φ⁻¹ h`.

        Raises :class:`~hbmodel._errors.TheoremMismatch` when the two
        computations differ.
        """
        x = self.harmonic(h)
        ops = self.ops
        projected = ops.harmonic_part(self.dbar(x))
        transferred = ops.phi(ops.apply_dG(ops.phi_inv(x)))
        if projected != transferred:
            raise TheoremMismatch('(I⊗H)D̄ = φ d_G φ⁻¹ on R_G⊗ℋ', str(x))
        return projected

    def canonical_extension(self, h: Harmonic) -> ModuleElement:
        """\
        The closed extension `φ⁻¹(h)` of a harmonic form.

        Defined when `d_HB` vanishes up to the cap. The result is checked to be
        `d_G`-closed with weight-zero part `h`.
        """
        if not self.minimal.dhb_is_zero:
            raise NotCEF(
                f'd_HB is nonzero at W = {self.weight_cap}; '
                'classes need not extend equivariantly.'
            )
        x = self.harmonic(h)
        ext = self.ops.phi_inv(x)
        if not self.ops.apply_dG(ext).is_zero():
            raise IdentityFailed('d_G φ⁻¹(h) = 0', str(x))
        if ext.weight_part(0) != x.weight_part(0):
            raise IdentityFailed('weight-zero part of φ⁻¹(h) is h', str(x))
        return ext

    def _require_product(self):
        if not self.datum.abelian:
            raise NotAbelian(
                f'Products need generators of degree 2, got {list(self.datum.t_degrees)}.'
            )
        if self.datum.product is None:
            raise ProductUnavailable('The datum has no product table.')
        if not self.validation.product_ok:
            failed = [c.name for c in self.validation.checks if c.name.startswith('product') and not c]
            raise ProductUnavailable(f'Product checks failed: {", ".join(failed)}.')
        if not self.minimal.dhb_is_zero:
            raise NotCEF(f'd_HB is nonzero at W = {self.weight_cap}.')

    def twisted_product(self, a: Harmonic, b: Harmonic) -> ModuleElement:
        """\
        `a ∧̃ b = (I⊗H) ψ⁻¹ (â b̂)` with `x̂ = φ⁻¹(x)`.

        Accepts elements of `R_G ⊗ ℋ`; generators may be given by label. The
        weight-zero part is checked to equal `H(a∧b)` of the weight-zero parts.
        """
        self._require_product()
        x, y = self.harmonic(a), self.harmonic(b)
        ops = self.ops
        result = ops.harmonic_part(ops.psi_inv(ops.multiply(ops.phi_inv(x), ops.phi_inv(y))))
        leading = ops.harmonic_part(ops.multiply(x.weight_part(0), y.weight_part(0)))
        if result.weight_part(0) != leading.weight_part(0):
            raise IdentityFailed('weight-zero part of a ∧̃ b is H(a∧b)', f'({x}, {y})')
        return result

    def gamma_witness(self, a: Harmonic, b: Harmonic) -> ModuleElement:
        """\
        Some `γ` with `d_G γ = φ⁻¹(a ∧̃ b) − â b̂`.

        Found by solving the linear system on the truncated module and
        checked by substitution.
        """
        product = self.twisted_product(a, b)
        ops = self.ops
        x, y = self.harmonic(a), self.harmonic(b)
        rhs = ops.phi_inv(product) - ops.multiply(ops.phi_inv(x), ops.phi_inv(y))
        if rhs.is_zero():
            return self.module.zero()
        n = rhs.total_degree
        dG = self.module.operator_matrix(self.module.apply_dG, n - 1, n)
        coords = solve(dG, self.module.to_vector(rhs, n))
        if coords is None:
            raise NoWitnessInWindow(
                f'No γ with d_G γ = φ⁻¹(a ∧̃ b) − âb̂ at W = {self.weight_cap}; raise the cap.'
            )
        gamma = self.module.from_vector(coords, n - 1)
        if self.module.apply_dG(gamma) != rhs:
            raise IdentityFailed('d_G γ = φ⁻¹(a ∧̃ b) − âb̂', str(gamma))
        return gamma

    def __repr__(self):
        name = f'{self.datum.name!r}, ' if self.datum.name else ''
        return f'HirschBrown({name}W={self.weight_cap}, harmonic dims {self.hodge.harmonic_dims()})'


class MinimalModel:
    """\
    The minimal model `(R_G ⊗ ℋ, d_HB)`.

    `d_HB` is stored through its values on the generators `1 ⊗ h` and extended
    R_G-linearly.

    Attributes
    ----------
    images
        `(degree, index) -> d_HB(1 ⊗ h)` as module elements with harmonic form parts.
    dhb_is_zero
        Whether `d_HB` vanishes on every generator at this cap.
    """

    def __init__(self, hb: HirschBrown, images: Dict[Tuple[int, int], ModuleElement]):
        self.hb = hb
        self.images = images
        self.dhb_is_zero = all(x.is_zero() for x in images.values())
        module = hb.module
        self._blocks: Dict[int, List[HarmonicBasisElement]] = {}
        for a in module.monomials:
            for m, k in hb.generators():
                n = module.weight(a) + m
                self._blocks.setdefault(n, []).append(HarmonicBasisElement(a, m, k))

    @property
    def weight_cap(self) -> int:
        return self.hb.weight_cap

    @property
    def harmonic_dims(self) -> List[int]:
        return self.hb.hodge.harmonic_dims()

    def basis_in_degree(self, n: int) -> List[HarmonicBasisElement]:
        return list(self._blocks.get(n, ()))

    def basis(self, max_weight: Optional[int] = None) -> List[HarmonicBasisElement]:
        out = [b for n in sorted(self._blocks) for b in self._blocks[n]]
        if max_weight is not None:
            out = [b for b in out if self.hb.module.weight(b.monomial) <= max_weight]
        return out

    def element(self, b: HarmonicBasisElement) -> ModuleElement:
        return self.hb.generator(b.degree, b.index, b.monomial)

    def render_basis(self, b: HarmonicBasisElement) -> str:
        label = self.hb.generator_label(b.degree, b.index)
        if not any(b.monomial):
            return label
        from ..equivariant import render_monomial

        return f'{render_monomial(b.monomial)}⊗({label})'

    def coordinates(self, x: ModuleElement) -> Dict[HarmonicBasisElement, object]:
        """Coefficients of `x ∈ R_G ⊗ ℋ` on the basis `t^a ⊗ h_k`."""
        out = {}
        for a, m, v in x:
            for k, c in enumerate(self.hb.hodge.harmonic_coordinates(m, v)):
                if c:
                    out[HarmonicBasisElement(a, m, k)] = c
        return out

    def apply(self, x: ModuleElement) -> ModuleElement:
        """`d_HB(x)` by R_G-linear extension from the generators."""
        out = self.hb.module.zero()
        for b, c in self.coordinates(x).items():
            out = out + self.images[b.degree, b.index].t_multiply(b.monomial) * c
        return out

    def to_vector(self, x: ModuleElement, n: int) -> np.ndarray:
        pos = {b: i for i, b in enumerate(self._blocks.get(n, ()))}
        out = zeros(len(pos))
        for b, c in self.coordinates(x).items():
            out[pos[b]] = c
        return out

    def matrix(self, n: int) -> RatMatrix:
        """`d_HB` from the total-degree `n` block to the `n + 1` block."""
        columns = [self.to_vector(self.apply(self.element(b)), n + 1) for b in self._blocks.get(n, ())]
        return RatMatrix.from_columns(columns, len(self._blocks.get(n + 1, ())))

    def __repr__(self):
        return (
            f'MinimalModel(harmonic dims {self.harmonic_dims}, W={self.weight_cap}, '
            f'dhb_is_zero={self.dhb_is_zero})'
        )


def minimal_model(
    datum: EquivariantDatum,
    weight_cap: Optional[int] = None,
    *,
    hb: Optional[HirschBrown] = None,
    n_jobs: Optional[int] = None,
) -> MinimalModel:
    """\
    Assemble `d_HB` on every harmonic generator.

    Each value is computed twice, as `(I⊗H) D̄ h` and as `φ d_G φ⁻¹ h`, and
    the two must agree.

    Parameters
    ----------
    datum
        Validated datum.
    weight_cap
        Truncation cap W.
    hb
        Reuse an existing :class:`HirschBrown`.
    n_jobs
        Number of joblib workers for the generators.

    Returns
    -------
    The :class:`MinimalModel`.
    """
    hb = HirschBrown(datum, weight_cap) if hb is None else hb
    start = logg.info(f'computing minimal model at W = {hb.weight_cap}')
    n_jobs = settings.n_jobs if n_jobs is None else n_jobs
    gens = hb.generators()
    values = Parallel(n_jobs=n_jobs, prefer='threads')(
        delayed(hb.d_hb)(hb.generator(m, k)) for m, k in gens
    )
    mm = MinimalModel(hb, dict(zip(gens, values)))
    logg.info(
        '    finished',
        time=start,
        deep=f'harmonic dims {mm.harmonic_dims}, d_HB {"= 0" if mm.dhb_is_zero else "≠ 0"}',
    )
    return mm
