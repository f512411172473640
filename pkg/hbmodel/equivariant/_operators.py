from typing import Callable, Iterable, List, Optional

from .. import logging as logg
from .._errors import ProductUnavailable
from .._report import IdentityCheck
from .._settings import settings
from ..hodge import HodgeData, hodge_data
from ._datum import EquivariantDatum
from ._module import BasisElement, ModuleElement, TruncatedModule

Operator = Callable[[ModuleElement], ModuleElement]


def neumann_series(op: Operator, x: ModuleElement) -> ModuleElement:
    """\
    `Σ_{k≥0} op^k(x)`.

    Terminates because `op` raises t-weight and the module is truncated.
    :attr:`~hbmodel._settings.HBConfig.max_neumann_terms` bounds the number
    of terms when set.
    """
    limit = settings.max_neumann_terms
    total, term, k = x, x, 0
    while True:
        term = op(term)
        if term.is_zero():
            return total
        k += 1
        if limit is not None and k >= limit:
            raise RuntimeError(f'Neumann series did not terminate after {limit} terms.')
        total = total + term


def identity_check(
    name: str,
    module: TruncatedModule,
    elements: Iterable[BasisElement],
    holds: Callable[[BasisElement], bool],
    *,
    window: Optional[str] = None,
    fatal: bool = False,
) -> IdentityCheck:
    """Evaluate `holds` on each basis element and collect the failures."""
    witnesses = [module.render_basis(b) for b in elements if not holds(b)]
    return IdentityCheck(name, not witnesses, witnesses, window, fatal)


class CartanOperators:
    """\
    Operators of the Cartan model on a truncated module.

    Operators on forms act factorwise, as `I ⊗ A`. The perturbations are
    `P = (I⊗d*G)∂` and `Q = ∂(I⊗d*G)`, with `φ = I − P` and `ψ = I − Q`.

    Parameters
    ----------
    module
        The truncated module `R_G ⊗ C`.
    hodge
        Hodge data of the underlying complex; computed when omitted.
    """

    def __init__(self, module: TruncatedModule, hodge: Optional[HodgeData] = None):
        self.module = module
        self.hodge = hodge_data(module.complex) if hodge is None else hodge

    @classmethod
    def from_datum(
        cls, datum: EquivariantDatum, weight_cap: Optional[int] = None, hodge: Optional[HodgeData] = None
    ) -> 'CartanOperators':
        if weight_cap is None:
            weight_cap = datum.weight_cap or settings.weight_cap
        return cls(TruncatedModule(datum, weight_cap), hodge)

    @property
    def datum(self) -> EquivariantDatum:
        return self.module.datum

    # factorwise operators

    def d(self, x: ModuleElement) -> ModuleElement:
        return self.module.d(x)

    def partial(self, x: ModuleElement) -> ModuleElement:
        return self.module.partial(x)

    def apply_dG(self, x: ModuleElement) -> ModuleElement:
        return self.module.apply_dG(x)

    def dstar(self, x: ModuleElement) -> ModuleElement:
        return self.module.map_forms(x, self.hodge.dstar, -1)

    def dstarG(self, x: ModuleElement) -> ModuleElement:
        return self.module.map_forms(x, self.hodge.dstar_greens, -1)

    def greens(self, x: ModuleElement) -> ModuleElement:
        return self.module.map_forms(x, lambda m: self.hodge.greens[m], 0)

    def laplacian(self, x: ModuleElement) -> ModuleElement:
        return self.module.map_forms(x, lambda m: self.hodge.laplacian[m], 0)

    def harmonic_part(self, x: ModuleElement) -> ModuleElement:
        """`(I ⊗ H)(x)`."""
        return self.module.map_forms(x, lambda m: self.hodge.harmonic_projector[m], 0)

    # perturbations

    def op_P(self, x: ModuleElement) -> ModuleElement:
        return self.dstarG(self.partial(x))

    def op_Q(self, x: ModuleElement) -> ModuleElement:
        return self.partial(self.dstarG(x))

    def phi(self, x: ModuleElement) -> ModuleElement:
        return x - self.op_P(x)

    def psi(self, x: ModuleElement) -> ModuleElement:
        return x - self.op_Q(x)

    def neumann_inverse(self, which: str, x: ModuleElement) -> ModuleElement:
        """\
        Inverse of `φ` (`which='phi'`) or `ψ` (`which='psi'`) as a Neumann series.

        The result `y` satisfies `(I − P)(y) = x` up to terms above the cap.
        """
        if which == 'phi':
            return neumann_series(self.op_P, x)
        if which == 'psi':
            return neumann_series(self.op_Q, x)
        raise ValueError(f'`which` must be \'phi\' or \'psi\', not {which!r}.')

    def phi_inv(self, x: ModuleElement) -> ModuleElement:
        return self.neumann_inverse('phi', x)

    def psi_inv(self, x: ModuleElement) -> ModuleElement:
        return self.neumann_inverse('psi', x)

    def dbar(self, x: ModuleElement) -> ModuleElement:
        """`D̄ = ψ⁻¹ d_G ψ`."""
        return self.psi_inv(self.apply_dG(self.psi(x)))

    # product

    def multiply(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        """Product of the Cartan model, `(t^a⊗u)(t^b⊗v) = t^{a+b}⊗uv`."""
        table = self.datum.product
        if table is None:
            raise ProductUnavailable('The datum has no product table.')
        module = self.module
        terms = {}
        truncated = x.truncated + y.truncated
        for a, p, u in x:
            for b, q, v in y:
                if module.complex.dim(p + q) == 0:
                    continue
                ab = tuple(i + j for i, j in zip(a, b))
                w = table.multiply(p, u, q, v)
                if module.weight(ab) > module.weight_cap:
                    truncated += any(w)
                    continue
                key = (ab, p + q)
                terms[key] = terms[key] + w if key in terms else w
        return ModuleElement(module, terms, truncated)

    def window_basis(self, *, margin: int = 1) -> List[BasisElement]:
        """\
        Basis elements of t-weight ≤ `W − margin·max deg t`.

        These are the elements on which an identity involving `margin`
        applications of ∂ is exact in the truncation.
        """
        bound = self.module.weight_cap - margin * self.datum.max_t_degree
        return list(self.module.basis(max_weight=bound))

    def window_text(self, *, margin: int = 1) -> str:
        bound = self.module.weight_cap - margin * self.datum.max_t_degree
        return f't-weight ≤ {bound}'

    def __repr__(self):
        return f'CartanOperators({self.module!r})'


def apply_dG(x: ModuleElement) -> ModuleElement:
    """`d_G(x) = d(x) − ∂(x)`; see :meth:`TruncatedModule.apply_dG`."""
    return x.module.apply_dG(x)


def check_PQ_zero(
    datum: EquivariantDatum,
    weight_cap: Optional[int] = None,
    *,
    ops: Optional[CartanOperators] = None,
) -> IdentityCheck:
    """\
    Verify `P∘Q = Q∘P = 0` on every basis element of the truncated module.

    Returns
    -------
    An :class:`~hbmodel._report.IdentityCheck`, truthy when both compositions vanish.
    """
    ops = CartanOperators.from_datum(datum, weight_cap) if ops is None else ops
    start = logg.debug('checking PQ = QP = 0')
    check = identity_check(
        'PQ = QP = 0',
        ops.module,
        ops.module.basis(),
        lambda b: ops.op_P(ops.op_Q(ops.module.element(b))).is_zero()
        and ops.op_Q(ops.op_P(ops.module.element(b))).is_zero(),
        window=f't-weight ≤ {ops.module.weight_cap}',
    )
    logg.debug('    finished', time=start)
    return check
