from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional

import pandas as pd

from .. import logging as logg
from .._errors import InvalidComplex
from .._report import IdentityCheck, checks_to_df
from .._settings import settings
from ..hodge import HodgeData
from ..linalg import RatMatrix, is_zero_vector
from ._datum import EquivariantDatum
from ._operators import CartanOperators, check_PQ_zero, identity_check


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`."""

    name: Optional[str]
    weight_cap: int
    checks: List[IdentityCheck] = field(default_factory=list)
    product_present: bool = False

    @property
    def passed(self) -> bool:
        return all(self.checks)

    @property
    def fatal_passed(self) -> bool:
        return all(c for c in self.checks if c.fatal)

    @property
    def first_fatal_failure(self) -> Optional[IdentityCheck]:
        return next((c for c in self.checks if c.fatal and not c), None)

    @property
    def product_ok(self) -> bool:
        """Whether product operations are enabled for this datum."""
        return self.product_present and all(c for c in self.checks if c.name.startswith('product'))

    @property
    def window(self) -> str:
        return f'dimensions exact in total degree ≤ {self.weight_cap}'

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_df(self) -> pd.DataFrame:
        return checks_to_df(self.checks)


def _generator(j: int, rank: int) -> str:
    return 'i' if rank == 1 else f'i_{j + 1}'


def _anticommutator_witnesses(datum: EquivariantDatum, left: "_Op", right: "_Op") -> List[str]:
    """Basis elements of the complex where `left∘right + right∘left` is nonzero."""
    c = datum.complex
    shift = left.degree + right.degree
    out = []
    for m in c.degrees:
        if c.dim(m + shift) == 0:
            continue
        s = left(m + right.degree) @ right(m) + right(m + left.degree) @ left(m)
        out += [c.label(m, i) for i in range(c.dim(m)) if not is_zero_vector(s.column(i))]
    return out


class _Op(NamedTuple):
    """Matrix-valued operator on the complex together with its degree."""

    matrix: Callable[[int], RatMatrix]
    degree: int

    def __call__(self, m: int) -> RatMatrix:
        return self.matrix(m)


def validate(
    datum: EquivariantDatum,
    weight_cap: Optional[int] = None,
    *,
    raise_on_fatal: bool = True,
    hodge: Optional[HodgeData] = None,
) -> ValidationReport:
    """\
    Check the structural identities of an equivariant datum.

    Checked exactly, in this order: `d² = 0`; `d i_j + i_j d = 0` for each
    `j`; `i_j i_k + i_k i_j = 0` for each pair; `d_G² = 0` on the truncated
    module; `PQ = QP = 0`; and, when a product is present, associativity,
    graded commutativity, the unit, and the derivation property of `d` and
    of each `i_j`. The first four are fatal. Product failures only disable
    product operations.

    Parameters
    ----------
    datum
        The datum to check.
    weight_cap
        Truncation cap W. Defaults to the datum's cap, then to
        :attr:`~hbmodel._settings.HBConfig.weight_cap`.
    raise_on_fatal
        Raise :class:`~hbmodel._errors.InvalidComplex` when a fatal check fails.
    hodge
        Precomputed Hodge data of the complex.

    Returns
    -------
    A :class:`ValidationReport`.
    """
    if weight_cap is None:
        weight_cap = datum.weight_cap or settings.weight_cap
    start = logg.info(f'validating {datum.name or "datum"} at W = {weight_cap}')
    c = datum.complex
    report = ValidationReport(datum.name, weight_cap, product_present=datum.product is not None)

    def fatal(check: IdentityCheck) -> bool:
        report.checks.append(check)
        logg.check(check)
        if not check and raise_on_fatal:
            raise InvalidComplex(check.name, check.witnesses)
        return bool(check)

    d = _Op(c.d, 1)
    contractions = [
        _Op(lambda m, j=j: datum.contraction(j, m), ct.degree)
        for j, ct in enumerate(datum.contractions)
    ]
    ok = fatal(IdentityCheck('d∘d = 0', *_as_result(c.d_squared_witnesses()), fatal=True))
    for j, i_j in enumerate(contractions):
        g = _generator(j, datum.rank)
        w = _anticommutator_witnesses(datum, d, i_j)
        ok &= fatal(IdentityCheck(f'd∘{g} + {g}∘d = 0', *_as_result(w), fatal=True))
    for j, i_j in enumerate(contractions):
        for k in range(j, datum.rank):
            i_k = contractions[k]
            gj, gk = _generator(j, datum.rank), _generator(k, datum.rank)
            w = _anticommutator_witnesses(datum, i_j, i_k)
            name = f'{gj}∘{gj} = 0' if j == k else f'{gj}∘{gk} + {gk}∘{gj} = 0'
            ok &= fatal(IdentityCheck(name, *_as_result(w), fatal=True))

    if not ok:
        logg.info('    finished', time=start, deep='fatal checks failed')
        return report

    ops = CartanOperators.from_datum(datum, weight_cap, hodge)
    module = ops.module
    fatal(
        identity_check(
            'd_G∘d_G = 0',
            module,
            module.basis(),
            lambda b: module.apply_dG(module.apply_dG(module.element(b))).is_zero(),
            window=f't-weight ≤ {weight_cap}',
            fatal=True,
        )
    )
    report.checks.append(check_PQ_zero(datum, weight_cap, ops=ops))

    table = datum.product
    if table is not None:
        report.checks += [
            IdentityCheck('product associative', *_as_result(table.associativity_witnesses())),
            IdentityCheck('product graded-commutative', *_as_result(table.commutativity_witnesses())),
            IdentityCheck('product unit', *_as_result(table.unit_witnesses())),
            IdentityCheck(
                'product: d is a derivation', *_as_result(table.derivation_witnesses(c.d, 1))
            ),
        ]
        if datum.abelian:
            for j, i_j in enumerate(contractions):
                g = _generator(j, datum.rank)
                report.checks.append(
                    IdentityCheck(
                        f'product: {g} is a derivation',
                        *_as_result(table.derivation_witnesses(i_j, i_j.degree)),
                    )
                )
        else:
            report.checks.append(
                IdentityCheck('product: abelian action', False, [f't-degrees {list(datum.t_degrees)}'])
            )
        if not report.product_ok:
            logg.warning('product checks failed; product operations are disabled for this datum')

    logg.info(
        '    finished',
        time=start,
        deep=f'{sum(map(bool, report.checks))}/{len(report.checks)} checks passed',
    )
    return report


def _as_result(witnesses: List[str]):
    return not witnesses, witnesses
