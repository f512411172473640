from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

import pandas as pd
import sympy

from .. import logging as logg
from .._errors import IdentityFailed, InconsistentFixedPointData
from .._report import IdentityCheck, Report
from ..linalg import as_fraction, fstr
from ..linalg._rational import RationalLike
from ._data import CoefficientVector, FixedPointData
from ._symmetric import _prod, binomial, complete_homogeneous, elementary_symmetric, lagrange_sum

W, T = sympy.symbols('w t')


def _sym(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def relation_polynomial(c: Sequence[RationalLike]) -> sympy.Expr:
    """`w^{n+1} − Σ_i c_i w^{n+1−i} t^i` in ℚ[w, t]."""
    c = CoefficientVector(c)
    top = len(c)
    return sympy.expand(W ** top - sum(_sym(ci) * W ** (top - i) * T ** i for i, ci in enumerate(c, 1)))


def _monomial(w_exp: int, t_exp: int) -> str:
    parts = []
    for name, k in (('w', w_exp), ('t', t_exp)):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f'{name}^{k}')
    return '*'.join(parts) or '1'


def _format_sum(terms) -> str:
    """Render `(coefficient, monomial)` pairs as `a*m + b*m'`; zero terms are skipped."""
    out = ''
    for coeff, mono in terms:
        if not coeff:
            continue
        body = mono if abs(coeff) == 1 else f'{fstr(abs(coeff))}*{mono}'
        if not out:
            out = body if coeff > 0 else f'-{body}'
        else:
            out += f' + {body}' if coeff > 0 else f' - {body}'
    return out or '0'


def format_relation(c: Sequence[RationalLike]) -> str:
    """`w^3 = 21*w*t^2 + 20*t^3`."""
    c = CoefficientVector(c)
    top = len(c)
    rhs = _format_sum((ci, _monomial(top - i, i)) for i, ci in enumerate(c, 1))
    return f'{_monomial(top, 0)} = {rhs}'


def format_presentation(c: Sequence[RationalLike]) -> str:
    """`Q[w, t]/(w^3 - 21*w*t^2 - 20*t^3)`."""
    c = CoefficientVector(c)
    top = len(c)
    terms = [(Fraction(1), _monomial(top, 0))] + [(-ci, _monomial(top - i, i)) for i, ci in enumerate(c, 1)]
    return f'Q[w, t]/({_format_sum(terms)})'


def coefficients_from_moments(data: FixedPointData) -> CoefficientVector:
    """\
    Structure coefficients `c_i = (−1)^{i+1} σ_i(μ)` of the relation
    `w^{n+1} = Σ c_i w^{n+1−i} t^i`.

    The relation is checked to vanish at `w = μ_j t` for every fixed point.
    """
    data.check_euler_characteristic()
    mu = data.expanded
    c = CoefficientVector([(-1) ** (i + 1) * elementary_symmetric(mu, i) for i in range(1, data.n + 2)])
    poly = relation_polynomial(c)
    for m in mu:
        if sympy.expand(poly.subs(W, _sym(m) * T)) != 0:
            raise IdentityFailed('relation vanishes at every fixed point', f'w = {fstr(m)}*t')
    return c


def moment_average(data: FixedPointData, j: int) -> Fraction:
    """`H(μ^j) = h_j(μ) / binom(n+j, j)`."""
    return complete_homogeneous(data.expanded, j) / binomial(data.n + j, j)


class MomentPower(NamedTuple):
    j: int
    lagrange_sum: Fraction
    complete_homogeneous: Fraction
    average: Fraction


def moment_powers(data: FixedPointData, j_max: int = 3) -> List[MomentPower]:
    """\
    `H(μ^j)` for `j = 0, …, j_max`, evaluated two ways.

    `binom(n+j, j)·H(μ^j) = h_j(μ)` is compared with the sum
    `Σ_i μ_i^{n+j} / ∏_{k≠i} (μ_i − μ_k)` over isolated fixed points.
    """
    data.require_isolated()
    mu = data.expanded
    out = []
    for j in range(j_max + 1):
        lagrange = lagrange_sum(mu, data.n + j)
        h = complete_homogeneous(mu, j)
        if lagrange != h:
            raise IdentityFailed('moment sum over fixed points equals h_j', f'j = {j}')
        out.append(MomentPower(j, lagrange, h, h / binomial(data.n + j, j)))
    return out


def moment_powers_df(powers: Sequence[MomentPower]) -> pd.DataFrame:
    return pd.DataFrame(
        [(p.j, fstr(p.lagrange_sum), fstr(p.complete_homogeneous), fstr(p.average)) for p in powers],
        columns=['j', 'lagrange_sum', 'h_j', 'H(mu^j)'],
    ).set_index('j')


def recursion_check(data: FixedPointData, j_max: int = 4) -> Report:
    """\
    Check the fibre-integration recursion for `H(μ^j)`.

    Verified for `0 ≤ j ≤ j_max` in two equivalent forms:
    `h_{1+j} = Σ_i c_i h_{1+j−i}` and
    `binom(n+1+j, 1+j) H(μ^{1+j}) = Σ_i c_i binom(n+1+j−i, 1+j−i) H(μ^{1+j−i})`,
    together with `c_1 = (n+1) H(μ)` and
    `c_2 = binom(n+2, 2) H(μ²) − (n+1)² H(μ)²`.
    """
    n = data.n
    mu = data.expanded
    c = CoefficientVector([(-1) ** (i + 1) * elementary_symmetric(mu, i) for i in range(1, len(mu) + 1)])
    h = [complete_homogeneous(mu, k) for k in range(j_max + 2)]
    avg = [h[k] / binomial(n + k, k) for k in range(j_max + 2)]
    newton, binomial_form = [], []
    for j in range(j_max + 1):
        terms = range(1, min(1 + j, len(c)) + 1)
        if h[1 + j] != sum((c.c(i) * h[1 + j - i] for i in terms), Fraction(0)):
            newton.append(f'j = {j}')
        lhs = binomial(n + 1 + j, 1 + j) * avg[1 + j]
        rhs = sum((c.c(i) * binomial(n + 1 + j - i, 1 + j - i) * avg[1 + j - i] for i in terms), Fraction(0))
        if lhs != rhs:
            binomial_form.append(f'j = {j}')
    report = Report('recursion')
    report.add('n', n).add('j_max', j_max).add('c', c)
    report.add_check(IdentityCheck('h_{1+j} = Σ c_i h_{1+j−i}', not newton, newton))
    report.add_check(IdentityCheck(
        'binom(n+1+j, 1+j) H(μ^{1+j}) = Σ c_i binom(n+1+j−i, 1+j−i) H(μ^{1+j−i})',
        not binomial_form, binomial_form,
    ))
    report.add_check(IdentityCheck('c_1 = (n+1) H(μ)', c.c(1) == (n + 1) * avg[1]))
    if len(c) >= 2 and j_max >= 1:
        c2 = binomial(n + 2, 2) * avg[2] - (n + 1) ** 2 * avg[1] ** 2
        report.add_check(IdentityCheck('c_2 = binom(n+2, 2) H(μ²) − (n+1)² H(μ)²', c.c(2) == c2))
    return report


def volumes(data: FixedPointData) -> List[Fraction]:
    """`v_i = ∏_{j≠i} (μ_i − μ_j) / ε_i` for every isolated fixed point."""
    data.require_isolated()
    data.require_euler()
    mu = data.expanded
    return [
        _prod(m - other for k, other in enumerate(mu) if k != i) / e
        for i, (m, e) in enumerate(zip(mu, data.euler))
    ]


def volume_from_data(data: FixedPointData) -> Fraction:
    """\
    Symplectic volume `∫ ω^n` from isolated fixed points.

    Every fixed point gives the value `∏_{j≠i} (μ_i − μ_j) / ε_i`; they must agree.
    """
    v = volumes(data)
    if len(set(v)) != 1:
        raise InconsistentFixedPointData(v)
    return v[0]


def coefficients_from_averages(n: int, averages: Sequence[RationalLike]) -> CoefficientVector:
    """\
    Solve the fibre-integration recursion for `c_1, …, c_{n+1}`.

    Parameters
    ----------
    n
        Complex dimension.
    averages
        `H(μ^j)` for `j = 0, …, n+1`; `averages[0]` must be 1.
    """
    avg = [as_fraction(a) for a in averages]
    if len(avg) < n + 2:
        raise ValueError(f'Need H(μ^j) for j = 0..{n + 1}, got {len(avg)} values.')
    if avg[0] != 1:
        raise ValueError(f'H(1) is 1, not {fstr(avg[0])}.')
    c: List[Fraction] = []
    for j in range(n + 1):
        known = sum(
            (c[i - 1] * binomial(n + 1 + j - i, 1 + j - i) * avg[1 + j - i] for i in range(1, j + 1)),
            Fraction(0),
        )
        c.append(binomial(n + 1 + j, 1 + j) * avg[1 + j] - known)
    return CoefficientVector(c)


def averages_from_coefficients(n: int, c: Sequence[RationalLike], j_max: int) -> List[Fraction]:
    """`H(μ^j)` for `j = 0, …, j_max` from `c_1, …, c_{n+1}`."""
    c = CoefficientVector(c)
    if len(c) != n + 1:
        raise ValueError(f'Need {n + 1} coefficients, got {len(c)}.')
    h = [Fraction(1)]
    for k in range(1, j_max + 1):
        h.append(sum((c.c(i) * h[k - i] for i in range(1, min(k, n + 1) + 1)), Fraction(0)))
    return [hk / binomial(n + k, k) for k, hk in enumerate(h)]


def localization_classes(data: FixedPointData) -> List[List[sympy.Expr]]:
    """\
    Restrictions of `U_i = ∏_{j≠i} (w − μ_j t)` to every fixed point.

    Entry `[i][k]` is `U_i` at `w = μ_k t`; it equals
    `∏_{j≠i} (μ_i − μ_j) tⁿ` for `k = i` and vanishes otherwise.
    """
    mu = data.expanded
    out = []
    for i in range(len(mu)):
        u = _prod_sym(W - _sym(m) * T for k, m in enumerate(mu) if k != i)
        row = [sympy.expand(u.subs(W, _sym(m) * T)) for m in mu]
        expected = _sym(_prod(mu[i] - m for k, m in enumerate(mu) if k != i)) * T ** data.n
        if sympy.expand(row[i] - expected) != 0 or any(row[k] != 0 for k in range(len(mu)) if k != i):
            raise IdentityFailed('localized classes restrict to a diagonal', f'U_{i + 1}')
        out.append(row)
    return out


def _prod_sym(factors) -> sympy.Expr:
    out = sympy.Integer(1)
    for f in factors:
        out = out * f
    return out


def homogeneity_check(data: FixedPointData, lam: RationalLike) -> List[IdentityCheck]:
    """\
    `μ ↦ λμ` multiplies `c_i` by `λ^i` and, with Euler classes kept, the
    volume by `λⁿ`.
    """
    lam = as_fraction(lam)
    c = coefficients_from_moments(data)
    scaled = data.scaled(lam)
    cs = coefficients_from_moments(scaled)
    witnesses = [f'c_{i}' for i in range(1, len(c) + 1) if cs.c(i) != lam ** i * c.c(i)]
    checks = [IdentityCheck('c_i(λμ) = λ^i c_i(μ)', not witnesses, witnesses)]
    if data.is_isolated and all(e is not None for e in data.euler) and lam:
        ok = volume_from_data(scaled) == lam ** data.n * volume_from_data(data)
        checks.append(IdentityCheck('volume(λμ) = λⁿ volume(μ)', ok, [] if ok else [fstr(lam)]))
    return checks


def volume_shift_invariance(data: FixedPointData, shift: RationalLike) -> IdentityCheck:
    ok = volume_from_data(data.shifted(shift)) == volume_from_data(data)
    return IdentityCheck('volume(μ + s) = volume(μ)', ok, [] if ok else [fstr(as_fraction(shift))])


def relation_report(data: FixedPointData, j_max: Optional[int] = None) -> Report:
    """\
    Ring presentation of equivariant cohomology with all consistency checks.

    Reports the presentation `Q[w, t]/(w^{n+1} − Σ c_i w^{n+1−i} t^i)` and
    checks the relation at every fixed point, the recursion, and, for
    isolated fixed points, the moment sums and the volume.
    """
    j_max = data.n + 2 if j_max is None else j_max
    start = logg.info(f'computing relation for {data!r}')
    c = coefficients_from_moments(data)
    mu = data.expanded
    report = Report('relation')
    report.add('n', data.n).add('moment values', mu).add('c', c)
    report.add('relation', format_relation(c)).add('presentation', format_presentation(c))
    poly = relation_polynomial(c)
    report.section('checks')
    for k, m in enumerate(mu, 1):
        ok = sympy.expand(poly.subs(W, _sym(m) * T)) == 0
        report.add_check(IdentityCheck(f'relation vanishes at w = μ_{k} t', ok))
    report.extend_checks(recursion_check(data, j_max).checks)
    if data.is_isolated:
        witnesses = [f'd = {d}' for d in range(data.n) if lagrange_sum(mu, d) != 0]
        report.add_check(IdentityCheck('Σ μ_i^d / ∏ (μ_i − μ_k) = 0 for d < n', not witnesses, witnesses))
        witnesses = [
            f'j = {j}'
            for j in range(j_max + 1)
            if lagrange_sum(mu, data.n + j) != complete_homogeneous(mu, j)
        ]
        report.add_check(IdentityCheck('moment sums equal h_j', not witnesses, witnesses))
        if not witnesses:
            report.section('moments')
            for p in moment_powers(data, j_max):
                report.add(f'H(μ^{p.j})', p.average)
        if all(e is not None for e in data.euler):
            v = volumes(data)
            report.section('volume')
            report.add('per fixed point', v)
            consistent = len(set(v)) == 1
            report.add_check(IdentityCheck('volume agrees at every fixed point', consistent))
            if consistent:
                report.add('A', v[0])
    logg.info('    finished', time=start, deep=format_relation(c))
    return report
