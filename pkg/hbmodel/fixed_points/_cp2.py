from fractions import Fraction

from .._errors import InvalidWeights
from .._report import IdentityCheck, Report
from ..linalg import as_fraction
from ..linalg._rational import RationalLike
from ._calculus import coefficients_from_moments, format_relation, moment_average, volume_from_data
from ._data import FixedPointData


def cp2_data(a: int, b: int, s: RationalLike) -> FixedPointData:
    """\
    Fixed points of `z[z₀, z₁, z₂] = [z₀, z^a z₁, z^b z₂]` on CP².

    The moment map is normalised to mean zero and scaled by `s`, the square
    root of the volume.
    """
    for name, x in (('a', a), ('b', b)):
        if isinstance(x, bool) or not isinstance(x, int):
            raise InvalidWeights(f'{name} must be an integer, not {x!r}.')
    if not 0 < a < b:
        raise InvalidWeights(f'Weights need 0 < a < b, got a = {a}, b = {b}.')
    s = as_fraction(s)
    if s <= 0:
        raise InvalidWeights(f's must be positive, not {s}.')
    mu = [s / 3 * v for v in (-(a + b), 2 * a - b, 2 * b - a)]
    euler = [a * b, a * (a - b), b * (b - a)]
    return FixedPointData.isolated(mu, euler)


def cp2_weighted(a: int, b: int, s: RationalLike) -> Report:
    """\
    Coefficients of the weighted circle action on CP² with closed forms.

    Computes `A = ∫ω²` from the fixed points, `c` from the moment values, and
    checks `c_1 = 0`, `c_2 = (A/3)(a² − ab + b²)`,
    `c_3 = (A·s/27)(2a³ − 3a²b − 3ab² + 2b³) = −(A·s/27)(a+b)(2a−b)(2b−a)`,
    `6 H(μ²) = c_2` and `10 H(μ³) = c_3`. `A = s²` is never square-rooted.
    """
    data = cp2_data(a, b, s)
    s = as_fraction(s)
    area = volume_from_data(data)
    c = coefficients_from_moments(data)
    closed_c2 = area / 3 * (a * a - a * b + b * b)
    closed_c3 = area * s / 27 * (2 * a ** 3 - 3 * a * a * b - 3 * a * b * b + 2 * b ** 3)
    factored_c3 = -area * s / 27 * (a + b) * (2 * a - b) * (2 * b - a)
    report = Report('weighted CP2')
    report.add('a', a).add('b', b).add('s', s)
    report.add('moment values', data.expanded).add('euler', data.euler)
    report.add('A', area).add('c', c).add('relation', format_relation(c))
    report.section('checks')
    report.extend_checks([
        IdentityCheck('A = s^2', area == s * s),
        IdentityCheck('H(μ) = 0', moment_average(data, 1) == 0),
        IdentityCheck('c_1 = 0', c.c(1) == 0),
        IdentityCheck('c_2 = (A/3)(a^2 − ab + b^2)', c.c(2) == closed_c2),
        IdentityCheck('c_3 = (A·s/27)(2a^3 − 3a^2b − 3ab^2 + 2b^3)', c.c(3) == closed_c3),
        IdentityCheck('c_3 = −(A·s/27)(a+b)(2a−b)(2b−a)', c.c(3) == factored_c3),
        IdentityCheck('6 H(μ^2) = c_2', 6 * moment_average(data, 2) == c.c(2)),
        IdentityCheck('10 H(μ^3) = c_3', 10 * moment_average(data, 3) == c.c(3)),
    ])
    return report
