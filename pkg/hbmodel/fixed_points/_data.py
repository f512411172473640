from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .._errors import EulerCharacteristicMismatch, MissingEuler, RepeatedMomentValues
from ..linalg import as_fraction, fstr
from ..linalg._rational import RationalLike


class FixedPointComponent(NamedTuple):
    """A fixed component: its moment value, multiplicity `r + 1` and Euler class."""

    value: Fraction
    multiplicity: int = 1
    euler: Optional[Fraction] = None


class FixedPointData:
    """\
    Fixed-point data of a circle action on CP^n.

    Parameters
    ----------
    n
        Complex dimension of the manifold.
    components
        `(value, multiplicity, euler)` triples; `multiplicity` defaults to 1
        and `euler` to `None`.
    """

    def __init__(self, n: int, components: Sequence[Sequence]):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError(f'n must be a nonnegative integer, not {n!r}.')
        self.n = n
        comps = []
        for c in components:
            c = tuple(c)
            value = c[0]
            multiplicity = c[1] if len(c) > 1 else 1
            euler = c[2] if len(c) > 2 else None
            if isinstance(multiplicity, bool) or not isinstance(multiplicity, int) or multiplicity < 1:
                raise ValueError(f'Multiplicities are positive integers, not {multiplicity!r}.')
            if euler is not None:
                euler = as_fraction(euler)
                if not euler:
                    raise ValueError('Euler classes of fixed components are nonzero.')
            comps.append(FixedPointComponent(as_fraction(value), multiplicity, euler))
        self.components: Tuple[FixedPointComponent, ...] = tuple(comps)

    @classmethod
    def isolated(
        cls, values: Sequence[RationalLike], euler: Optional[Sequence[RationalLike]] = None
    ) -> 'FixedPointData':
        """`n + 1` isolated fixed points with the given moment values."""
        if euler is not None and len(euler) != len(values):
            raise ValueError(f'{len(values)} moment values but {len(euler)} Euler classes.')
        euler = list(euler) if euler is not None else [None] * len(values)
        return cls(len(values) - 1, [(v, 1, e) for v, e in zip(values, euler)])

    @property
    def expanded(self) -> List[Fraction]:
        """Moment values `μ_1, …, μ_{n+1}` repeated by multiplicity."""
        return [c.value for c in self.components for _ in range(c.multiplicity)]

    @property
    def values(self) -> List[Fraction]:
        return [c.value for c in self.components]

    @property
    def euler(self) -> List[Optional[Fraction]]:
        return [c.euler for c in self.components]

    def check_euler_characteristic(self):
        total = sum(c.multiplicity for c in self.components)
        if total != self.n + 1:
            raise EulerCharacteristicMismatch(
                f'Multiplicities add up to {total}, but CP^{self.n} has Euler characteristic {self.n + 1}.'
            )

    @property
    def is_isolated(self) -> bool:
        """Every fixed point has multiplicity one and the moment values are distinct."""
        values = self.expanded
        return len(set(values)) == len(values)

    def require_isolated(self):
        if not self.is_isolated:
            raise RepeatedMomentValues(
                'This needs isolated fixed points with pairwise distinct moment values, '
                f'got {", ".join(fstr(v) for v in self.expanded)}.'
            )

    def require_euler(self):
        if any(e is None for e in self.euler):
            raise MissingEuler('Every fixed point needs its Euler class.')

    def scaled(self, lam: RationalLike) -> 'FixedPointData':
        lam = as_fraction(lam)
        return FixedPointData(self.n, [(c.value * lam, c.multiplicity, c.euler) for c in self.components])

    def shifted(self, shift: RationalLike) -> 'FixedPointData':
        shift = as_fraction(shift)
        return FixedPointData(self.n, [(c.value + shift, c.multiplicity, c.euler) for c in self.components])

    def __eq__(self, other):
        if not isinstance(other, FixedPointData):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __repr__(self):
        comps = ', '.join(
            fstr(c.value)
            + (f'^{c.multiplicity}' if c.multiplicity > 1 else '')
            + (f' (ε={fstr(c.euler)})' if c.euler is not None else '')
            for c in self.components
        )
        return f'FixedPointData(n={self.n}: {comps})'


class CoefficientVector(tuple):
    """`(c_1, …, c_{n+1})` with `c_i = (−1)^{i+1} σ_i`."""

    def __new__(cls, values: Sequence[RationalLike]):
        return super().__new__(cls, (as_fraction(v) for v in values))

    @property
    def n(self) -> int:
        return len(self) - 1

    def c(self, i: int) -> Fraction:
        """`c_i`, indexed from 1."""
        if not 1 <= i <= len(self):
            raise IndexError(f'c_{i} outside c_1..c_{len(self)}.')
        return self[i - 1]

    def __repr__(self):
        return f'CoefficientVector({", ".join(fstr(v) for v in self)})'
