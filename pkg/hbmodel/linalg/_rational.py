"""Exact rationals and the vectors built from them.

`fractions.Fraction` keeps numerator and denominator coprime with a positive
denominator after every operation, so it is used as the Rational type as is.
Vectors are one-dimensional numpy object arrays of Fractions.
"""
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

import numpy as np

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError('booleans are not rationals')
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f'Cannot use {x!r} of type {type(x).__name__} as an exact rational.')


def parse_rational(s: str) -> Fraction:
    """Parse `'p'` or `'p/q'`; `q` has to be positive."""
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise ValueError(f'{s!r} is not a rational of the form p or p/q.')
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f'{s!r} has a zero denominator.')
    return Fraction(int(num), int(den) if den is not None else 1)


def fstr(x: RationalLike) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f'{x.numerator}/{x.denominator}'


def vector(values: Iterable[RationalLike]) -> np.ndarray:
    values = [as_fraction(v) for v in values]
    out = np.empty(len(values), dtype=object)
    out[:] = values
    return out


def zeros(n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out[:] = [Fraction(0)] * n
    return out


def unit_vector(n: int, k: int) -> np.ndarray:
    out = zeros(n)
    out[k] = Fraction(1)
    return out


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def vectors_equal(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def vstr(v: Sequence) -> str:
    return '(' + ', '.join(fstr(x) for x in v) + ')'
