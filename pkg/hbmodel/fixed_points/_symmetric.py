"""Symmetric functions of moment values, by direct enumeration.
"""
from fractions import Fraction
from functools import reduce
from itertools import combinations, combinations_with_replacement
from operator import mul
from typing import Iterable, Sequence

from scipy.special import comb

from ..linalg import as_fraction
from ..linalg._rational import RationalLike


def _prod(values: Iterable[Fraction]) -> Fraction:
    return reduce(mul, values, Fraction(1))


def elementary_symmetric(vals: Sequence[RationalLike], i: int) -> Fraction:
    """`σ_i`, the sum over all `i`-element subsets of products."""
    if i < 0:
        raise ValueError(f'Degree must be ≥ 0, not {i}.')
    vals = [as_fraction(v) for v in vals]
    return sum((_prod(c) for c in combinations(vals, i)), Fraction(0))


def complete_homogeneous(vals: Sequence[RationalLike], j: int) -> Fraction:
    """`h_j`, the sum over all size-`j` multisets of products."""
    if j < 0:
        raise ValueError(f'Degree must be ≥ 0, not {j}.')
    vals = [as_fraction(v) for v in vals]
    return sum((_prod(c) for c in combinations_with_replacement(vals, j)), Fraction(0))


def lagrange_sum(vals: Sequence[RationalLike], exponent: int) -> Fraction:
    """`Σ_i μ_i^exponent / ∏_{k≠i} (μ_i − μ_k)` for pairwise distinct values."""
    vals = [as_fraction(v) for v in vals]
    return sum(
        (
            v ** exponent / _prod(v - w for k, w in enumerate(vals) if k != i)
            for i, v in enumerate(vals)
        ),
        Fraction(0),
    )


def binomial(n: int, k: int) -> int:
    return int(comb(n, k, exact=True))
