"""Exact rational linear algebra.
"""
from ._rational import (
    Rational,
    as_fraction,
    parse_rational,
    fstr,
    vector,
    zeros,
    unit_vector,
    is_zero_vector,
    vectors_equal,
    vstr,
)
from ._matrix import RatMatrix
from ._reduce import (
    KernelImage,
    rank_kernel_image,
    rank,
    rank_of_vectors,
    solve,
    inverse,
    ldl_check,
    orthogonal_project,
)
