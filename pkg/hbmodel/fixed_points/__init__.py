"""Fixed-point calculus for Hamiltonian circle actions on CP^n.
"""
from ._data import CoefficientVector, FixedPointComponent, FixedPointData
from ._symmetric import binomial, complete_homogeneous, elementary_symmetric, lagrange_sum
from ._calculus import (
    MomentPower,
    averages_from_coefficients,
    coefficients_from_averages,
    coefficients_from_moments,
    format_presentation,
    format_relation,
    homogeneity_check,
    localization_classes,
    moment_average,
    moment_powers,
    moment_powers_df,
    recursion_check,
    relation_polynomial,
    relation_report,
    volume_from_data,
    volume_shift_invariance,
    volumes,
)
from ._cp2 import cp2_data, cp2_weighted
