"""Equivariant data, the truncated Cartan model and its operators.
"""
from ._datum import Contraction, EquivariantDatum, ProductTable
from ._module import BasisElement, ModuleElement, TruncatedModule, render_monomial
from ._operators import CartanOperators, apply_dG, check_PQ_zero, identity_check, neumann_series
from ._validate import ValidationReport, validate
from ._variants import conjugate, direct_sum, random_variants, tensor
