"""Hodge theory on finite-dimensional graded complexes.
"""
from ._complex import GradedComplex, betti_numbers, render_vector
from ._hodge import HodgeData, codifferential, hodge_data, decompose
