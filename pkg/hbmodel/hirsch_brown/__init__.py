"""The minimal Hirsch–Brown model, its cohomology and its identity suite.
"""
from ._model import HarmonicBasisElement, HirschBrown, MinimalModel, minimal_model
from ._cohomology import (
    CohomologyTable,
    cohomology,
    cohomology_cartan,
    cohomology_minimal,
    free_module_dims,
)
from ._identities import (
    chain_map_check,
    check_acyclic_complement,
    check_dbar_trichotomy,
    dbar_squared_zero,
    homotopy_identities,
    random_elements,
    random_transfer_check,
    transfer_identity,
    triple_product_check,
)
