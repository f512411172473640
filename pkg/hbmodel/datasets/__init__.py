"""Shipped equivariant data.
"""
from ._datasets import (
    available,
    free_rotation,
    load,
    poly_rot_2,
    poly_rot_2_broken,
    poly_rot_2_trivial,
    su2_free,
    two_torus_rotation,
)
