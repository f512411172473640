import pytest

import hbmodel

hbmodel.settings.verbosity = "hint"


# The shipped data are built once per session; data, modules and models are
# never mutated, so tests share them.
@pytest.fixture(scope="session")
def _shipped():
    from hbmodel import datasets

    return {name: datasets.load(name) for name in datasets.available() if name != 'poly-rot-2-broken'}


@pytest.fixture
def shipped(_shipped):
    return _shipped


@pytest.fixture
def poly_rot_2(_shipped):
    return _shipped['poly-rot-2']


@pytest.fixture
def free_rotation(_shipped):
    return _shipped['free-rotation']


@pytest.fixture
def two_torus(_shipped):
    return _shipped['two-torus-rotation']


@pytest.fixture
def su2_free(_shipped):
    return _shipped['su2-free']


@pytest.fixture
def trivial_action(_shipped):
    return _shipped['poly-rot-2-trivial']


@pytest.fixture(scope="session")
def _poly_rot_2_model(_shipped):
    return hbmodel.HirschBrown(_shipped['poly-rot-2'], 10)


@pytest.fixture
def poly_rot_2_model(_poly_rot_2_model):
    return _poly_rot_2_model
