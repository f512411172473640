from pathlib import Path
from typing import List

from natsort import natsorted

from .. import logging as logg
from .._settings import settings
from ..equivariant import EquivariantDatum
from ..readwrite import read_datum

HERE = Path(__file__).parent


def _path(name: str) -> Path:
    stem = name.replace('-', '_')
    for directory in (settings.datasetdir, HERE):
        path = Path(directory) / f'{stem}.json'
        if path.is_file():
            return path
    raise ValueError(f'No datum called {name!r}. Choose from {available()}.')


def available() -> List[str]:
    """Names of the data found in the dataset directories."""
    stems = {p.stem for d in {Path(settings.datasetdir), HERE} if d.is_dir() for p in d.glob('*.json')}
    return natsorted(s.replace('_', '-') for s in stems)


def load(name: str, *, validate: bool = True) -> EquivariantDatum:
    """\
    Load a datum by name.

    Looks in :attr:`~hbmodel._settings.HBConfig.datasetdir` first, then among
    the shipped data. Hyphens and underscores in `name` are interchangeable.
    """
    path = _path(name)
    logg.debug(f'loading {name} from {path}')
    return read_datum(path, validate=validate)


def poly_rot_2() -> EquivariantDatum:
    """\
    Polynomial model of a circle rotation.

    Bases `{1, μ, μ²}`, `{dμ, μdμ}`, `{ω, μω}` with `dμ^k = kμ^{k−1}dμ`, one
    contraction of t-degree 2 sending `ω ↦ dμ`, `μω ↦ μdμ`, and the
    truncated polynomial product. Harmonic dimensions `(1, 0, 2)`; `d_HB = 0`.
    """
    return load('poly-rot-2')


def poly_rot_2_trivial() -> EquivariantDatum:
    """The complex of :func:`poly_rot_2` with the zero contraction."""
    return load('poly-rot-2-trivial')


def poly_rot_2_broken() -> EquivariantDatum:
    """\
    :func:`poly_rot_2` with `i(dμ) = μ` added, which breaks `d i + i d = 0`.

    Returned without validation.
    """
    return load('poly-rot-2-broken', validate=False)


def free_rotation() -> EquivariantDatum:
    """Free circle action on a circle: `{1}`, `{dθ}`, `i(dθ) = 1`."""
    return load('free-rotation')


def two_torus_rotation() -> EquivariantDatum:
    """Rotation of the first factor of the 2-torus."""
    return load('two-torus-rotation')


def su2_free() -> EquivariantDatum:
    """Free SU(2) model: `{1}`, `{x₃}` with one generator of degree 4, `x₃ ↦ 1`."""
    return load('su2-free')
