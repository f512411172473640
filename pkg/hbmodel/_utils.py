"""Utility functions and classes
"""
from textwrap import dedent
from typing import Union

from numpy import random
from packaging import version

from . import logging as logg


# e.g. https://scikit-learn.org/stable/modules/generated/sklearn.decomposition.PCA.html
AnyRandom = Union[None, int, random.RandomState]


def pkg_version(package):
    try:
        from importlib.metadata import version as v
    except ImportError:  # < Python 3.8: Use backport module
        from importlib_metadata import version as v
    return version.parse(v(package))


def check_versions():
    numpy_version = pkg_version("numpy")
    sympy_version = pkg_version("sympy")

    if numpy_version < version.parse('1.17.0'):
        from . import __version__

        raise ImportError(
            f'hbmodel {__version__} needs numpy version >=1.17, '
            f'not {numpy_version}.\nRun `pip install numpy -U`.'
        )

    if sympy_version < version.parse('1.5'):
        from . import __version__

        # make this a warning, not an error
        # only the rendering of ring presentations depends on it
        logg.warning(
            f'hbmodel {__version__} needs sympy version >=1.5, not {sympy_version}.'
        )


def _doc_params(**kwds):
    """\
    Docstrings should start with "\" in the first line for proper formatting.
    """

    def dec(obj):
        obj.__orig_doc__ = obj.__doc__
        obj.__doc__ = dedent(obj.__doc__).format_map(kwds)
        return obj

    return dec
