"""Minimal Hirsch–Brown models of equivariant cohomology, in exact arithmetic."""
# some technical stuff
import sys
from ._utils import pkg_version, check_versions

try:
    from setuptools_scm import get_version
    __version__ = get_version(root='..', relative_to=__file__)
    del get_version
except (LookupError, ImportError):
    try:
        __version__ = str(pkg_version(__name__))
    except ImportError:  # not installed, e.g. run from a source checkout
        __version__ = '0+unknown'

check_versions()
del pkg_version, check_versions

# the actual API
from ._settings import settings, Verbosity  # start with settings as several modules are using it
from . import linalg as la
from . import hodge
from . import equivariant as eq
from . import hirsch_brown as hb
from . import fixed_points as fp
from . import datasets, logging
from ._report import IdentityCheck, Report
from .readwrite import read_datum, parse_datum, write_datum
from .equivariant import EquivariantDatum
from .hirsch_brown import HirschBrown

# has to be done at the end, after everything has been imported
sys.modules.update({f'{__name__}.{m}': globals()[m] for m in ['la', 'eq', 'hb', 'fp']})
del sys
