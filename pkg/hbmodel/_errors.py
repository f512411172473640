"""Exceptions raised by hbmodel.

All of them derive from a builtin exception so that callers can catch either
the specific class or the builtin one.
"""
from typing import Any, Optional, Sequence


class ParseError(ValueError):
    """A datum document could not be parsed."""

    def __init__(self, msg: str, *, line: Optional[int] = None, key: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f'line {line}')
        if key is not None:
            where.append(f'key {key!r}')
        super().__init__(f'{msg} ({", ".join(where)})' if where else msg)
        self.line = line
        self.key = key


class InvalidComplex(ValueError):
    """A fatal structural check (d² = 0, d_G² = 0, …) failed."""

    def __init__(self, check: str, witnesses: Sequence[str]):
        witnesses = list(witnesses)
        super().__init__(
            f'{check} fails at basis element {witnesses[0]}'
            + (f' (also at {", ".join(witnesses[1:])})' if len(witnesses) > 1 else '')
            if witnesses
            else f'{check} fails'
        )
        self.check = check
        self.witness = witnesses[0] if witnesses else None
        self.witnesses = witnesses


class InnerNotPositiveDefinite(ValueError):
    pass


class DegreeOutOfRange(IndexError):
    pass


class IdentityFailed(AssertionError):
    """An exact operator identity did not hold."""

    def __init__(self, identity: str, witness: Any = None):
        msg = identity if witness is None else f'{identity} fails at {witness}'
        super().__init__(msg)
        self.identity = identity
        self.witness = witness


class TheoremMismatch(IdentityFailed):
    """The two independent computations of d_HB disagree."""


class NotCEF(ValueError):
    pass


class NotAbelian(ValueError):
    pass


class ProductUnavailable(ValueError):
    pass


class NoWitnessInWindow(ValueError):
    pass


class EulerCharacteristicMismatch(ValueError):
    pass


class RepeatedMomentValues(ValueError):
    pass


class MissingEuler(ValueError):
    pass


class InconsistentFixedPointData(ValueError):
    def __init__(self, volumes: Sequence[Any]):
        from .linalg import fstr

        super().__init__(
            'fixed point data give different volumes: '
            + ', '.join(fstr(v) for v in volumes)
        )
        self.volumes = list(volumes)


class InvalidWeights(ValueError):
    pass
