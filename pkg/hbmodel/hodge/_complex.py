from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .._errors import InvalidComplex
from ..linalg import RatMatrix, fstr, is_zero_vector, ldl_check, unit_vector, zeros


def render_vector(labels: Sequence[str], v: Sequence) -> str:
    """`2*mu - dmu`-style rendering of a coefficient vector."""
    terms = []
    for label, x in zip(labels, v):
        if not x:
            continue
        if x == 1:
            terms.append(f'+ {label}')
        elif x == -1:
            terms.append(f'- {label}')
        elif x < 0:
            terms.append(f'- {fstr(-x)}*{label}')
        else:
            terms.append(f'+ {fstr(x)}*{label}')
    if not terms:
        return '0'
    out = ' '.join(terms)
    return out[2:] if out.startswith('+ ') else '-' + out[2:]


class GradedComplex:
    """\
    Finite-dimensional cochain complex over the rationals with an inner product.

    Stands in for the complex of invariant forms.

    Parameters
    ----------
    labels
        `labels[m]` are the basis labels of `C^m`, for `m = 0, …, top`.
        Empty degrees are allowed.
    differential
        Mapping `m -> d_m`, a matrix of shape `(dim C^{m+1}, dim C^m)`.
        Missing degrees are zero.
    inner
        Mapping `m -> inner_m`, symmetric positive definite of shape
        `(dim C^m, dim C^m)`. Missing degrees use the identity.
    check
        Verify `d² = 0`, the inner products and label uniqueness.
    """

    def __init__(
        self,
        labels: Sequence[Sequence[str]],
        differential: Optional[Mapping[int, RatMatrix]] = None,
        inner: Optional[Mapping[int, RatMatrix]] = None,
        *,
        check: bool = True,
    ):
        self._labels: Tuple[Tuple[str, ...], ...] = tuple(tuple(ls) for ls in labels)
        differential = dict(differential or {})
        inner = dict(inner or {})
        for m in list(differential) + list(inner):
            if not 0 <= m <= self.top:
                raise ValueError(f'Operator given in degree {m} outside 0..{self.top}.')
        self._d = tuple(
            differential.get(m, RatMatrix.zeros(self.dim(m + 1), self.dim(m)))
            for m in self.degrees
        )
        self._inner = tuple(
            inner.get(m, RatMatrix.identity(self.dim(m))) for m in self.degrees
        )
        for m in self.degrees:
            if self._d[m].shape != (self.dim(m + 1), self.dim(m)):
                raise ValueError(
                    f'd_{m} has shape {self._d[m].shape}, '
                    f'expected {(self.dim(m + 1), self.dim(m))}.'
                )
            if self._inner[m].shape != (self.dim(m), self.dim(m)):
                raise ValueError(f'inner_{m} has shape {self._inner[m].shape}.')
        self._index: Dict[str, Tuple[int, int]] = {}
        if check:
            self.check()
        for m, ls in enumerate(self._labels):
            for i, label in enumerate(ls):
                self._index.setdefault(label, (m, i))

    @property
    def top(self) -> int:
        return len(self._labels) - 1

    @property
    def degrees(self) -> range:
        return range(len(self._labels))

    @property
    def labels(self) -> Tuple[Tuple[str, ...], ...]:
        return self._labels

    def dim(self, m: int) -> int:
        return len(self._labels[m]) if 0 <= m <= self.top else 0

    @property
    def dims(self) -> List[int]:
        return [self.dim(m) for m in self.degrees]

    def d(self, m: int) -> RatMatrix:
        if 0 <= m <= self.top:
            return self._d[m]
        return RatMatrix.zeros(self.dim(m + 1), self.dim(m))

    def inner(self, m: int) -> RatMatrix:
        if 0 <= m <= self.top:
            return self._inner[m]
        return RatMatrix.zeros(0, 0)

    def has_identity_inner(self) -> bool:
        return all(self._inner[m] == RatMatrix.identity(self.dim(m)) for m in self.degrees)

    def label(self, m: int, i: int) -> str:
        return self._labels[m][i]

    def locate(self, label: str) -> Tuple[int, int]:
        """Degree and index of the basis element called `label`."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f'No basis element {label!r}.') from None

    def basis_vector(self, m: int, i: int) -> np.ndarray:
        return unit_vector(self.dim(m), i)

    def zero(self, m: int) -> np.ndarray:
        return zeros(self.dim(m))

    def render(self, m: int, v: Sequence) -> str:
        return render_vector(self._labels[m] if 0 <= m <= self.top else (), v)

    def d_squared_witnesses(self) -> List[str]:
        """Basis elements `x` with `d(d(x)) ≠ 0`."""
        out = []
        for m in self.degrees:
            dd = self.d(m + 1) @ self.d(m)
            out += [self.label(m, i) for i in range(self.dim(m)) if not is_zero_vector(dd.column(i))]
        return out

    def check(self):
        for m, ls in enumerate(self._labels):
            if len(set(ls)) != len(ls):
                dup = next(l for l in ls if ls.count(l) > 1)
                raise ValueError(f'Label {dup!r} appears twice in degree {m}.')
        witnesses = self.d_squared_witnesses()
        if witnesses:
            raise InvalidComplex('d∘d = 0', witnesses)
        for m in self.degrees:
            ldl_check(self._inner[m])

    def __eq__(self, other):
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._d == other._d
            and self._inner == other._inner
        )

    def __repr__(self):
        dims = ', '.join(f'C^{m}: {self.dim(m)}' for m in self.degrees)
        return f'GradedComplex({dims})'


def betti_numbers(c: GradedComplex) -> List[int]:
    """`dim ker d_m − rank d_{m−1}` for every degree."""
    from ..linalg import rank

    ranks = [rank(c.d(m)) for m in c.degrees]
    return [
        c.dim(m) - ranks[m] - (ranks[m - 1] if m > 0 else 0) for m in c.degrees
    ]
