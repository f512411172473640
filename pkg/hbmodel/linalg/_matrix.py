from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Sequence, Tuple, Union

import numpy as np

from ._rational import RationalLike, as_fraction, zeros


class RatMatrix:
    """\
    Sparse matrix over exact rationals.

    Entries are kept as a mapping `(row, col) -> Fraction` without stored
    zeros. Instances are treated as immutable.

    Parameters
    ----------
    rows
        Number of rows.
    cols
        Number of columns.
    entries
        Triples `(row, col, value)`. Duplicate positions are rejected.
    """

    __slots__ = ('_shape', '_entries')

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Iterable[Tuple[int, int, RationalLike]] = (),
    ):
        if rows < 0 or cols < 0:
            raise ValueError(f'Invalid shape ({rows}, {cols}).')
        self._shape = (rows, cols)
        self._entries: Dict[Tuple[int, int], Fraction] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f'Entry ({r}, {c}) outside shape {self._shape}.')
            if (r, c) in self._entries:
                raise ValueError(f'Duplicate entry at ({r}, {c}).')
            v = as_fraction(v)
            if v:
                self._entries[r, c] = v

    @classmethod
    def _from_dict(cls, rows: int, cols: int, entries: Dict[Tuple[int, int], Fraction]):
        m = cls.__new__(cls)
        m._shape = (rows, cols)
        m._entries = {k: v for k, v in entries.items() if v}
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RatMatrix':
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> 'RatMatrix':
        return cls._from_dict(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_dense(cls, array: Union[np.ndarray, Sequence[Sequence[RationalLike]]], cols: int = None):
        rows_ = [list(r) for r in array]
        n_cols = cols if cols is not None else (len(rows_[0]) if rows_ else 0)
        return cls(
            len(rows_),
            n_cols,
            ((i, j, v) for i, row in enumerate(rows_) for j, v in enumerate(row)),
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]], rows: int) -> 'RatMatrix':
        return cls(
            rows,
            len(columns),
            ((i, j, v) for j, col in enumerate(columns) for i, v in enumerate(col)),
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> int:
        return self._shape[0]

    @property
    def cols(self) -> int:
        return self._shape[1]

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        """Nonzero entries in row-major order."""
        for (r, c) in sorted(self._entries):
            yield r, c, self._entries[r, c]

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f'({r}, {c}) outside shape {self.shape}.')
        return self._entries.get((r, c), Fraction(0))

    def todense(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        out.fill(Fraction(0))
        for (r, c), v in self._entries.items():
            out[r, c] = v
        return out

    def tolist(self):
        return self.todense().tolist()

    def column(self, c: int) -> np.ndarray:
        out = zeros(self.rows)
        for (r, cc), v in self._entries.items():
            if cc == c:
                out[r] = v
        return out

    def columns(self):
        return [self.column(c) for c in range(self.cols)]

    @property
    def T(self) -> 'RatMatrix':
        return RatMatrix._from_dict(
            self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()}
        )

    def is_zero(self) -> bool:
        return not self._entries

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._entries.get((c, r)) == v for (r, c), v in self._entries.items()
        )

    def dot(self, v: Sequence) -> np.ndarray:
        if len(v) != self.cols:
            raise ValueError(f'Vector of length {len(v)} does not match {self.shape}.')
        out = zeros(self.rows)
        for (r, c), a in self._entries.items():
            x = v[c]
            if x:
                out[r] += a * x
        return out

    def __matmul__(self, other):
        if not isinstance(other, RatMatrix):
            return self.dot(other)
        if self.cols != other.rows:
            raise ValueError(f'Shapes {self.shape} and {other.shape} do not compose.')
        other_rows = defaultdict(list)
        for (k, j), b in other._entries.items():
            other_rows[k].append((j, b))
        acc = defaultdict(Fraction)
        for (i, k), a in self._entries.items():
            for j, b in other_rows.get(k, ()):
                acc[i, j] += a * b
        return RatMatrix._from_dict(self.rows, other.cols, acc)

    def _check_same_shape(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f'Shapes {self.shape} and {other.shape} differ.')

    def __add__(self, other):
        if self._check_same_shape(other) is NotImplemented:
            return NotImplemented
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return RatMatrix._from_dict(*self.shape, acc)

    def __neg__(self):
        return RatMatrix._from_dict(*self.shape, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return RatMatrix._from_dict(*self.shape, {k: s * v for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, frozenset(self._entries.items())))

    def __repr__(self):
        from ._rational import fstr

        body = ', '.join(f'({r}, {c}): {fstr(v)}' for r, c, v in self.entries())
        return f'RatMatrix({self.rows}x{self.cols}, {{{body}}})'
