from itertools import product as iproduct
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..hodge import GradedComplex
from ..linalg import RatMatrix, as_fraction, is_zero_vector, unit_vector, vectors_equal, zeros

# (degree, index) of a basis element of the complex
BasisIndex = Tuple[int, int]


class Contraction(NamedTuple):
    """One contraction operator `i_j` paired with its generator `t_j`.

    `operator[m]` maps `C^m → C^{m + 1 − t_degree}`.
    """

    t_degree: int
    operator: Tuple[RatMatrix, ...]

    @property
    def degree(self) -> int:
        return 1 - self.t_degree

    def apply(self, m: int, v: Sequence) -> np.ndarray:
        return self.operator[m].dot(v)


def _contraction(
    c: GradedComplex, t_degree: int, operator: Mapping[int, RatMatrix]
) -> Contraction:
    if isinstance(t_degree, bool) or not isinstance(t_degree, int):
        raise TypeError(f't_degree must be of type int, not {type(t_degree)}.')
    if t_degree < 2 or t_degree % 2:
        raise ValueError(f'Generator degrees are even and ≥ 2, not {t_degree}.')
    ops = []
    for m in c.degrees:
        target = m + 1 - t_degree
        op = operator.get(m)
        if op is None:
            op = RatMatrix.zeros(c.dim(target), c.dim(m))
        elif op.shape != (c.dim(target), c.dim(m)):
            raise ValueError(
                f'Contraction of t-degree {t_degree} in degree {m} has shape '
                f'{op.shape}, expected {(c.dim(target), c.dim(m))}.'
            )
        ops.append(op)
    extra = set(operator) - set(c.degrees)
    if extra:
        raise ValueError(f'Contraction given in degrees {sorted(extra)} outside the complex.')
    return Contraction(t_degree, tuple(ops))


class ProductTable:
    """\
    Bilinear product `C^p × C^q → C^{p+q}` given by structure constants.

    Parameters
    ----------
    complex
        The complex whose bases index the table.
    table
        Mapping `((p, i), (q, j)) -> vector in C^{p+q}`. Missing pairs are zero.
    unit
        Coefficient vector of the unit in `C^0`.
    """

    def __init__(
        self,
        complex: GradedComplex,
        table: Mapping[Tuple[BasisIndex, BasisIndex], Sequence],
        unit: Sequence,
    ):
        self.complex = complex
        self._table: Dict[Tuple[BasisIndex, BasisIndex], np.ndarray] = {}
        for ((p, i), (q, j)), v in table.items():
            v = np.asarray(v, dtype=object)
            if len(v) != complex.dim(p + q):
                raise ValueError(
                    f'Product {complex.label(p, i)}·{complex.label(q, j)} has '
                    f'{len(v)} coefficients, degree {p + q} has dimension {complex.dim(p + q)}.'
                )
            if not is_zero_vector(v):
                self._table[(p, i), (q, j)] = v
        self.unit = np.asarray(unit, dtype=object)
        if len(self.unit) != complex.dim(0):
            raise ValueError('The unit must be a vector in degree 0.')

    @classmethod
    def from_entries(
        cls,
        complex: GradedComplex,
        entries: Iterable[Tuple[str, str, str, object]],
        unit: Optional[Sequence] = None,
    ) -> 'ProductTable':
        """\
        Build a table from `(left, right, out, coeff)` label entries.

        Pairs given in one order only are completed by graded commutativity,
        and products with the unit are filled in. The unit defaults to the
        first basis element of degree 0.
        """
        if complex.dim(0) == 0:
            raise ValueError('A product needs a nonempty degree 0 for its unit.')
        table: Dict[Tuple[BasisIndex, BasisIndex], np.ndarray] = {}
        seen = set()
        for left, right, out, coeff in entries:
            a, b, o = complex.locate(left), complex.locate(right), complex.locate(out)
            if o[0] != a[0] + b[0]:
                raise ValueError(
                    f'Product {left}·{right} lands in degree {a[0] + b[0]}, '
                    f'but {out} has degree {o[0]}.'
                )
            if (a, b, o) in seen:
                raise ValueError(f'Product entry {left}·{right} → {out} given twice.')
            seen.add((a, b, o))
            v = table.setdefault((a, b), zeros(complex.dim(o[0])))
            v[o[1]] += as_fraction(coeff)
        given = set(table)
        for (a, b) in list(given):
            if (b, a) not in given:
                table[b, a] = table[a, b] * (-1) ** (a[0] * b[0])
        unit = unit_vector(complex.dim(0), 0) if unit is None else np.asarray(unit, dtype=object)
        u_index = [i for i, x in enumerate(unit) if x]
        if len(u_index) == 1 and unit[u_index[0]] == 1:
            u = (0, u_index[0])
            for m in complex.degrees:
                for i in range(complex.dim(m)):
                    for key in ((u, (m, i)), ((m, i), u)):
                        if key not in table:
                            table[key] = unit_vector(complex.dim(m), i)
        return cls(complex, table, unit)

    def basis_product(self, a: BasisIndex, b: BasisIndex) -> np.ndarray:
        v = self._table.get((a, b))
        return v.copy() if v is not None else zeros(self.complex.dim(a[0] + b[0]))

    def multiply(self, p: int, x: Sequence, q: int, y: Sequence) -> np.ndarray:
        out = zeros(self.complex.dim(p + q))
        if len(out) == 0:
            return out
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    v = self._table.get(((p, i), (q, j)))
                    if v is not None:
                        out += xi * yj * v
        return out

    def entries(self) -> List[Tuple[str, str, str, object]]:
        c = self.complex
        out = []
        for (a, b), v in sorted(self._table.items()):
            m = a[0] + b[0]
            out += [
                (c.label(*a), c.label(*b), c.label(m, k), x)
                for k, x in enumerate(v)
                if x
            ]
        return out

    def _basis(self) -> List[BasisIndex]:
        return [(m, i) for m in self.complex.degrees for i in range(self.complex.dim(m))]

    def associativity_witnesses(self) -> List[str]:
        c = self.complex
        out = []
        basis = self._basis()
        for a, b, e in iproduct(basis, basis, basis):
            if a[0] + b[0] + e[0] > c.top:
                continue
            ab = self.basis_product(a, b)
            left = self.multiply(a[0] + b[0], ab, e[0], c.basis_vector(*e))
            be = self.basis_product(b, e)
            right = self.multiply(a[0], c.basis_vector(*a), b[0] + e[0], be)
            if not vectors_equal(left, right):
                out.append(f'({c.label(*a)}, {c.label(*b)}, {c.label(*e)})')
        return out

    def commutativity_witnesses(self) -> List[str]:
        c = self.complex
        out = []
        for a, b in iproduct(self._basis(), repeat=2):
            if a >= b:
                continue
            sign = (-1) ** (a[0] * b[0])
            if not vectors_equal(self.basis_product(a, b), self.basis_product(b, a) * sign):
                out.append(f'({c.label(*a)}, {c.label(*b)})')
        return out

    def unit_witnesses(self) -> List[str]:
        c = self.complex
        out = []
        for a in self._basis():
            e = c.basis_vector(*a)
            if not (
                vectors_equal(self.multiply(0, self.unit, a[0], e), e)
                and vectors_equal(self.multiply(a[0], e, 0, self.unit), e)
            ):
                out.append(c.label(*a))
        return out

    def derivation_witnesses(self, op, op_degree: int) -> List[str]:
        """\
        Basis pairs where `D(xy) = D(x)y + (−1)^{|x|} x D(y)` fails.

        `op(m)` is the matrix of `D` on `C^m`; `op_degree` is odd.
        """
        c = self.complex
        out = []
        for a, b in iproduct(self._basis(), repeat=2):
            p, q = a[0], b[0]
            target = p + q + op_degree
            if not 0 <= target <= c.top:
                continue
            x, y = c.basis_vector(*a), c.basis_vector(*b)
            left = op(p + q).dot(self.basis_product(a, b)) if c.dim(p + q) else zeros(c.dim(target))
            right = self.multiply(p + op_degree, op(p).dot(x), q, y)
            right = right + self.multiply(p, x, q + op_degree, op(q).dot(y)) * (-1) ** p
            if not vectors_equal(left, right):
                out.append(f'({c.label(*a)}, {c.label(*b)})')
        return out

    def transformed(
        self, complex: GradedComplex, basis_change: Sequence[RatMatrix], inverse: Sequence[RatMatrix]
    ) -> 'ProductTable':
        """\
        The same product written in the basis given by the columns of
        `basis_change[m]`, with `inverse[m]` its inverse.
        """
        table = {}
        for m in complex.degrees:
            for i in range(complex.dim(m)):
                x = basis_change[m].column(i)
                for n in complex.degrees:
                    if m + n > complex.top:
                        continue
                    for j in range(complex.dim(n)):
                        y = basis_change[n].column(j)
                        table[(m, i), (n, j)] = inverse[m + n].dot(self.multiply(m, x, n, y))
        return ProductTable(complex, table, inverse[0].dot(self.unit))

    def __eq__(self, other):
        if not isinstance(other, ProductTable):
            return NotImplemented
        return (
            self.complex == other.complex
            and self._table.keys() == other._table.keys()
            and all(vectors_equal(v, other._table[k]) for k, v in self._table.items())
            and vectors_equal(self.unit, other.unit)
        )

    def __repr__(self):
        return f'ProductTable({len(self._table)} nonzero basis products)'


class EquivariantDatum:
    """\
    Input to the Cartan model: a complex, contraction operators, an optional product.

    Parameters
    ----------
    complex
        The complex of invariant forms, with differential and inner products.
    contractions
        Sequence of `(t_degree, operator)` pairs. `operator` maps each source
        degree `m` to a matrix `C^m → C^{m + 1 − t_degree}`; missing degrees
        are zero.
    product
        Optional :class:`ProductTable` over the same complex.
    name
        Name used in reports.
    weight_cap
        Default truncation cap W stored with the datum.
    """

    def __init__(
        self,
        complex: GradedComplex,
        contractions: Sequence[Tuple[int, Mapping[int, RatMatrix]]],
        product: Optional[ProductTable] = None,
        *,
        name: Optional[str] = None,
        weight_cap: Optional[int] = None,
    ):
        self.complex = complex
        self.contractions: Tuple[Contraction, ...] = tuple(
            _contraction(complex, c.t_degree, dict(enumerate(c.operator)))
            if isinstance(c, Contraction)
            else _contraction(complex, c[0], c[1])
            for c in contractions
        )
        if product is not None and product.complex is not complex and product.complex != complex:
            raise ValueError('The product table belongs to a different complex.')
        self.product = product
        self.name = name
        self.weight_cap = weight_cap

    @property
    def t_degrees(self) -> Tuple[int, ...]:
        return tuple(c.t_degree for c in self.contractions)

    @property
    def rank(self) -> int:
        """Number of polynomial generators t_j."""
        return len(self.contractions)

    @property
    def abelian(self) -> bool:
        return all(t == 2 for t in self.t_degrees)

    @property
    def max_t_degree(self) -> int:
        return max(self.t_degrees, default=0)

    def contraction(self, j: int, m: int) -> RatMatrix:
        """Matrix of `i_j` on `C^m`; zero outside the complex."""
        c = self.contractions[j]
        if 0 <= m <= self.complex.top:
            return c.operator[m]
        return RatMatrix.zeros(self.complex.dim(m + c.degree), self.complex.dim(m))

    def trivial(self) -> 'EquivariantDatum':
        """The same complex and generators with every contraction set to zero."""
        return EquivariantDatum(
            self.complex,
            [(t, {}) for t in self.t_degrees],
            self.product,
            name=f'{self.name}-trivial' if self.name else None,
            weight_cap=self.weight_cap,
        )

    def without_product(self) -> 'EquivariantDatum':
        return EquivariantDatum(
            self.complex, self.contractions, None, name=self.name, weight_cap=self.weight_cap
        )

    def __eq__(self, other):
        if not isinstance(other, EquivariantDatum):
            return NotImplemented
        return (
            self.complex == other.complex
            and self.contractions == other.contractions
            and self.product == other.product
        )

    def __repr__(self):
        name = f'{self.name!r}, ' if self.name else ''
        return (
            f'EquivariantDatum({name}dims={self.complex.dims}, '
            f't_degrees={list(self.t_degrees)}, product={self.product is not None})'
        )
