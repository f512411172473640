"""Valid data generated from valid data.

Tensor products, direct sums and basis changes preserve every structural
identity, so they turn the curated fixtures into an unbounded supply of
property-test inputs.
"""
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sklearn.utils import check_random_state

from .. import logging as logg
from .._errors import IdentityFailed
from .._utils import AnyRandom
from ..hodge import GradedComplex
from ..linalg import RatMatrix, inverse
from ._datum import EquivariantDatum, ProductTable

# (left degree, left index, right degree, right index)
_Pair = Tuple[int, int, int, int]


def _images(matrix: RatMatrix, i: int) -> Iterable[Tuple[int, Fraction]]:
    return ((r, v) for r, v in enumerate(matrix.column(i)) if v)


class _TensorBasis:
    def __init__(self, a: GradedComplex, b: GradedComplex):
        self.a, self.b = a, b
        top = a.top + b.top
        labels: List[List[str]] = [[] for _ in range(top + 1)]
        self.index: Dict[_Pair, Tuple[int, int]] = {}
        for n in range(top + 1):
            for p in a.degrees:
                q = n - p
                for i in range(a.dim(p)):
                    for j in range(b.dim(q)):
                        self.index[p, i, q, j] = (n, len(labels[n]))
                        labels[n].append(f'{a.label(p, i)}.{b.label(q, j)}')
        self.labels = labels

    def dim(self, n: int) -> int:
        return len(self.labels[n]) if 0 <= n < len(self.labels) else 0

    def operator(
        self, degree: int, image: Callable[[_Pair], Iterable[Tuple[_Pair, Fraction]]]
    ) -> Dict[int, RatMatrix]:
        entries: Dict[int, Dict[Tuple[int, int], Fraction]] = {n: {} for n in range(len(self.labels))}
        for pair, (n, col) in self.index.items():
            for target, value in image(pair):
                n2, row = self.index[target]
                if n2 != n + degree:
                    raise IdentityFailed(f'tensor operator has degree {degree}', self.labels[n][col])
                key = (row, col)
                entries[n][key] = entries[n].get(key, 0) + value
        return {
            n: RatMatrix(self.dim(n + degree), self.dim(n), ((r, c, v) for (r, c), v in e.items()))
            for n, e in entries.items()
        }

    def left(self, op: Callable[[int], RatMatrix], degree: int) -> Dict[int, RatMatrix]:
        """`op ⊗ 1`."""
        return self.operator(
            degree,
            lambda x: [((x[0] + degree, r, x[2], x[3]), v) for r, v in _images(op(x[0]), x[1])],
        )

    def right(self, op: Callable[[int], RatMatrix], degree: int) -> Dict[int, RatMatrix]:
        """`1 ⊗ op` with the Koszul sign `(−1)^{deg op · |x|}`."""
        return self.operator(
            degree,
            lambda x: [
                ((x[0], x[1], x[2] + degree, r), -v if (degree * x[0]) % 2 else v)
                for r, v in _images(op(x[2]), x[3])
            ],
        )


def tensor(a: EquivariantDatum, b: EquivariantDatum) -> EquivariantDatum:
    """\
    The product group acting on the tensor product of two data.

    Contractions are `i_j ⊗ 1` followed by `1 ⊗ i'_k` (with Koszul signs),
    inner products multiply, and products are combined with the sign
    `(−1)^{|y||x'|}` for `(x⊗y)(x'⊗y')`.
    """
    basis = _TensorBasis(a.complex, b.complex)
    ca, cb = a.complex, b.complex
    d_left, d_right = basis.left(ca.d, 1), basis.right(cb.d, 1)
    differential = {n: d_left[n] + d_right[n] for n in d_left}
    inner = basis.operator(
        0,
        lambda x: [
            ((x[0], r, x[2], s), u * w)
            for r, u in _images(ca.inner(x[0]), x[1])
            for s, w in _images(cb.inner(x[2]), x[3])
        ],
    )
    complex = GradedComplex(basis.labels, differential, inner)
    contractions = [
        (t, basis.left(lambda m, j=j: a.contraction(j, m), 1 - t))
        for j, t in enumerate(a.t_degrees)
    ] + [
        (t, basis.right(lambda m, j=j: b.contraction(j, m), 1 - t))
        for j, t in enumerate(b.t_degrees)
    ]
    product = None
    if a.product is not None and b.product is not None:
        table = {}
        for x, (n, k) in basis.index.items():
            for y, (n2, k2) in basis.index.items():
                if n + n2 > complex.top:
                    continue
                xx = a.product.basis_product((x[0], x[1]), (y[0], y[1]))
                yy = b.product.basis_product((x[2], x[3]), (y[2], y[3]))
                sign = (-1) ** (x[2] * y[0])
                v = complex.zero(n + n2)
                for r, u in enumerate(xx):
                    for s, w in enumerate(yy):
                        if u and w:
                            v[basis.index[x[0] + y[0], r, x[2] + y[2], s][1]] += sign * u * w
                table[(n, k), (n2, k2)] = v
        unit = complex.zero(0)
        for r, u in enumerate(a.product.unit):
            for s, w in enumerate(b.product.unit):
                if u and w:
                    unit[basis.index[0, r, 0, s][1]] += u * w
        product = ProductTable(complex, table, unit)
    return EquivariantDatum(
        complex, contractions, product, name=f'tensor({a.name}, {b.name})'
    )


def direct_sum(a: EquivariantDatum, b: EquivariantDatum) -> EquivariantDatum:
    """\
    Direct sum of two data with the same generator degrees.

    The product is dropped. Labels are suffixed with `_a` and `_b` when the
    two label sets overlap.
    """
    if a.t_degrees != b.t_degrees:
        raise ValueError(
            f'Direct sums need equal generator degrees, got {list(a.t_degrees)} '
            f'and {list(b.t_degrees)}.'
        )
    ca, cb = a.complex, b.complex
    la = {l for ls in ca.labels for l in ls}
    lb = {l for ls in cb.labels for l in ls}
    sa, sb = ('_a', '_b') if la & lb else ('', '')
    top = max(ca.top, cb.top)
    labels = [
        [l + sa for l in (ca.labels[m] if m <= ca.top else ())]
        + [l + sb for l in (cb.labels[m] if m <= cb.top else ())]
        for m in range(top + 1)
    ]

    def block(ma: RatMatrix, mb: RatMatrix) -> RatMatrix:
        return RatMatrix(
            ma.rows + mb.rows,
            ma.cols + mb.cols,
            list(ma.entries()) + [(r + ma.rows, c + ma.cols, v) for r, c, v in mb.entries()],
        )

    def blocks(fa: Callable[[int], RatMatrix], fb: Callable[[int], RatMatrix]) -> Dict[int, RatMatrix]:
        return {m: block(fa(m), fb(m)) for m in range(top + 1)}

    def inner(c: GradedComplex) -> Callable[[int], RatMatrix]:
        return lambda m: c.inner(m) if m <= c.top else RatMatrix.zeros(0, 0)

    complex = GradedComplex(labels, blocks(ca.d, cb.d), blocks(inner(ca), inner(cb)))
    contractions = [
        (t, blocks(lambda m, j=j: a.contraction(j, m), lambda m, j=j: b.contraction(j, m)))
        for j, t in enumerate(a.t_degrees)
    ]
    return EquivariantDatum(complex, contractions, None, name=f'direct_sum({a.name}, {b.name})')


def _random_invertible(n: int, rs) -> RatMatrix:
    """`L·U·D` with unit-triangular `L`, `U` and a nonzero diagonal `D`."""
    if n == 0:
        return RatMatrix.zeros(0, 0)
    lower = RatMatrix(
        n, n, [(i, i, 1) for i in range(n)] + [(i, j, int(rs.randint(-2, 3))) for i in range(n) for j in range(i)]
    )
    upper = RatMatrix(
        n, n, [(i, i, 1) for i in range(n)] + [(j, i, int(rs.randint(-2, 3))) for i in range(n) for j in range(i)]
    )
    scales = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]
    diag = RatMatrix(n, n, [(i, i, scales[rs.randint(len(scales))]) for i in range(n)])
    return lower @ upper @ diag


def conjugate(datum: EquivariantDatum, random_state: AnyRandom = 0) -> EquivariantDatum:
    """\
    The same datum written in a random rational basis.

    With `S_m` the basis change in degree `m`, operators become
    `S⁻¹ A S`, inner products `Sᵀ A S`, and the product table and unit are
    rewritten in the new basis. Labels are kept.
    """
    rs = check_random_state(random_state)
    c = datum.complex
    s = [_random_invertible(c.dim(m), rs) for m in c.degrees]
    s_inv = [inverse(x) for x in s]

    def change(m: int, target: int, op: RatMatrix) -> RatMatrix:
        if not 0 <= target <= c.top:
            return op
        return s_inv[target] @ op @ s[m]

    differential = {m: change(m, m + 1, c.d(m)) for m in c.degrees}
    inner = {m: s[m].T @ c.inner(m) @ s[m] for m in c.degrees}
    complex = GradedComplex(c.labels, differential, inner)
    contractions = [
        (ct.t_degree, {m: change(m, m + ct.degree, ct.operator[m]) for m in c.degrees})
        for ct in datum.contractions
    ]
    product = None
    if datum.product is not None:
        product = datum.product.transformed(complex, s, s_inv)
    return EquivariantDatum(
        complex, contractions, product, name=f'conjugate({datum.name})', weight_cap=datum.weight_cap
    )


def random_variants(
    count: int = 20,
    random_state: AnyRandom = 0,
    bases: Optional[Sequence[EquivariantDatum]] = None,
) -> List[EquivariantDatum]:
    """\
    Generate valid data from the shipped fixtures.

    Cycles through basis changes, tensor products with a two-dimensional
    factor, and direct sums, conjugating the composite results again.

    Parameters
    ----------
    count
        Number of variants.
    random_state
        Seed or random state, passed to :func:`sklearn.utils.check_random_state`.
    bases
        Data to start from. Defaults to the curated torus and SU(2) fixtures.
    """
    rs = check_random_state(random_state)
    if bases is None:
        from .. import datasets

        bases = [
            datasets.load(name)
            for name in ('poly-rot-2', 'free-rotation', 'two-torus-rotation', 'su2-free')
        ]
    small = [b for b in bases if sum(b.complex.dims) <= 2] or list(bases[:1])
    start = logg.info(f'generating {count} variants')
    out = []
    for k in range(count):
        kind = k % 3
        base = bases[rs.randint(len(bases))]
        if kind == 0:
            variant = conjugate(base, rs)
        elif kind == 1:
            variant = conjugate(tensor(base, small[rs.randint(len(small))]), rs)
        else:
            partners = [b for b in bases if b.t_degrees == base.t_degrees]
            variant = conjugate(direct_sum(base, partners[rs.randint(len(partners))]), rs)
        variant.name = f'{variant.name}#{k}'
        out.append(variant)
    logg.info('    finished', time=start, deep=', '.join(v.name for v in out))
    return out
