from collections import defaultdict
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .._settings import check_weight_cap
from ..linalg import RatMatrix, as_fraction, fstr, is_zero_vector, vectors_equal, zeros
from ._datum import EquivariantDatum

Monomial = Tuple[int, ...]


class BasisElement(NamedTuple):
    """`t^monomial ⊗ e_index` with `e_index` a basis element of `C^degree`."""

    monomial: Monomial
    degree: int
    index: int


def _monomials(t_degrees: Sequence[int], cap: int) -> List[Monomial]:
    if not t_degrees:
        return [()]
    head, rest = t_degrees[0], t_degrees[1:]
    out = []
    for k in range(cap // head + 1):
        out += [(k,) + tail for tail in _monomials(rest, cap - k * head)]
    return out


def render_monomial(monomial: Monomial) -> str:
    names = ['t'] if len(monomial) == 1 else [f't{j + 1}' for j in range(len(monomial))]
    factors = [
        name if k == 1 else f'{name}^{k}' for name, k in zip(names, monomial) if k
    ]
    return '*'.join(factors) if factors else '1'


class TruncatedModule:
    """\
    The free module `R_G ⊗ C` truncated at t-weight W.

    `R_G` is the polynomial ring on generators `t_j` of degree `deg t_j`. Only
    monomials of weight `Σ a_j deg t_j ≤ W` are kept. The discarded span is a
    subcomplex, so the quotient is a complex and dimensions are exact in total
    degrees ≤ W.

    Parameters
    ----------
    datum
        The equivariant datum.
    weight_cap
        Even integer W ≥ 2.
    """

    def __init__(self, datum: EquivariantDatum, weight_cap: int):
        self.datum = datum
        self.weight_cap = check_weight_cap(weight_cap)
        self.t_degrees = datum.t_degrees
        self.monomials: Tuple[Monomial, ...] = tuple(
            sorted(_monomials(self.t_degrees, self.weight_cap), key=lambda a: (self.weight(a), a))
        )
        self._blocks: Dict[int, List[BasisElement]] = defaultdict(list)
        c = datum.complex
        for a in self.monomials:
            for m in c.degrees:
                for i in range(c.dim(m)):
                    self._blocks[self.weight(a) + m].append(BasisElement(a, m, i))
        self._positions = {
            n: {b: k for k, b in enumerate(block)} for n, block in self._blocks.items()
        }

    @property
    def complex(self):
        return self.datum.complex

    def weight(self, monomial: Monomial) -> int:
        return sum(k * t for k, t in zip(monomial, self.t_degrees))

    @property
    def window(self) -> int:
        """Largest t-weight on which operator identities are checked."""
        return self.weight_cap - self.datum.max_t_degree

    @property
    def total_degrees(self) -> range:
        return range(max(self._blocks, default=-1) + 1)

    def basis_in_degree(self, n: int) -> List[BasisElement]:
        return list(self._blocks.get(n, ()))

    def dim(self, n: int) -> int:
        return len(self._blocks.get(n, ()))

    def basis(self, max_weight: Optional[int] = None) -> Iterator[BasisElement]:
        for n in self.total_degrees:
            for b in self._blocks.get(n, ()):
                if max_weight is None or self.weight(b.monomial) <= max_weight:
                    yield b

    def zero(self) -> 'ModuleElement':
        return ModuleElement(self, {})

    def element(self, b: BasisElement) -> 'ModuleElement':
        return ModuleElement(self, {(b.monomial, b.degree): self.complex.basis_vector(b.degree, b.index)})

    def from_form(self, m: int, v: Sequence, monomial: Optional[Monomial] = None) -> 'ModuleElement':
        """`t^monomial ⊗ v` for a form vector `v` in `C^m`."""
        a = monomial if monomial is not None else (0,) * len(self.t_degrees)
        return ModuleElement(self, {(tuple(a), m): np.asarray(v, dtype=object)})

    def from_label(self, label: str, monomial: Optional[Monomial] = None) -> 'ModuleElement':
        m, i = self.complex.locate(label)
        return self.from_form(m, self.complex.basis_vector(m, i), monomial)

    def render_basis(self, b: BasisElement) -> str:
        label = self.complex.label(b.degree, b.index)
        if not any(b.monomial):
            return label
        return f'{render_monomial(b.monomial)}⊗{label}'

    def to_vector(self, x: 'ModuleElement', n: int) -> np.ndarray:
        pos = self._positions.get(n, {})
        out = zeros(len(pos))
        for (a, m), v in x.terms.items():
            if self.weight(a) + m != n:
                raise ValueError(f'{x} has a component outside total degree {n}.')
            for i, value in enumerate(v):
                if value:
                    out[pos[BasisElement(a, m, i)]] = value
        return out

    def from_vector(self, v: Sequence, n: int) -> 'ModuleElement':
        terms: Dict[Tuple[Monomial, int], np.ndarray] = {}
        for b, value in zip(self._blocks.get(n, ()), v):
            if value:
                vec = terms.setdefault((b.monomial, b.degree), self.complex.zero(b.degree))
                vec[b.index] += as_fraction(value)
        return ModuleElement(self, terms)

    def operator_matrix(
        self, op: Callable[['ModuleElement'], 'ModuleElement'], source: int, target: int
    ) -> RatMatrix:
        """Matrix of `op` from the total-degree `source` block to the `target` block."""
        columns = [self.to_vector(op(self.element(b)), target) for b in self._blocks.get(source, ())]
        return RatMatrix.from_columns(columns, self.dim(target))

    # form-wise operators

    def map_forms(self, x: 'ModuleElement', matrix: Callable[[int], RatMatrix], shift: int) -> 'ModuleElement':
        """Apply `I ⊗ A` where `matrix(m)` is `A` on `C^m`, of degree `shift`."""
        out: Dict[Tuple[Monomial, int], np.ndarray] = {}
        c = self.complex
        for (a, m), v in x.terms.items():
            if c.dim(m + shift) == 0:
                continue
            w = matrix(m).dot(v)
            key = (a, m + shift)
            out[key] = out[key] + w if key in out else w
        return ModuleElement(self, out, x.truncated)

    def d(self, x: 'ModuleElement') -> 'ModuleElement':
        return self.map_forms(x, self.complex.d, 1)

    def partial(self, x: 'ModuleElement') -> 'ModuleElement':
        """`∂(t^a ⊗ v) = Σ_j t^{a + e_j} ⊗ i_j(v)`, dropping terms above the cap."""
        datum = self.datum
        c = self.complex
        out: Dict[Tuple[Monomial, int], np.ndarray] = {}
        truncated = x.truncated
        for (a, m), v in x.terms.items():
            for j, contraction in enumerate(datum.contractions):
                target = m + contraction.degree
                if c.dim(target) == 0:
                    continue
                w = datum.contraction(j, m).dot(v)
                if is_zero_vector(w):
                    continue
                b = a[:j] + (a[j] + 1,) + a[j + 1:]
                if self.weight(b) > self.weight_cap:
                    truncated += 1
                    continue
                key = (b, target)
                out[key] = out[key] + w if key in out else w
        return ModuleElement(self, out, truncated)

    def apply_dG(self, x: 'ModuleElement') -> 'ModuleElement':
        """`d_G = I ⊗ d − ∂`."""
        return self.d(x) - self.partial(x)

    def __repr__(self):
        return (
            f'TruncatedModule(W={self.weight_cap}, t_degrees={list(self.t_degrees)}, '
            f'{len(self.monomials)} monomials)'
        )


def same_module(a: TruncatedModule, b: TruncatedModule) -> bool:
    """Modules built from equal data at the same cap."""
    return a is b or (a.weight_cap == b.weight_cap and a.datum == b.datum)

class ModuleElement:
    """\
    Element of a :class:`TruncatedModule`.

    `terms` maps `(monomial, form degree)` to a coefficient vector in that
    degree of the complex. `truncated` counts terms dropped at the cap while
    producing this element.
    """

    __slots__ = ('module', 'terms', 'truncated')

    def __init__(
        self,
        module: TruncatedModule,
        terms: Dict[Tuple[Monomial, int], Sequence],
        truncated: int = 0,
    ):
        self.module = module
        self.terms: Dict[Tuple[Monomial, int], np.ndarray] = {}
        for (a, m), v in terms.items():
            v = np.asarray(v, dtype=object)
            if len(v) != module.complex.dim(m):
                raise ValueError(f'Coefficient vector of length {len(v)} in degree {m}.')
            if module.weight(a) > module.weight_cap:
                raise ValueError(f'Monomial {a} lies above the cap {module.weight_cap}.')
            if not is_zero_vector(v):
                self.terms[tuple(a), m] = v
        self.truncated = truncated

    def _combine(self, other: 'ModuleElement', sign: int) -> 'ModuleElement':
        if not isinstance(other, ModuleElement):
            return NotImplemented
        if not same_module(self.module, other.module):
            raise ValueError('Elements of different modules.')
        terms = dict(self.terms)
        for key, v in other.terms.items():
            terms[key] = terms[key] + sign * v if key in terms else sign * v
        return ModuleElement(self.module, terms, self.truncated + other.truncated)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return ModuleElement(self.module, {k: v * s for k, v in self.terms.items()}, self.truncated)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return (
            same_module(self.module, other.module)
            and self.terms.keys() == other.terms.keys()
            and all(vectors_equal(v, other.terms[k]) for k, v in self.terms.items())
        )

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degrees(self) -> List[int]:
        return sorted({self.module.weight(a) + m for a, m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    @property
    def total_degree(self) -> Optional[int]:
        degrees = self.total_degrees()
        if len(degrees) > 1:
            raise ValueError(f'{self} is not homogeneous.')
        return degrees[0] if degrees else None

    def weights(self) -> List[int]:
        return sorted({self.module.weight(a) for a, _ in self.terms})

    def weight_part(self, w: int) -> 'ModuleElement':
        return ModuleElement(
            self.module, {k: v for k, v in self.terms.items() if self.module.weight(k[0]) == w}
        )

    def form_part(self, monomial: Optional[Monomial] = None) -> Dict[int, np.ndarray]:
        """Form coefficients of `t^monomial`, keyed by form degree."""
        a = tuple(monomial) if monomial is not None else (0,) * len(self.module.t_degrees)
        return {m: v for (b, m), v in self.terms.items() if b == a}

    def t_multiply(self, monomial: Monomial) -> 'ModuleElement':
        """Multiply by `t^monomial`; terms above the cap are dropped and counted."""
        terms = {}
        truncated = self.truncated
        for (a, m), v in self.terms.items():
            b = tuple(x + y for x, y in zip(a, monomial))
            if self.module.weight(b) > self.module.weight_cap:
                truncated += 1
            else:
                terms[b, m] = v
        return ModuleElement(self.module, terms, truncated)

    def __iter__(self) -> Iterator[Tuple[Monomial, int, np.ndarray]]:
        for (a, m), v in sorted(self.terms.items(), key=lambda kv: (self.module.weight(kv[0][0]), kv[0])):
            yield a, m, v

    def __str__(self):
        c = self.module.complex
        parts = []
        for a, m, v in self:
            mono = '' if not any(a) else render_monomial(a) + '⊗'
            nonzero = [(i, x) for i, x in enumerate(v) if x]
            if len(nonzero) == 1:
                i, x = nonzero[0]
                coeff = '' if abs(x) == 1 else f'{fstr(abs(x))}*'
                body = f'{coeff}{mono}{c.label(m, i)}'
                parts.append(('-' if x < 0 else '+', body))
            else:
                body = c.render(m, v)
                parts.append(('+', f'{mono}({body})' if mono else body))
        if not parts:
            return '0'
        out = ('-' if parts[0][0] == '-' else '') + parts[0][1]
        for sign, body in parts[1:]:
            out += f' {sign} {body}'
        return out

    def __repr__(self):
        return f'ModuleElement({self})'
