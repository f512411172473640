"""Exact checks of the operator identities behind the minimal model.

Every operator preserves the t-weight filtration, so each identity holds
exactly in the truncated module. Checks run on basis elements of t-weight
≤ W − max deg t_j and every report states that window.
"""
from itertools import product as iproduct
from typing import Callable, Iterable, List, Optional, Tuple

from sklearn.utils import check_random_state

from .. import logging as logg
from .._errors import IdentityFailed, NotAbelian, NotCEF, ProductUnavailable, TheoremMismatch
from .._report import IdentityCheck, Report
from ..equivariant import EquivariantDatum, ModuleElement, neumann_series
from .._docs import doc_datum, doc_raise_on_failure, doc_weight_cap, doc_window
from .._utils import AnyRandom, _doc_params
from ..linalg import RatMatrix, rank, solve, zeros
from ._cohomology import _dims_from_ranks
from ._model import HirschBrown

Labelled = Tuple[str, ModuleElement]


def _check(
    name: str, elements: Iterable[Labelled], holds: Callable[[ModuleElement], bool], window: str
) -> IdentityCheck:
    witnesses = [label for label, x in elements if not holds(x)]
    return IdentityCheck(name, not witnesses, witnesses, window)


def _window(hb: HirschBrown) -> int:
    return hb.module.window


def _window_text(hb: HirschBrown) -> str:
    return f't-weight ≤ {_window(hb)}'


def _module_elements(hb: HirschBrown) -> List[Labelled]:
    module = hb.module
    return [(module.render_basis(b), module.element(b)) for b in module.basis(max_weight=_window(hb))]


def _harmonic_elements(hb: HirschBrown) -> List[Labelled]:
    mm = hb.minimal
    return [(mm.render_basis(b), mm.element(b)) for b in mm.basis(max_weight=_window(hb))]


def _summand_elements(hb: HirschBrown, bases) -> List[Labelled]:
    module = hb.module
    out = []
    for a in module.monomials:
        if module.weight(a) > _window(hb):
            continue
        for m in hb.datum.complex.degrees:
            for v in bases[m]:
                x = module.from_form(m, v, a)
                out.append((str(x), x))
    return out


def check_dbar_trichotomy(hb: HirschBrown) -> List[IdentityCheck]:
    """\
    `D̄` vanishes on `R_G⊗B`, equals `d` on `R_G⊗E`, and equals
    `−ψ⁻¹∂ = −∂φ⁻¹` on `R_G⊗ℋ`.
    """
    ops, h, window = hb.ops, hb.hodge, _window_text(hb)
    return [
        _check('D̄ = 0 on R_G⊗B', _summand_elements(hb, h.boundary_basis),
               lambda x: hb.dbar(x).is_zero(), window),
        _check('D̄ = d on R_G⊗E', _summand_elements(hb, h.coexact_basis),
               lambda x: hb.dbar(x) == ops.d(x), window),
        _check(
            'D̄ = −ψ⁻¹∂ = −∂φ⁻¹ on R_G⊗ℋ',
            _summand_elements(hb, h.harmonic_basis),
            lambda x: hb.dbar(x) == -ops.psi_inv(ops.partial(x)) == -ops.partial(ops.phi_inv(x)),
            window,
        ),
    ]


def dbar_squared_zero(hb: HirschBrown) -> IdentityCheck:
    return _check('D̄∘D̄ = 0', _module_elements(hb), lambda x: hb.dbar(hb.dbar(x)).is_zero(), _window_text(hb))


def _complement_matrix(hb: HirschBrown, n: int, frames) -> Tuple[RatMatrix, int]:
    """`D̄` from the complement block of degree `n` to that of degree `n + 1`."""
    c = hb.datum.complex
    module = hb.module

    def block(k: int) -> List[Tuple]:
        return [
            (a, m, j)
            for a in module.monomials
            for m in c.degrees
            if module.weight(a) + m == k
            for j in range(frames[m].cols)
        ]

    source, target = block(n), block(n + 1)
    pos = {b: i for i, b in enumerate(target)}
    columns = []
    for a, m, j in source:
        y = hb.dbar(module.from_form(m, frames[m].column(j), a))
        col = zeros(len(target))
        for b, k, v in y:
            coords = solve(frames[k], v)
            if coords is None:
                raise IdentityFailed('R_G⊗(B⊕E) is D̄-stable', str(y))
            for i, value in enumerate(coords):
                if value:
                    col[pos[b, k, i]] += value
        columns.append(col)
    return RatMatrix.from_columns(columns, len(target)), len(source)


def check_acyclic_complement(hb: HirschBrown) -> List[IdentityCheck]:
    """\
    `R_G⊗(B⊕E)` is `D̄`-stable and has no `D̄`-cohomology in total
    degrees ≤ W.
    """
    ops, h, window = hb.ops, hb.hodge, _window_text(hb)
    complement = _summand_elements(hb, h.boundary_basis) + _summand_elements(hb, h.coexact_basis)
    stable = _check(
        'R_G⊗(B⊕E) is D̄-stable', complement, lambda x: ops.harmonic_part(hb.dbar(x)).is_zero(), window
    )
    if not stable:
        return [stable, IdentityCheck('D̄ is acyclic on R_G⊗(B⊕E)', False, ['not stable'], window)]
    c = hb.datum.complex
    frames = {
        m: RatMatrix.from_columns(list(h.boundary_basis[m]) + list(h.coexact_basis[m]), c.dim(m))
        for m in c.degrees
    }
    blocks = [_complement_matrix(hb, n, frames) for n in range(hb.weight_cap + 1)]
    dims = _dims_from_ranks([size for _, size in blocks], [rank(m) for m, _ in blocks])
    witnesses = [f'degree {n}' for n, d in enumerate(dims) if d]
    return [
        stable,
        IdentityCheck(
            'D̄ is acyclic on R_G⊗(B⊕E)', not witnesses, witnesses, f'total degree ≤ {hb.weight_cap}'
        ),
    ]


def chain_map_check(hb: HirschBrown) -> List[IdentityCheck]:
    """\
    `φ⁻¹ i_H` is a chain map from `(R_G⊗ℋ, d_HB)` to `(R_G⊗C, d_G)`, and
    `(I⊗H) ψ⁻¹` is a chain map back.
    """
    ops, mm, window = hb.ops, hb.minimal, _window_text(hb)
    return [
        _check(
            'd_G φ⁻¹ i_H = φ⁻¹ i_H d_HB',
            _harmonic_elements(hb),
            lambda x: ops.apply_dG(ops.phi_inv(x)) == ops.phi_inv(mm.apply(x)),
            window,
        ),
        _check(
            '(I⊗H) ψ⁻¹ d_G = d_HB (I⊗H) ψ⁻¹',
            _module_elements(hb),
            lambda x: ops.harmonic_part(ops.psi_inv(ops.apply_dG(x)))
            == mm.apply(ops.harmonic_part(ops.psi_inv(x))),
            window,
        ),
    ]


def _theorem_holds(hb: HirschBrown, x: ModuleElement) -> bool:
    try:
        hb.d_hb(x)
    except TheoremMismatch:
        return False
    return True


def transfer_identity(
    hb: HirschBrown, x: ModuleElement, *, raise_on_failure: bool = True
) -> Report:
    """\
    Check `φ d_G φ⁻¹ x = (I⊗H) d_G φ⁻¹ x + d x` for an arbitrary element.

    Both sides are computed independently. For harmonic `x` this is the
    statement that the two forms of `d_HB` agree.

    Returns
    -------
    A :class:`~hbmodel._report.Report` with both sides and the check.
    """
    ops = hb.ops
    y = ops.phi_inv(x)
    left = ops.phi(ops.apply_dG(y))
    right = ops.harmonic_part(ops.apply_dG(y)) + ops.d(x)
    check = IdentityCheck(
        'φ d_G φ⁻¹ = (I⊗H) d_G φ⁻¹ + d', left == right, [] if left == right else [str(x)],
        _window_text(hb),
    )
    report = Report('transfer identity')
    report.add('element', str(x)).add('left', str(left)).add('right', str(right)).add_check(check)
    if raise_on_failure and not check:
        raise IdentityFailed(check.name, str(x))
    return report


def _product_checks(hb: HirschBrown, window: str) -> List[IdentityCheck]:
    gens = [(hb.generator_label(m, k), hb.generator(m, k)) for m, k in hb.generators()]
    unit = hb.module.from_form(0, hb.datum.product.unit)
    tp = hb.twisted_product
    checks = [_check('1 ∧̃ h = h', gens, lambda x: tp(unit, x) == x, window)]
    witnesses = []
    for (la, a), (lb, b) in iproduct(gens, repeat=2):
        sign = (-1) ** (a.total_degree * b.total_degree)
        if tp(a, b) != tp(b, a) * sign:
            witnesses.append(f'({la}, {lb})')
    checks.append(IdentityCheck('a ∧̃ b = (−1)^{|a||b|} b ∧̃ a', not witnesses, witnesses, window))
    witnesses = []
    for (la, a), (lb, b), (lc, c) in iproduct(gens, repeat=3):
        if not all(triple_product_check(hb, a, b, c)):
            witnesses.append(f'({la}, {lb}, {lc})')
    checks.append(IdentityCheck('(a ∧̃ b) ∧̃ c = a ∧̃ (b ∧̃ c)', not witnesses, witnesses, window))
    return checks


def triple_product_check(
    hb: HirschBrown, a: ModuleElement, b: ModuleElement, c: ModuleElement
) -> List[IdentityCheck]:
    """\
    Both bracketings of a triple twisted product against `(I⊗H) ψ⁻¹(â b̂ ĉ)`,
    the class of the triple product in the Cartan model.
    """
    ops = hb.ops
    tp = hb.twisted_product
    hat = ops.phi_inv
    oracle = ops.harmonic_part(ops.psi_inv(ops.multiply(ops.multiply(hat(a), hat(b)), hat(c))))
    witness = [f'({a}, {b}, {c})']
    left = tp(tp(a, b), c)
    right = tp(a, tp(b, c))
    return [
        IdentityCheck('(a ∧̃ b) ∧̃ c = (I⊗H) ψ⁻¹(âb̂ĉ)', left == oracle, [] if left == oracle else witness),
        IdentityCheck('a ∧̃ (b ∧̃ c) = (I⊗H) ψ⁻¹(âb̂ĉ)', right == oracle, [] if right == oracle else witness),
    ]


@_doc_params(datum=doc_datum, weight_cap=doc_weight_cap, raise_on_failure=doc_raise_on_failure, window=doc_window)
def homotopy_identities(
    datum: EquivariantDatum,
    weight_cap: Optional[int] = None,
    *,
    raise_on_failure: bool = True,
    hb: Optional[HirschBrown] = None,
) -> Report:
    """\
    Run the full identity suite on a datum.

    The three defining properties of the minimal model are checked first:
    `(I⊗H) ψ⁻¹ φ⁻¹ i_H = I` on `R_G⊗ℋ`, and the two chain-map squares.
    They are followed by the identities of the perturbation calculus, the
    behaviour of `D̄` on the Hodge summands, and, when the product is
    available, the twisted product.

    {window}

    Parameters
    ----------
    {datum}
    {weight_cap}
    {raise_on_failure}
    hb
        Reuse an existing :class:`HirschBrown`.

    Returns
    -------
    A :class:`~hbmodel._report.Report`.
    """
    hb = HirschBrown(datum, weight_cap) if hb is None else hb
    ops, mm, h = hb.ops, hb.minimal, hb.hodge
    window = _window_text(hb)
    start = logg.info(f'checking homotopy identities of {datum.name or "datum"} at W = {hb.weight_cap}')
    report = Report('homotopy identities')
    report.add('datum', datum.name or '-').add('weight cap', hb.weight_cap).add('window', window)

    def add(checks):
        for check in checks if isinstance(checks, list) else [checks]:
            report.add_check(check)
            logg.check(check)
            if raise_on_failure and not check:
                raise IdentityFailed(check.name, check.witness)

    module_elements = _module_elements(hb)
    harmonic_elements = _harmonic_elements(hb)

    def on_module(name, holds):
        add(_check(name, module_elements, holds, window))

    add(_check(
        '(I⊗H) ψ⁻¹ φ⁻¹ i_H = I on R_G⊗ℋ',
        harmonic_elements,
        lambda x: ops.harmonic_part(ops.psi_inv(ops.phi_inv(x))) == x,
        window,
    ))
    add(chain_map_check(hb))
    add(_check(
        'd_HB = (I⊗H)D̄ = φ d_G φ⁻¹', harmonic_elements, lambda x: _theorem_holds(hb, x), window
    ))
    add(_check('d_HB∘d_HB = 0', harmonic_elements, lambda x: mm.apply(mm.apply(x)).is_zero(), window))

    report.section('perturbation calculus')
    on_module('φ φ⁻¹ = I', lambda x: ops.phi(ops.phi_inv(x)) == x)
    on_module('φ⁻¹ φ = I', lambda x: ops.phi_inv(ops.phi(x)) == x)
    on_module('ψ ψ⁻¹ = I', lambda x: ops.psi(ops.psi_inv(x)) == x)
    on_module('ψ⁻¹ ψ = I', lambda x: ops.psi_inv(ops.psi(x)) == x)
    on_module(
        'ψ⁻¹ φ⁻¹ = Σ (P+Q)^k',
        lambda x: ops.psi_inv(ops.phi_inv(x)) == neumann_series(lambda y: ops.op_P(y) + ops.op_Q(y), x),
    )
    on_module('Q∂ = ∂P', lambda x: ops.op_Q(ops.partial(x)) == ops.partial(ops.op_P(x)))
    on_module('P∂ = 0', lambda x: ops.op_P(ops.partial(x)).is_zero())
    on_module('(I⊗H) P = 0', lambda x: ops.harmonic_part(ops.op_P(x)).is_zero())
    on_module('Q (I⊗H) = 0', lambda x: ops.op_Q(ops.harmonic_part(x)).is_zero())
    on_module(
        'dP − Pd = ΔG∂',
        lambda x: ops.d(ops.op_P(x)) - ops.op_P(ops.d(x)) == ops.laplacian(ops.greens(ops.partial(x))),
    )
    add(_check(
        'ψ d = d_G on R_G⊗E',
        _summand_elements(hb, h.coexact_basis),
        lambda x: ops.psi(ops.d(x)) == ops.apply_dG(x),
        window,
    ))
    add(_check(
        'd_G d*G = ψ on R_G⊗B',
        _summand_elements(hb, h.boundary_basis),
        lambda x: ops.apply_dG(ops.dstarG(x)) == ops.psi(x),
        window,
    ))
    on_module('φ d_G φ⁻¹ = (I⊗H) d_G φ⁻¹ + d', lambda x: not transfer_identity(
        hb, x, raise_on_failure=False).failures)

    report.section('perturbed differential')
    add(dbar_squared_zero(hb))
    add(check_dbar_trichotomy(hb))
    add(check_acyclic_complement(hb))

    report.section('twisted product')
    try:
        hb._require_product()
    except (NotAbelian, ProductUnavailable, NotCEF) as e:
        report.add('skipped', str(e))
    else:
        add(_product_checks(hb, window))

    logg.info(
        '    finished',
        time=start,
        deep=f'{len(report.checks) - len(report.failures)}/{len(report.checks)} identities hold',
    )
    return report


def random_elements(
    hb: HirschBrown, count: int = 50, random_state: AnyRandom = 0
) -> List[ModuleElement]:
    """\
    Random integer combinations of the basis elements inside the window.

    Coefficients are drawn from `−3..3` with most of them zero, so the
    elements mix degrees and t-weights.
    """
    random_state = check_random_state(random_state)
    module = hb.module
    basis = list(module.basis(max_weight=_window(hb)))
    out = []
    for _ in range(count):
        x = module.zero()
        for b in basis:
            if random_state.rand() < 0.3:
                x = x + int(random_state.randint(-3, 4)) * module.element(b)
        out.append(x)
    return out


def random_transfer_check(
    hb: HirschBrown, count: int = 50, random_state: AnyRandom = 0
) -> IdentityCheck:
    """\
    :func:`transfer_identity` on `count` random elements of the window.
    """
    witnesses = [
        str(x)
        for x in random_elements(hb, count, random_state)
        if transfer_identity(hb, x, raise_on_failure=False).failures
    ]
    return IdentityCheck(
        f'φ d_G φ⁻¹ = (I⊗H) d_G φ⁻¹ + d on {count} random elements',
        not witnesses,
        witnesses,
        _window_text(hb),
    )
