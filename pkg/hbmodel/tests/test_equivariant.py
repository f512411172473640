from fractions import Fraction

import pytest

from hbmodel import datasets, eq, hodge, la
from hbmodel._errors import InvalidComplex, ProductUnavailable


@pytest.fixture
def poly_ops(poly_rot_2):
    return eq.CartanOperators.from_datum(poly_rot_2, 10)


def test_module_dimensions(poly_rot_2):
    module = eq.TruncatedModule(poly_rot_2, 4)
    # t^0, t^1, t^2 times the seven basis forms
    assert module.monomials == ((0,), (1,), (2,))
    assert module.dim(0) == 3
    assert module.dim(2) == 2 + 3
    assert module.dim(4) == 2 + 3
    assert module.dim(6) == 2
    assert module.window == 2


def test_module_rejects_odd_cap(poly_rot_2):
    with pytest.raises(ValueError):
        eq.TruncatedModule(poly_rot_2, 5)


def test_render(poly_rot_2):
    module = eq.TruncatedModule(poly_rot_2, 10)
    x = module.from_label('omega') + module.from_label('mu', (1,))
    assert str(x) == 'omega + t⊗mu'
    assert str(-module.from_label('1', (1,))) == '-t⊗1'
    assert str(Fraction(1, 2) * module.from_label('mu2', (1,))) == '1/2*t⊗mu2'
    assert str(module.zero()) == '0'
    assert eq.render_monomial((2, 1)) == 't1^2*t2'
    assert eq.render_monomial((0,)) == '1'


def test_element_arithmetic(poly_rot_2):
    module = eq.TruncatedModule(poly_rot_2, 4)
    omega = module.from_label('omega')
    assert (omega - omega).is_zero()
    assert omega.t_multiply((1,)).weights() == [2]
    assert omega.t_multiply((2,)).total_degree == 6
    assert omega.t_multiply((3,)).is_zero()
    assert omega.t_multiply((3,)).truncated == 1
    mixed = omega + module.from_label('1')
    assert not mixed.is_homogeneous()
    with pytest.raises(ValueError):
        mixed.total_degree
    assert mixed.weight_part(0) == mixed
    assert set(mixed.form_part()) == {0, 2}


def test_elements_of_rebuilt_module(poly_rot_2, free_rotation):
    a, b = eq.TruncatedModule(poly_rot_2, 4), eq.TruncatedModule(poly_rot_2, 4)
    assert a.from_label('omega') == b.from_label('omega')
    assert (a.from_label('omega') - b.from_label('omega')).is_zero()
    assert a.from_label('1') != eq.TruncatedModule(poly_rot_2, 6).from_label('1')
    assert a.from_label('1') != eq.TruncatedModule(free_rotation, 4).from_label('1')
    with pytest.raises(ValueError, match='different modules'):
        a.from_label('1') + eq.TruncatedModule(poly_rot_2, 6).from_label('1')


def test_vector_round_trip(poly_rot_2):
    module = eq.TruncatedModule(poly_rot_2, 6)
    x = module.from_label('omega', (1,)) + 3 * module.from_label('mu2', (2,))
    assert module.from_vector(module.to_vector(x, 4), 4) == x


def test_apply_dG(free_rotation, poly_rot_2):
    module = eq.TruncatedModule(free_rotation, 10)
    assert eq.apply_dG(module.from_label('dth')) == -module.from_label('1', (1,))
    module = eq.TruncatedModule(poly_rot_2, 10)
    assert eq.apply_dG(module.from_label('omega')) == -module.from_label('dmu', (1,))
    assert eq.apply_dG(module.from_label('1', (2,))).is_zero()


def test_partial_counts_truncation(free_rotation):
    module = eq.TruncatedModule(free_rotation, 2)
    x = module.from_label('dth', (1,))
    assert module.partial(x).is_zero()
    assert module.partial(x).truncated == 1


def test_P(poly_rot_2, poly_ops):
    module = poly_ops.module
    assert poly_ops.op_P(module.from_label('omega')) == module.from_label('mu', (1,))
    assert poly_ops.op_P(module.from_label('mu')).is_zero()
    assert poly_ops.op_P(module.from_label('muomega')) == Fraction(1, 2) * module.from_label('mu2', (1,))


def test_neumann_inverse(poly_ops):
    module = poly_ops.module
    omega = module.from_label('omega')
    assert poly_ops.phi_inv(omega) == omega + module.from_label('mu', (1,))
    muomega = module.from_label('muomega')
    assert poly_ops.neumann_inverse('phi', muomega) == muomega + Fraction(1, 2) * module.from_label('mu2', (1,))
    assert poly_ops.phi(poly_ops.phi_inv(muomega)) == muomega
    with pytest.raises(ValueError):
        poly_ops.neumann_inverse('chi', omega)


def test_neumann_term_limit(poly_ops):
    from hbmodel import settings

    previous = settings.max_neumann_terms
    settings.max_neumann_terms = 1
    try:
        with pytest.raises(RuntimeError):
            poly_ops.phi_inv(poly_ops.module.from_label('omega'))
    finally:
        settings.max_neumann_terms = previous


def test_trivial_action_identity(trivial_action):
    ops = eq.CartanOperators.from_datum(trivial_action, 6)
    for b in ops.module.basis():
        x = ops.module.element(b)
        assert ops.phi_inv(x) == x
        assert ops.psi_inv(x) == x


@pytest.mark.parametrize(
    'name', ['poly-rot-2', 'poly-rot-2-trivial', 'free-rotation', 'two-torus-rotation', 'su2-free']
)
def test_PQ_zero(shipped, name):
    check = eq.check_PQ_zero(shipped[name])
    assert check
    assert check.name == 'PQ = QP = 0'


@pytest.mark.parametrize(
    'name', ['poly-rot-2', 'poly-rot-2-trivial', 'free-rotation', 'two-torus-rotation', 'su2-free']
)
def test_validate_shipped(shipped, name):
    report = eq.validate(shipped[name])
    assert report.passed
    assert report['d_G∘d_G = 0']


def test_validate_poly_rot_2_product(poly_rot_2):
    report = eq.validate(poly_rot_2)
    assert report.product_ok
    assert report['product: i is a derivation']
    assert report['product: d is a derivation']
    df = report.to_df()
    assert df['passed'].all()


def test_validate_broken():
    datum = datasets.poly_rot_2_broken()
    with pytest.raises(InvalidComplex) as e:
        eq.validate(datum)
    assert e.value.check == 'd∘i + i∘d = 0'
    assert 'dmu' in e.value.witnesses
    report = eq.validate(datum, raise_on_fatal=False)
    assert not report.fatal_passed
    assert report.first_fatal_failure.name == 'd∘i + i∘d = 0'


def test_validate_bad_product(poly_rot_2):
    c = poly_rot_2.complex
    # mu·mu = 2 mu2 breaks the Leibniz rule for d
    table = eq.ProductTable.from_entries(
        c, [('mu', 'mu', 'mu2', 2), ('mu', 'dmu', 'mudmu', 1), ('mu', 'omega', 'muomega', 1)]
    )
    datum = eq.EquivariantDatum(c, poly_rot_2.contractions, table, name='bad-product')
    report = eq.validate(datum, 6)
    assert report.fatal_passed
    assert not report['product: d is a derivation']
    assert not report.product_ok
    ops = eq.CartanOperators.from_datum(datum.without_product(), 6)
    with pytest.raises(ProductUnavailable):
        ops.multiply(ops.module.from_label('mu'), ops.module.from_label('mu'))


def test_product_completion(poly_rot_2):
    table = poly_rot_2.product
    c = poly_rot_2.complex
    mu, dmu = c.locate('mu'), c.locate('dmu')
    assert table.basis_product(dmu, mu)[c.locate('mudmu')[1]] == 1
    assert table.basis_product(dmu, dmu)[c.locate('omega')[1]] == 0
    assert not table.associativity_witnesses()
    assert not table.commutativity_witnesses()
    assert not table.unit_witnesses()


def test_contraction_degrees(poly_rot_2):
    with pytest.raises(ValueError):
        eq.EquivariantDatum(poly_rot_2.complex, [(3, {})])
    assert poly_rot_2.t_degrees == (2,)
    assert poly_rot_2.abelian
    assert poly_rot_2.trivial().contraction(0, 2).is_zero()


def test_multiply(poly_ops):
    module = poly_ops.module
    omega_hat = poly_ops.phi_inv(module.from_label('omega'))
    square = poly_ops.multiply(omega_hat, omega_hat)
    expected = 2 * module.from_label('muomega', (1,)) + module.from_label('mu2', (2,))
    assert square == expected


def test_empty_complex_module():
    c = hodge.GradedComplex([])
    datum = eq.EquivariantDatum(c, [])
    module = eq.TruncatedModule(datum, 4)
    assert module.dim(0) == 0
    assert list(module.basis()) == []
    assert datum.max_t_degree == 0
