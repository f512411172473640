from fractions import Fraction

import pytest
import sympy

import hbmodel
from hbmodel import hb
from hbmodel._errors import IdentityFailed, NotAbelian, NotCEF


POLY_ROT_2_DIMS = [1, 0, 3, 0, 3, 0, 3, 0, 3, 0, 3]


@pytest.fixture
def free_model(free_rotation):
    return hbmodel.HirschBrown(free_rotation, 10)


@pytest.fixture
def torus_model(two_torus):
    return hbmodel.HirschBrown(two_torus, 10)


def test_generators(poly_rot_2_model, free_model):
    assert poly_rot_2_model.hodge.harmonic_dims() == [1, 0, 2]
    assert poly_rot_2_model.generators() == [(0, 0), (2, 0), (2, 1)]
    assert [poly_rot_2_model.generator_label(m, k) for m, k in poly_rot_2_model.generators()] == [
        '1',
        'omega',
        'muomega',
    ]
    assert free_model.generators() == [(0, 0), (1, 0)]


def test_harmonic_rejects(poly_rot_2_model):
    with pytest.raises(ValueError, match='not harmonic'):
        poly_rot_2_model.harmonic('mu')
    with pytest.raises(KeyError):
        poly_rot_2_model.harmonic('nu')


def test_d_hb_free_rotation(free_model):
    module = free_model.module
    assert free_model.d_hb('dth') == -module.from_label('1', (1,))
    assert str(free_model.d_hb('dth')) == '-t⊗1'
    assert free_model.d_hb('1').is_zero()
    assert not free_model.minimal.dhb_is_zero


def test_d_hb_two_torus(torus_model):
    module = torus_model.module
    assert torus_model.d_hb('dth1') == -module.from_label('1', (1,))
    assert torus_model.d_hb('dth2').is_zero()
    assert torus_model.d_hb('dth12') == -module.from_label('dth2', (1,))


def test_d_hb_vanishes_for_polynomial_rotation(poly_rot_2_model):
    mm = poly_rot_2_model.minimal
    assert mm.dhb_is_zero
    assert all(mm.matrix(n).is_zero() for n in range(poly_rot_2_model.weight_cap + 1))


def test_d_hb_is_R_G_linear(torus_model):
    mm = torus_model.minimal
    module = torus_model.module
    x = module.from_label('dth12', (2,))
    assert mm.apply(x) == -module.from_label('dth2', (3,))


def test_minimal_basis(free_model):
    mm = free_model.minimal
    assert [mm.render_basis(b) for b in mm.basis_in_degree(3)] == ['t⊗(dth)']
    assert [mm.render_basis(b) for b in mm.basis_in_degree(4)] == ['t^2⊗(1)']
    assert len(mm.basis(max_weight=4)) == 6


@pytest.mark.parametrize(
    'name, dims',
    [
        ('free-rotation', [1] + [0] * 10),
        ('two-torus-rotation', [1, 1] + [0] * 9),
        ('poly-rot-2', POLY_ROT_2_DIMS),
        ('poly-rot-2-trivial', POLY_ROT_2_DIMS),
        ('su2-free', [1] + [0] * 12),
    ],
)
def test_cohomology_matches_cartan(shipped, name, dims):
    datum = shipped[name]
    model = hbmodel.HirschBrown(datum)
    minimal = hb.cohomology(model)
    cartan = hb.cohomology_cartan(datum)
    assert minimal.dims == dims
    assert cartan.dims == dims
    assert minimal.window == cartan.window == model.weight_cap
    assert (minimal.source, cartan.source) == ('minimal', 'cartan')


def test_freeness(poly_rot_2_model, free_model):
    table = hb.cohomology(poly_rot_2_model)
    assert table.is_free_over_RG([1, 0, 2], [2])
    assert table.line().startswith('0:1, 1:0, 2:3, 3:0')
    assert not hb.cohomology(free_model).is_free_over_RG([1, 1], [2])
    assert hb.free_module_dims([1, 1], [2], 4) == [1, 1, 1, 1, 1]


def test_cohomology_table_views(poly_rot_2_model):
    table = hb.cohomology(poly_rot_2_model)
    df = table.to_df()
    assert list(df['dim']) == POLY_ROT_2_DIMS
    assert table[2] == 3
    x = sympy.Symbol('x')
    assert table.poincare_series().coeff(x, 4) == 3


def test_cohomology_representatives(free_rotation, free_model):
    table = hb.cohomology_cartan(free_rotation, 10, representatives=True)
    assert table.representatives[0] == [free_model.module.from_label('1')]
    assert all(not table.representatives[n] for n in range(1, 11))
    minimal = hb.cohomology_minimal(free_model.minimal, representatives=True)
    assert [str(x) for x in minimal.representatives[0]] == ['1']


def test_canonical_extension(poly_rot_2_model):
    module = poly_rot_2_model.module
    ext = poly_rot_2_model.canonical_extension('omega')
    assert ext == module.from_label('omega') + module.from_label('mu', (1,))
    ext = poly_rot_2_model.canonical_extension('muomega')
    assert ext == module.from_label('muomega') + Fraction(1, 2) * module.from_label('mu2', (1,))
    assert poly_rot_2_model.ops.apply_dG(ext).is_zero()


def test_canonical_extension_needs_vanishing_d_hb(free_model):
    with pytest.raises(NotCEF):
        free_model.canonical_extension('dth')


def test_twisted_product(poly_rot_2_model):
    module = poly_rot_2_model.module
    product = poly_rot_2_model.twisted_product('omega', 'omega')
    assert product == 2 * module.from_label('muomega', (1,))
    assert product.weight_part(0).is_zero()
    assert poly_rot_2_model.twisted_product('1', 'omega') == module.from_label('omega')
    assert poly_rot_2_model.twisted_product('omega', 'muomega').is_zero()
    assert poly_rot_2_model.gamma_witness('omega', 'omega').is_zero()


def test_twisted_product_unavailable(su2_free, free_model):
    with pytest.raises(NotAbelian):
        hbmodel.HirschBrown(su2_free).twisted_product('1', '1')
    with pytest.raises(NotCEF):
        free_model.twisted_product('1', 'dth')


def test_triple_product(poly_rot_2_model):
    one = poly_rot_2_model.harmonic('1')
    omega = poly_rot_2_model.harmonic('omega')
    assert all(hb.triple_product_check(poly_rot_2_model, omega, one, omega))


def test_dbar(poly_rot_2_model, free_model):
    assert hb.dbar_squared_zero(poly_rot_2_model)
    assert all(hb.check_dbar_trichotomy(poly_rot_2_model))
    assert all(hb.check_acyclic_complement(poly_rot_2_model))
    assert all(hb.check_dbar_trichotomy(free_model))
    assert all(hb.chain_map_check(free_model))


def test_transfer_identity(poly_rot_2_model):
    module = poly_rot_2_model.module
    x = module.from_label('omega') + 3 * module.from_label('mu2', (1,))
    report = hb.transfer_identity(poly_rot_2_model, x)
    assert report.passed
    assert report.get('element') == str(x)


@pytest.mark.parametrize(
    'name', ['free-rotation', 'two-torus-rotation', 'poly-rot-2', 'poly-rot-2-trivial', 'su2-free']
)
def test_random_transfer(shipped, name):
    check = hb.random_transfer_check(hb.HirschBrown(shipped[name], 10))
    assert check, check.line()
    assert check.name.endswith('on 50 random elements')


def test_random_elements(torus_model):
    elements = hb.random_elements(torus_model, 5, random_state=3)
    assert elements == hb.random_elements(torus_model, 5, random_state=3)
    window = torus_model.weight_cap - 2
    assert all(w <= window for x in elements for w in x.weights())


@pytest.mark.parametrize(
    'name', ['free-rotation', 'two-torus-rotation', 'poly-rot-2', 'poly-rot-2-trivial', 'su2-free']
)
def test_homotopy_identities(shipped, name):
    report = hb.homotopy_identities(shipped[name])
    assert report.passed, report.render()
    names = [c.name for c in report.checks]
    assert '(I⊗H) ψ⁻¹ φ⁻¹ i_H = I on R_G⊗ℋ' in names
    assert 'd_HB = (I⊗H)D̄ = φ d_G φ⁻¹' in names


def test_homotopy_identities_products(poly_rot_2_model):
    report = hb.homotopy_identities(poly_rot_2_model.datum, hb=poly_rot_2_model)
    names = [c.name for c in report.checks]
    assert '(a ∧̃ b) ∧̃ c = a ∧̃ (b ∧̃ c)' in names
    skipped = hb.homotopy_identities(hbmodel.datasets.free_rotation())
    assert 'd_HB is nonzero' in skipped.get('skipped', 'twisted product')


def test_homotopy_identities_raise(poly_rot_2_model, monkeypatch):
    model = hbmodel.HirschBrown(poly_rot_2_model.datum, 6)
    monkeypatch.setattr(model.ops, 'phi', lambda x: x)
    report = hb.homotopy_identities(model.datum, hb=model, raise_on_failure=False)
    assert not report.passed
    with pytest.raises(IdentityFailed):
        hb.homotopy_identities(model.datum, hb=model)
