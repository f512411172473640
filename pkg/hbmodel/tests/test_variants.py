from fractions import Fraction

import pytest

from hbmodel import eq, hb


def test_conjugate(poly_rot_2):
    variant = eq.conjugate(poly_rot_2, 1)
    assert variant.complex.labels == poly_rot_2.complex.labels
    assert variant.name == 'conjugate(poly-rot-2)'
    assert variant.weight_cap == poly_rot_2.weight_cap
    assert eq.validate(variant, 6).passed
    assert hb.cohomology_cartan(variant, 6).dims == hb.cohomology_cartan(poly_rot_2, 6).dims


def test_conjugate_is_seeded(two_torus):
    assert eq.conjugate(two_torus, 5) == eq.conjugate(two_torus, 5)


def test_tensor(free_rotation):
    torus = eq.tensor(free_rotation, free_rotation)
    assert torus.complex.labels == (('1.1',), ('1.dth', 'dth.1'), ('dth.dth',))
    assert torus.t_degrees == (2, 2)
    assert torus.abelian
    report = eq.validate(torus, 4)
    assert report.passed
    assert report.product_ok
    # a free torus action on the torus has the cohomology of a point
    assert hb.cohomology_cartan(torus, 4).dims == [1, 0, 0, 0, 0]


def test_tensor_contraction_signs(free_rotation):
    torus = eq.tensor(free_rotation, free_rotation)
    # 1.dth, dth.1 in degree 1
    assert torus.contraction(0, 2).todense().tolist() == [[1], [0]]
    # i on the right factor passes dth on the left
    right = torus.contraction(1, 2).todense()
    assert right.tolist() == [[0], [-1]]
    assert all(isinstance(v, Fraction) for v in right.flat)
    assert torus.contraction(1, 1).todense().tolist() == [[1, 0]]


def test_tensor_model(free_rotation):
    torus = eq.tensor(free_rotation, free_rotation)
    model = hb.HirschBrown(torus, 4)
    assert hb.cohomology(model).dims == [1, 0, 0, 0, 0]
    assert hb.homotopy_identities(torus, hb=model).passed


def test_direct_sum(free_rotation, su2_free):
    both = eq.direct_sum(free_rotation, free_rotation)
    assert both.complex.labels == (('1_a', '1_b'), ('dth_a', 'dth_b'))
    assert both.product is None
    assert eq.validate(both, 4).passed
    assert hb.cohomology_cartan(both, 4).dims == [2, 0, 0, 0, 0]
    with pytest.raises(ValueError, match='equal generator degrees'):
        eq.direct_sum(free_rotation, su2_free)


def test_random_variants_are_valid():
    variants = eq.random_variants(6, random_state=2)
    assert len(variants) == 6
    for datum in variants:
        assert eq.validate(datum, 2 * max(datum.max_t_degree, 2)).fatal_passed, datum.name


def test_random_variants_identities():
    for datum in eq.random_variants(20):
        assert eq.validate(datum, 10).passed, datum.name
        model = hb.HirschBrown(datum, 10)
        report = hb.homotopy_identities(datum, hb=model, raise_on_failure=False)
        assert report.passed, (datum.name, [c.name for c in report.failures])
        assert hb.cohomology(model).dims == hb.cohomology_cartan(datum, model.weight_cap).dims
