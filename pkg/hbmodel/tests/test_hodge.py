from fractions import Fraction

import pytest

from hbmodel import hodge, la
from hbmodel._errors import DegreeOutOfRange, IdentityFailed, InnerNotPositiveDefinite, InvalidComplex


def interval():
    # two vertices and one edge
    return hodge.GradedComplex(
        [['a', 'b'], ['e']], {0: la.RatMatrix.from_dense([[-1, 1]])}
    )


def weighted():
    return hodge.GradedComplex(
        [['a'], ['b', 'c']],
        {0: la.RatMatrix.from_dense([[1], [1]])},
        {1: la.RatMatrix.from_dense([[1, 0], [0, 2]])},
    )


def test_codifferential_transpose():
    c = hodge.GradedComplex([['x'], ['y']], {0: la.RatMatrix.from_dense([[1]])})
    assert hodge.codifferential(c)[1] == la.RatMatrix.from_dense([[1]])


def test_codifferential_inner():
    c = hodge.GradedComplex(
        [['x'], ['y']],
        {0: la.RatMatrix.from_dense([[1]])},
        {1: la.RatMatrix.from_dense([[2]])},
    )
    assert hodge.codifferential(c)[1] == la.RatMatrix.from_dense([[2]])


def test_codifferential_checks_adjointness(monkeypatch):
    from hbmodel.hodge import _hodge

    c = hodge.GradedComplex([['x'], ['y']], {0: la.RatMatrix.from_dense([[1]])})
    monkeypatch.setattr(_hodge, 'inverse', lambda m: la.inverse(m) * 2)
    with pytest.raises(IdentityFailed, match='degree 1'):
        hodge.codifferential(c)


def test_greens_needs_a_solution(monkeypatch):
    from hbmodel.hodge import _hodge

    monkeypatch.setattr(_hodge, 'solve', lambda m, b: None)
    with pytest.raises(IdentityFailed, match='orthogonal complement'):
        hodge.hodge_data(interval())


def test_zero_differential_is_all_harmonic():
    c = hodge.GradedComplex([['1'], ['dth']])
    h = hodge.hodge_data(c, check=True)
    assert all(d.is_zero() for d in h.codifferential)
    assert h.harmonic_dims() == [1, 1]
    assert h.harmonic_projector[1] == la.RatMatrix.identity(1)
    assert h.greens[0].is_zero() and h.greens[1].is_zero()


def test_interval():
    h = hodge.hodge_data(interval(), check=True)
    assert h.harmonic_dims() == [1, 0]
    assert list(h.harmonic_basis[0][0]) == [1, 1]
    assert h.laplacian[1] == la.RatMatrix.from_dense([[2]])
    assert h.greens[1] == la.RatMatrix.from_dense([[Fraction(1, 2)]])
    assert hodge.betti_numbers(interval()) == [1, 0]


def test_weighted_inner_product():
    c = weighted()
    h = hodge.hodge_data(c, check=True)
    assert h.harmonic_dims() == [0, 1]
    assert c.render(1, h.harmonic_basis[1][0]) == '-2*b + c'
    harmonic, exact, coexact = hodge.decompose(h, 1, c.basis_vector(1, 0))
    assert list(harmonic) == [Fraction(2, 3), Fraction(-1, 3)]
    assert list(exact) == [Fraction(1, 3), Fraction(1, 3)]
    assert la.is_zero_vector(coexact)
    assert list(h.greens[1].dot(c.basis_vector(1, 0))) == [Fraction(1, 9), Fraction(1, 9)]


def test_greens_identity(poly_rot_2):
    c = poly_rot_2.complex
    h = hodge.hodge_data(c)
    for m in c.degrees:
        eye = la.RatMatrix.identity(c.dim(m))
        assert h.laplacian[m] @ h.greens[m] == eye - h.harmonic_projector[m]
        assert h.harmonic_projector[m] @ h.harmonic_projector[m] == h.harmonic_projector[m]
    assert all(passed for _, passed in h.check())


def test_poly_rot_2(poly_rot_2):
    c = poly_rot_2.complex
    h = hodge.hodge_data(c)
    assert h.harmonic_dims() == [1, 0, 2]
    assert h.laplacian[0] == la.RatMatrix.from_dense([[0, 0, 0], [0, 1, 0], [0, 0, 4]])
    mu2 = c.basis_vector(0, 2)
    assert list(h.greens[0].dot(mu2)) == [0, 0, Fraction(1, 4)]
    harmonic, exact, coexact = h.decompose(0, c.basis_vector(0, 1))
    assert la.is_zero_vector(harmonic) and la.is_zero_vector(exact)
    assert list(coexact) == [0, 1, 0]


def test_decompose_parts(poly_rot_2):
    c = poly_rot_2.complex
    h = hodge.hodge_data(c)
    v = la.vector([3, -1, 2])
    harmonic, exact, coexact = hodge.decompose(h, 0, v)
    assert la.vectors_equal(harmonic + exact + coexact, v)
    boundary = c.d(0).dot(v)
    harmonic, exact, coexact = hodge.decompose(h, 1, boundary)
    assert la.is_zero_vector(harmonic) and la.is_zero_vector(coexact)
    assert la.vectors_equal(exact, boundary)
    with pytest.raises(DegreeOutOfRange):
        hodge.decompose(h, 5, v)


def test_parallel_matches_serial(poly_rot_2):
    c = poly_rot_2.complex
    serial = hodge.hodge_data(c, n_jobs=1)
    parallel = hodge.hodge_data(c, n_jobs=2)
    assert serial.greens == parallel.greens
    assert serial.harmonic_projector == parallel.harmonic_projector


def test_invalid_complexes():
    with pytest.raises(InvalidComplex) as e:
        hodge.GradedComplex(
            [['x'], ['y'], ['z']],
            {0: la.RatMatrix.from_dense([[1]]), 1: la.RatMatrix.from_dense([[1]])},
        )
    assert e.value.witness == 'x'
    with pytest.raises(InnerNotPositiveDefinite):
        hodge.GradedComplex([['x']], inner={0: la.RatMatrix.from_dense([[-1]])})
    with pytest.raises(ValueError):
        hodge.GradedComplex([['x'], ['y']], {0: la.RatMatrix.from_dense([[1, 1]])})


def test_empty_complex():
    c = hodge.GradedComplex([])
    h = hodge.hodge_data(c)
    assert c.dims == []
    assert h.harmonic_dims() == []
