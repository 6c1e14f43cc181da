"""Tests for q-analog counting polynomials."""

import pytest
from hesslab.errors import IndexRangeError
from hesslab.models import WittType
from hesslab.schemas import PoincarePolynomial
from hesslab.services.finitefield_service import finitefield_service as ff
from hesslab.services.qcombinatorics_service import qcombinatorics_service as qc


def test_gaussian_binomial():
    """Test [4 choose 2]_q."""
    poly = qc.gaussian_binomial(4, 2)
    assert poly.coeffs == (1, 1, 2, 1, 1)
    assert poly.evaluate(1) == 6
    assert qc.gaussian_binomial(2, 3).is_zero
    assert qc.gaussian_binomial(5, 0) == PoincarePolynomial.one()


def test_gaussian_binomial_negative():
    """Test negative arguments are rejected."""
    with pytest.raises(ValueError):
        qc.gaussian_binomial(-1, 0)


def test_projective_count():
    """Test points of projective space."""
    assert qc.projective_count(2).coeffs == (1, 1, 1)
    assert qc.projective_count(0) == PoincarePolynomial.one()
    assert qc.projective_count(-1).is_zero


def test_ogr_count_odd():
    """Test isotropic subspaces of odd-dimensional split spaces."""
    assert qc.ogr_count(1, 3, WittType.SPLIT).coeffs == (1, 1)
    assert qc.ogr_count(0, 5, WittType.SPLIT) == PoincarePolynomial.one()
    # OGr(2, 5) = P^3
    assert qc.ogr_count(2, 5, WittType.SPLIT).coeffs == (1, 1, 1, 1)


def test_ogr_count_even():
    """Test isotropic subspaces of four-dimensional spaces of both types."""
    assert qc.ogr_count(1, 4, WittType.PLUS).coeffs == (1, 2, 1)
    assert qc.ogr_count(2, 4, WittType.PLUS).coeffs == (2, 2)
    assert qc.ogr_count(1, 4, WittType.MINUS).coeffs == (1, 0, 1)
    assert qc.ogr_count(2, 4, WittType.MINUS).is_zero


def test_ogr_count_errors():
    """Test range and type errors."""
    with pytest.raises(IndexRangeError):
        qc.ogr_count(2, 3, WittType.SPLIT)
    with pytest.raises(ValueError):
        qc.ogr_count(1, 3, WittType.PLUS)
    with pytest.raises(ValueError):
        qc.ogr_count(1, 4, WittType.SPLIT)


def test_quadric_count():
    """Test smooth quadric point counts."""
    assert qc.quadric_count(1, WittType.ODD_SPLIT).coeffs == (1, 1)
    assert qc.quadric_count(2, WittType.PLUS) == qc.ogr_count(1, 4, WittType.PLUS)
    assert qc.quadric_count(2, WittType.MINUS).coeffs == (1, 0, 1)
    assert qc.quadric_count(0, WittType.PLUS).coeffs == (2,)
    assert qc.quadric_count(-1, WittType.PLUS).is_zero
    with pytest.raises(ValueError):
        qc.quadric_count(2, WittType.SPLIT)


def test_quadric_count_matches_ogr_lines():
    """Test quadric points equal isotropic lines for split spaces."""
    for d in range(3, 12, 2):
        assert qc.quadric_count(d - 2, WittType.ODD_SPLIT) == qc.ogr_count(1, d, WittType.SPLIT)
    for d in range(4, 12, 2):
        assert qc.quadric_count(d - 2, WittType.PLUS) == qc.ogr_count(1, d, WittType.PLUS)


def test_isotropic_line_count():
    """Test line counts in degenerate quadratic spaces."""
    assert qc.isotropic_line_count(0, 3).coeffs == (1, 1)
    assert qc.isotropic_line_count(1, 1) == PoincarePolynomial.one()
    assert qc.isotropic_line_count(2, 2, WittType.PLUS).coeffs == (1, 1, 2)
    assert qc.isotropic_line_count(0, 1).is_zero


def test_poincare_polynomial_arithmetic():
    """Test polynomial helpers."""
    one_plus_q = PoincarePolynomial(coeffs=(1, 1))
    assert (one_plus_q * one_plus_q).coeffs == (1, 2, 1)
    assert (one_plus_q + PoincarePolynomial.one()).coeffs == (2, 1)
    assert one_plus_q.shift(2).coeffs == (0, 0, 1, 1)
    assert PoincarePolynomial(coeffs=(1, 0, 0)).coeffs == (1,)
    assert str(PoincarePolynomial(coeffs=(1, 2, 0, 1))) == "1 + 2q + q^3"
    assert str(PoincarePolynomial.zero()) == "0"
    assert PoincarePolynomial.monomial(3).degree == 3
    with pytest.raises(ValueError):
        PoincarePolynomial(coeffs=(1, -1))


def witt_types(d):
    return (WittType.SPLIT,) if d % 2 else (WittType.PLUS, WittType.MINUS)


def test_gaussian_binomial_symmetry():
    """Test [n choose k] = [n choose n-k] and palindromic coefficients."""
    for n in range(0, 11):
        for k in range(n + 1):
            poly = qc.gaussian_binomial(n, k)
            assert poly == qc.gaussian_binomial(n, n - k)
            assert poly.coeffs == poly.coeffs[::-1]
            assert poly.degree == k * (n - k)


def test_ogr_count_degree():
    """Test the degree k(d-k) - k(k+1)/2 for odd split spaces."""
    for d in range(1, 16, 2):
        for k in range(d // 2 + 1):
            assert qc.ogr_count(k, d, WittType.SPLIT).degree == k * (d - k) - k * (k + 1) // 2


@pytest.mark.parametrize("q", [2, 3])
def test_gaussian_binomial_matches_subspace_enumeration(q):
    """Test [n choose k] at q counts k-subspaces of F_q^n for n <= 6."""
    for n in range(0, 7):
        for k in range(n + 1):
            assert ff.count_subspaces(k, n, q) == qc.gaussian_binomial(n, k).evaluate(q), (n, k)


def test_ogr_count_matches_isotropic_enumeration():
    """Test isotropic Grassmannian counts against enumeration over F_3 for d <= 7."""
    for d in range(1, 8):
        for witt in witt_types(d):
            gram = ff.quadratic_space(d, witt, 3)
            for k in range(d // 2 + 1):
                expected = qc.ogr_count(k, d, witt).evaluate(3)
                assert ff.count_subspaces(k, d, 3, gram) == expected, (k, d, witt)


def test_quadric_count_matches_point_enumeration():
    """Test smooth quadric counts against isotropic lines over F_3 for D <= 5."""
    for d in range(2, 8):
        for witt in witt_types(d):
            gram = ff.quadratic_space(d, witt, 3)
            assert ff.count_subspaces(1, d, 3, gram) == qc.quadric_count(d - 2, witt).evaluate(3), (d, witt)


def test_minus_type_small_cases():
    """Test Minus-type counts in dimension 4 over F_3."""
    gram = ff.quadratic_space(4, WittType.MINUS, 3)
    assert ff.count_subspaces(1, 4, 3, gram) == qc.ogr_count(1, 4, WittType.MINUS).evaluate(3) == 10
    assert ff.count_subspaces(2, 4, 3, gram) == 0
    assert ff.count_subspaces(1, 2, 3, ff.quadratic_space(2, WittType.MINUS, 3)) == 0
