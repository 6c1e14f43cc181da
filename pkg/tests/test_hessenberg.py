"""Tests for Hessenberg family images, dimensions and fiber polynomials."""

import pytest
from hesslab.errors import EmptyFiberError, IndexRangeError
from hesslab.models import Flavor, WittType
from hesslab.schemas import FiberQuery, Partition, PoincarePolynomial
from hesslab.services.hessenberg_service import hessenberg_service
from hesslab.services.qcombinatorics_service import qcombinatorics_service


def P(*parts):
    return Partition.of(*parts)


def test_image_partition():
    """Test open-orbit partitions of the E and O families."""
    assert hessenberg_service.image_partition(Flavor.E, 1, 5) == P(2, 1, 1, 1)
    assert hessenberg_service.image_partition(Flavor.O, 1, 5) == P(1, 1, 1, 1, 1)
    assert hessenberg_service.image_partition(Flavor.E, 2, 5) == P(3, 2)
    assert hessenberg_service.image_partition(Flavor.O, 2, 5) == P(3, 1, 1)
    assert hessenberg_service.image_partition(Flavor.E, 3, 7) == P(3, 2, 2)


def test_image_partition_errors():
    """Test step and N validation."""
    with pytest.raises(IndexRangeError):
        hessenberg_service.image_partition(Flavor.E, 3, 5)
    with pytest.raises(ValueError):
        hessenberg_service.image_partition(Flavor.E, 1, 4)
    with pytest.raises(ValueError):
        hessenberg_service.image_partition(Flavor.EPERP, 1, 5)


def test_family_dimension_small():
    """Test rank-computed family dimensions for N = 5."""
    assert hessenberg_service.family_dimension(Flavor.E, 1, 5) == 4
    assert hessenberg_service.family_dimension(Flavor.O, 1, 5) == 3
    assert hessenberg_service.family_dimension(Flavor.E, 2, 5) == 8


def test_family_dimension_closed_form():
    """Test the closed forms and the parity of E and O families."""
    for n in range(1, 4):
        N = 2 * n + 1
        for l in range(1, n + 1):
            e = hessenberg_service.family_dimension(Flavor.E, l, N)
            o = hessenberg_service.family_dimension(Flavor.O, l, N)
            assert e == hessenberg_service.printed_dimension(Flavor.E, l, n)
            assert o == hessenberg_service.printed_dimension(Flavor.O, l, n)
            assert e % 2 == 0 and o % 2 == 1


def test_perp_families_complement():
    """Test Eperp + E fills the flag variety twice plus the trace-free symmetric matrices."""
    N = 5
    for l in (1, 2):
        e = hessenberg_service.family_dimension(Flavor.E, l, N)
        eperp = hessenberg_service.family_dimension(Flavor.EPERP, l, N)
        base = hessenberg_service.flag_variety_dimension(l, N)
        assert e + eperp == 2 * base + N * (N + 1) // 2 - 1


def test_family_dimension_rejects_large_step():
    """Test l beyond (N-1)/2."""
    with pytest.raises(ValueError):
        hessenberg_service.family_dimension(Flavor.E, 3, 5)


def test_fiber_poincare_examples():
    """Test fiber polynomials against hand-computed pavings."""
    fiber = hessenberg_service.fiber_poincare
    assert fiber(Flavor.E, 2, 7, P(2, 2, 2, 1)).coeffs == (1, 1)
    assert fiber(Flavor.O, 2, 5, P(2, 1, 1, 1)).coeffs == (1, 1)
    assert fiber(Flavor.E, 2, 5, P(2, 1, 1, 1)).coeffs == (1, 2, 1)
    assert fiber(Flavor.O, 2, 7, P(3, 1, 1, 1, 1)).coeffs == (1, 2, 1)
    for N in (3, 5, 7, 9):
        assert fiber(Flavor.E, 1, N, Partition.from_exponents({2: 1, 1: N - 2})) == PoincarePolynomial.one()


def test_fiber_poincare_over_zero():
    """Test the fiber over x = 0 is the whole flag variety."""
    poly = hessenberg_service.fiber_poincare(Flavor.E, 2, 7, P(1, 1, 1, 1, 1, 1, 1))
    assert poly.evaluate(3) == 14560


def test_fiber_poincare_outside_image():
    """Test fibers over orbits outside the image closure are empty."""
    assert hessenberg_service.fiber_poincare(Flavor.O, 1, 5, P(2, 2, 1)).is_zero
    assert hessenberg_service.fiber_poincare(Flavor.E, 1, 7, P(2, 2, 2, 1)).is_zero


def test_fiber_reduce():
    """Test stripping size-3 blocks."""
    query = FiberQuery(flavor=Flavor.O, m=2, N=7, partition=P(3, 1, 1, 1, 1))
    reduced = hessenberg_service.fiber_reduce(query)
    assert (reduced.m, reduced.N, reduced.partition) == (1, 4, P(1, 1, 1, 1))


def test_fiber_reduce_empty():
    """Test too many size-3 blocks give an empty fiber."""
    query = FiberQuery(flavor=Flavor.E, m=1, N=5, partition=P(3, 1, 1))
    with pytest.raises(EmptyFiberError):
        hessenberg_service.fiber_reduce(query)
    assert hessenberg_service.fiber_poincare(Flavor.E, 1, 5, P(3, 1, 1)).is_zero


def test_fiber_query_validation():
    """Test malformed fiber queries."""
    with pytest.raises(ValueError):
        FiberQuery(flavor=Flavor.E, m=1, N=5, partition=P(2, 1, 1))
    with pytest.raises(ValueError):
        FiberQuery(flavor=Flavor.EPERP, m=1, N=5, partition=P(2, 1, 1, 1))


def test_grassmannian_fiber_targets():
    """Test fibers over 3^i 2^(2m-1-2i) 1^r are isotropic Grassmannians."""
    for m in range(1, 7):
        for i in range(m):
            N, partition, expected = hessenberg_service.grassmannian_fiber_target(m, i)
            assert N % 2 == 1
            assert partition.n_total == N
            assert hessenberg_service.fiber_poincare(Flavor.E, m, N, partition) == expected


def test_generic_quadric_fiber():
    """Test the O step-2 fiber over 3 1^(2n-2) is a smooth quadric."""
    for n in range(2, 6):
        N = 2 * n + 1
        partition = Partition.from_exponents({3: 1, 1: N - 3})
        expected = qcombinatorics_service.quadric_count(2 * n - 4, WittType.PLUS)
        assert hessenberg_service.fiber_poincare(Flavor.O, 2, N, partition) == expected


def test_fiber_queries_cover_closure():
    """Test the fiber query list is the image closure."""
    queries = hessenberg_service.fiber_queries(Flavor.E, 2, 5)
    assert queries[0] == P(3, 2)
    assert queries[-1] == P(1, 1, 1, 1, 1)
    assert P(2, 2, 1) in queries
