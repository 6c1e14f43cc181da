"""Tests for nilpotent orbit combinatorics."""

import pytest
from hesslab.errors import IncomparableError, OutsideOrderThreeError
from hesslab.models import LocalSystemKind, Parity
from hesslab.schemas import Partition
from hesslab.services.orbit_service import orbit_service


def P(*parts):
    return Partition.of(*parts)


def test_partitions_of_five_order_three():
    """Test the five order-3 partitions of 5 in reverse-lex order."""
    got = [p.parts for p in orbit_service.partitions_of(5, max_part=3)]
    assert got == [(3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_partitions_of_rejects_nonpositive():
    """Test N < 1 is rejected."""
    with pytest.raises(ValueError):
        orbit_service.partitions_of(0)


def test_transpose():
    """Test conjugate partitions."""
    assert orbit_service.transpose(P(3, 2)) == P(2, 2, 1)
    assert orbit_service.transpose(P(1, 1, 1)) == P(3)


def test_orbit_dimension_examples():
    """Test orbit dimensions for small N."""
    assert orbit_service.orbit_dimension(P(1, 1, 1, 1, 1)) == 0
    assert orbit_service.orbit_dimension(P(3)) == 3
    assert orbit_service.orbit_dimension(P(2, 1)) == 2
    assert orbit_service.orbit_dimension(P(3, 1, 1)) == 7
    assert orbit_service.orbit_dimension(P(2, 1, 1, 1)) == 4
    assert orbit_service.orbit_dimension(P(3, 2, 2)) == 15


def test_orbit_dimension_rejects_even_n():
    """Test even N is outside the split pair."""
    with pytest.raises(ValueError):
        orbit_service.orbit_dimension(P(2, 2))


def test_parity_matches_dimension_up_to_21():
    """Test orbit_parity against orbit_dimension mod 2 for N <= 21."""
    for n in range(1, 11):
        for descriptor in orbit_service.order3_orbits(n):
            parity = orbit_service.orbit_parity(descriptor.partition)
            assert parity == descriptor.parity
            assert (parity == Parity.ODD) == (descriptor.dim % 2 == 1)


def test_parity_rejects_large_parts():
    """Test parts above 3 raise."""
    with pytest.raises(OutsideOrderThreeError):
        orbit_service.orbit_parity(P(4, 1))


def test_dominance():
    """Test dominance order comparisons."""
    assert orbit_service.dominance_leq(P(2, 1, 1, 1), P(3, 1, 1))
    assert orbit_service.dominance_leq(P(2, 2, 1), P(3, 1, 1))
    assert not orbit_service.dominance_leq(P(3, 1, 1), P(2, 2, 1))
    assert orbit_service.dominance_leq(P(3, 2), P(3, 2))


def test_dominance_incomparable():
    """Test partitions of different integers."""
    with pytest.raises(IncomparableError):
        orbit_service.dominance_leq(P(2, 1), P(3, 1))


def test_has_gaps():
    """Test gap detection."""
    assert orbit_service.has_gaps(P(3, 1, 1))
    assert orbit_service.has_gaps(P(3, 2))
    assert not orbit_service.has_gaps(P(2, 2, 1))
    assert not orbit_service.has_gaps(P(1, 1, 1))


def test_local_systems_component_group_cases():
    """Test local-system labels on the shapes with E1/E2/E3."""
    kinds = [s.kind for s in orbit_service.local_systems(P(3, 2, 2, 1, 1))]
    assert kinds == [LocalSystemKind.TRIVIAL, LocalSystemKind.E1, LocalSystemKind.E2, LocalSystemKind.E3]
    kinds = [s.kind for s in orbit_service.local_systems(P(3, 1, 1, 1, 1, 1, 1))]
    assert kinds == [LocalSystemKind.TRIVIAL, LocalSystemKind.E1]
    kinds = [s.kind for s in orbit_service.local_systems(P(3, 2, 2))]
    assert kinds == [LocalSystemKind.TRIVIAL, LocalSystemKind.E3]
    assert len(orbit_service.local_systems(P(3, 3, 3))) == 1


def test_local_systems_other_shapes():
    """Test OrbitNontrivial and generic character labels."""
    labels = orbit_service.local_systems(P(2, 1, 1, 1))
    assert [s.kind for s in labels] == [LocalSystemKind.TRIVIAL, LocalSystemKind.ORBIT_NONTRIVIAL]
    labels = orbit_service.local_systems(P(3, 2, 1, 1))
    assert len(labels) == 4
    assert all(s.kind == LocalSystemKind.CHARACTER for s in labels[1:])
    assert len({s.signs for s in labels[1:]}) == 3


def test_order3_orbit_counts():
    """Test the orbit tables for n = 1 and n = 2."""
    assert len(orbit_service.order3_orbits(1)) == 3
    assert len(orbit_service.order3_orbits(2)) == 5
    with pytest.raises(ValueError):
        orbit_service.order3_orbits(0)


def test_orbit_table_rows():
    """Test table rows carry dimension, parity, gaps and systems."""
    rows = orbit_service.orbit_table(2)
    first = rows[0]
    assert first["partition"] == [3, 2]
    assert set(first) == {"partition", "dim", "parity", "order3", "gaps", "systems"}
    assert rows[-1]["dim"] == 0 and rows[-1]["systems"] == ["Trivial"]


def test_image_closure():
    """Test closure of 2+2+1."""
    closure = orbit_service.image_closure(P(2, 2, 1))
    assert [p.parts for p in closure] == [(2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_partition_validation():
    """Test malformed partitions are rejected."""
    with pytest.raises(ValueError):
        Partition.of(1, 2)
    with pytest.raises(ValueError):
        Partition.of(2, 0)
    assert str(P(3, 2, 2)) == "3+2+2"
    assert P(3, 2, 2).exponents() == (1, 2, 0)


def dominance_table(N):
    parts = orbit_service.partitions_of(N)
    leq = {(p, q): orbit_service.dominance_leq(p, q) for p in parts for q in parts}
    return parts, leq


def test_transpose_is_involution():
    """Test transposing twice returns every partition of N <= 9."""
    for N in range(1, 10):
        for p in orbit_service.partitions_of(N):
            assert orbit_service.transpose(orbit_service.transpose(p)) == p


def test_dominance_is_partial_order():
    """Test reflexivity, antisymmetry and transitivity for N <= 9."""
    for N in range(1, 10):
        parts, leq = dominance_table(N)
        for p in parts:
            assert leq[p, p]
            for q in parts:
                if leq[p, q] and leq[q, p]:
                    assert p == q
                if not leq[p, q]:
                    continue
                for r in parts:
                    if leq[q, r]:
                        assert leq[p, r], (p, q, r)


def test_transpose_reverses_dominance():
    """Test p <= q iff transpose(q) <= transpose(p) for N <= 9."""
    for N in range(1, 10):
        parts, leq = dominance_table(N)
        transposed = {p: orbit_service.transpose(p) for p in parts}
        for p in parts:
            for q in parts:
                assert leq[p, q] == leq[transposed[q], transposed[p]], (p, q)
