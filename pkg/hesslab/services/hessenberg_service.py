"""Hessenberg families over isotropic two-step flags: images, dimensions and fiber polynomials."""

import logging
from functools import lru_cache
from math import ceil
from typing import List, Tuple
from sympy import Matrix, QQ
from sympy.polys.matrices import DomainMatrix
from hesslab.errors import EmptyFiberError, IndexRangeError
from hesslab.models import Flavor, WittType
from hesslab.schemas import FamilyDescriptor, FiberQuery, Partition, PoincarePolynomial
from hesslab.services.orbit_service import orbit_service
from hesslab.services.qcombinatorics_service import qcombinatorics_service

logger = logging.getLogger(__name__)


def _witt(dim: int) -> WittType:
    """Type of the induced forms for the split representative."""
    return WittType.PLUS if dim % 2 == 0 else WittType.SPLIT


def _symmetric_index(N: int) -> dict:
    """Index of the unknown S_ab (a <= b) of a symmetric N x N matrix."""
    index = {}
    for a in range(N):
        for b in range(a, N):
            index[(a, b)] = len(index)
    return index


@lru_cache(maxsize=None)
def _fiber_dimension(flavor: Flavor, l: int, N: int) -> Tuple[int, int]:
    """(dim of the fiber space, dim g_1) by exact rank over QQ.

    g_1 is parametrised as x = J S with J antidiagonal and S symmetric; V_k is
    spanned by the first k basis vectors, so V_k^perp is spanned by the first
    N - k. A vanishing entry x_rc is the vanishing of S_(N-1-r, c).
    """
    index = _symmetric_index(N)
    unknowns = len(index)

    def unit(r: int, c: int) -> List[int]:
        row = [0] * unknowns
        a, b = sorted((N - 1 - r, c))
        row[index[(a, b)]] = 1
        return row

    trace = [0] * unknowns
    for r in range(N):
        a, b = sorted((N - 1 - r, r))
        trace[index[(a, b)]] += 1

    constraints = [trace]
    if flavor in (Flavor.E, Flavor.EPERP, Flavor.O, Flavor.OPERP):
        # x V_l = 0
        for c in range(l):
            constraints.extend(unit(r, c) for r in range(N))
        # x V_l^perp (E) or x V_(l-1)^perp (O) lands in V_(l-1)
        last = N - l if flavor in (Flavor.E, Flavor.EPERP) else N - l + 1
        for c in range(l, last):
            constraints.extend(unit(r, c) for r in range(l - 1, N))

    def rank(rows: List[List[int]]) -> int:
        return DomainMatrix.from_Matrix(Matrix(rows)).convert_to(QQ).to_sparse().rank()

    g1 = unknowns - rank([trace])
    sigma = unknowns - rank(constraints)
    return sigma, g1


class HessenbergService:
    """Service for Hessenberg families and their fibers."""

    @staticmethod
    def image_partition(flavor: Flavor, l: int, N: int) -> Partition:
        """Partition of the open orbit in the image of the E or O family."""
        if N % 2 == 0 or N < 3:
            raise ValueError(f"N must be odd and at least 3, got {N}")
        if not 1 <= l <= (N - 1) // 2:
            raise IndexRangeError(f"l must lie in [1, {(N - 1) // 2}], got {l}")
        if flavor not in (Flavor.E, Flavor.O):
            raise ValueError(f"image partitions are defined for E and O, got {flavor.value}")
        if 3 * l > N + 1:
            return Partition.from_exponents({3: N - 2 * l, 2: 3 * l - N})
        if flavor == Flavor.E:
            return Partition.from_exponents({3: l - 1, 2: 1, 1: N + 1 - 3 * l})
        return Partition.from_exponents({3: l - 1, 1: N + 3 - 3 * l})

    @staticmethod
    def flag_variety_dimension(l: int, N: int) -> int:
        """dim K/P_l for the isotropic flag V_(l-1) in V_l."""
        return l * (N - l) - l * (l + 1) // 2 + l - 1

    @staticmethod
    def family_dimension(flavor: Flavor, l: int, N: int) -> int:
        """dim K/P_l plus the rank-computed dimension of the fiber space."""
        family = FamilyDescriptor(flavor=flavor, l=l, N=N)
        sigma, g1 = _fiber_dimension(family.flavor, family.l, family.N)
        base = HessenbergService.flag_variety_dimension(l, N)
        if flavor in (Flavor.EPERP, Flavor.OPERP):
            return base + g1 - sigma
        return base + sigma

    @staticmethod
    def printed_dimension(flavor: Flavor, m: int, n: int) -> int:
        """Closed forms m(4n-3m+5)-2n-2 for E and m(4n-3m+5)-2n-3 for O."""
        value = m * (4 * n - 3 * m + 5) - 2 * n - 2
        return value if flavor == Flavor.E else value - 1

    @staticmethod
    def fiber_reduce(query: FiberQuery) -> FiberQuery:
        """Strip the size-3 blocks: (m, N, 3^i 2^j 1^k) -> (m-i, N-3i, 2^j 1^k)."""
        i, j, k = query.partition.exponents()
        if i == 0:
            return query
        if i >= query.m:
            raise EmptyFiberError(f"empty fiber: {i} blocks of size 3 leave no room for step {query.m}")
        return FiberQuery(
            flavor=query.flavor,
            m=query.m - i,
            N=query.N - 3 * i,
            partition=Partition.from_exponents({2: j, 1: k}),
        )

    @staticmethod
    def upsilon_poincare(N: int, m: int, j: int) -> PoincarePolynomial:
        """Paving polynomial of the E-fiber over 2^j 1^(N-2j)."""
        if j < 0 or 2 * j > N or m < 1:
            raise ValueError(f"invalid upsilon arguments (N={N}, m={m}, j={j})")
        qc = qcombinatorics_service
        low = max(ceil(m + j - N / 2), ceil(j / 2), j + 1 - m, 0)
        high = min(j, m)
        total = PoincarePolynomial.zero()
        for k in range(low, high + 1):
            piece = (
                qc.ogr_count(j - k, j, _witt(j))
                * qc.ogr_count(m - k, N - 2 * j, _witt(N - 2 * j))
                * qc.projective_count(m - j + k - 1)
            )
            total = total + piece.shift((m - k) * (j - k))
        return total

    @staticmethod
    def gamma_poincare(N: int, m: int, j: int) -> PoincarePolynomial:
        """Paving polynomial of the O-fiber over 2^j 1^(N-2j)."""
        if j < 0 or 2 * j > N or m < 1:
            raise ValueError(f"invalid gamma arguments (N={N}, m={m}, j={j})")
        qc = qcombinatorics_service
        low = max(ceil(m + j - N / 2 - 1), ceil(j / 2), j + 1 - m, 0)
        high = min(j, m - 1)
        total = PoincarePolynomial.zero()
        for k in range(low, high + 1):
            radical = j - k
            nondeg = N - 2 * (m - 1 + j - k)
            lines = qc.isotropic_line_count(radical, nondeg, _witt(nondeg))
            piece = (
                qc.ogr_count(j - k, j, _witt(j))
                * qc.ogr_count(m - 1 - k, N - 2 * j, _witt(N - 2 * j))
                * lines
            )
            total = total + piece.shift((m - 1 - k) * (j - k))
        return total

    @staticmethod
    def fiber_poincare(flavor: Flavor, m: int, N: int, partition: Partition) -> PoincarePolynomial:
        """Reduce the fiber and read off its paving polynomial."""
        query = FiberQuery(flavor=flavor, m=m, N=N, partition=partition)
        try:
            reduced = HessenbergService.fiber_reduce(query)
        except EmptyFiberError as e:
            logger.debug(f"{e}; returning the zero polynomial")
            return PoincarePolynomial.zero()
        _, j, _ = reduced.partition.exponents()
        if reduced.flavor == Flavor.E:
            return HessenbergService.upsilon_poincare(reduced.N, reduced.m, j)
        return HessenbergService.gamma_poincare(reduced.N, reduced.m, j)

    @staticmethod
    def fiber_queries(flavor: Flavor, m: int, N: int) -> List[Partition]:
        """Partitions in the closure of the family's image."""
        return orbit_service.image_closure(HessenbergService.image_partition(flavor, m, N))

    @staticmethod
    def grassmannian_fiber_target(m: int, i: int) -> Tuple[int, Partition, PoincarePolynomial]:
        """(N, 3^i 2^(2m-1-2i) 1^r, OGr(m-1-i, 2m-1-2i)) with the smallest admissible odd N."""
        if not 0 <= i <= m - 1:
            raise IndexRangeError(f"i must lie in [0, {m - 1}], got {i}")
        n = max(m, ceil((4 * m - 3 - i) / 2))
        N = 2 * n + 1
        ones = N - 3 * i - 2 * (2 * m - 1 - 2 * i)
        partition = Partition.from_exponents({3: i, 2: 2 * m - 1 - 2 * i, 1: ones})
        expected = qcombinatorics_service.ogr_count(m - 1 - i, 2 * m - 1 - 2 * i, WittType.SPLIT)
        return N, partition, expected


# Service instance
hessenberg_service = HessenbergService()
