"""Point-count polynomials for Grassmannians, isotropic Grassmannians, projective spaces and quadrics."""

import logging
from functools import lru_cache
from hesslab.errors import IndexRangeError
from hesslab.models import WittType
from hesslab.schemas import PoincarePolynomial

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _gaussian(n: int, k: int) -> PoincarePolynomial:
    """q-Pascal recursion [n,k] = q^(n-k) [n-1,k-1] + [n-1,k]."""
    if k < 0 or k > n:
        return PoincarePolynomial.zero()
    if k == 0 or k == n:
        return PoincarePolynomial.one()
    return _gaussian(n - 1, k - 1).shift(n - k) + _gaussian(n - 1, k)


def _one_plus_q_power(i: int) -> PoincarePolynomial:
    """q^i + 1."""
    if i == 0:
        return PoincarePolynomial(coeffs=(2,))
    return PoincarePolynomial(coeffs=(1,) + (0,) * (i - 1) + (1,))


class QCombinatoricsService:
    """Service for q-analog counting polynomials."""

    @staticmethod
    def gaussian_binomial(n: int, k: int) -> PoincarePolynomial:
        """Gaussian binomial [n choose k]_q; zero when k > n."""
        if n < 0 or k < 0:
            raise ValueError(f"gaussian_binomial needs nonnegative arguments, got ({n}, {k})")
        return _gaussian(n, k)

    @staticmethod
    def projective_count(D: int) -> PoincarePolynomial:
        """1 + q + ... + q^D; zero for D < 0."""
        if D < 0:
            return PoincarePolynomial.zero()
        return PoincarePolynomial(coeffs=(1,) * (D + 1))

    @staticmethod
    def ogr_count(k: int, d: int, witt: WittType) -> PoincarePolynomial:
        """Count isotropic k-planes in a nondegenerate quadratic space of dimension d."""
        if k < 0 or d < 0:
            raise ValueError(f"ogr_count needs nonnegative arguments, got ({k}, {d})")
        if 2 * k > d:
            raise IndexRangeError(f"no isotropic subspace of dimension {k} in a {d}-dimensional space")
        if k == 0:
            return PoincarePolynomial.one()
        if d % 2 == 1:
            if witt not in (WittType.SPLIT, WittType.ODD_SPLIT):
                raise ValueError(f"odd dimension {d} only admits the split type, got {witt.value}")
            l = (d - 1) // 2
            result = _gaussian(l, k)
            for i in range(l - k + 1, l + 1):
                result = result * _one_plus_q_power(i)
            return result
        if witt not in (WittType.PLUS, WittType.MINUS):
            raise ValueError(f"even dimension {d} needs type Plus or Minus, got {witt.value}")
        l = d // 2
        if witt == WittType.PLUS:
            result = _gaussian(l, k)
            for i in range(l - k, l):
                result = result * _one_plus_q_power(i)
            return result
        # Minus type: Witt index l-1
        if k > l - 1:
            return PoincarePolynomial.zero()
        result = _gaussian(l - 1, k)
        for i in range(l - k + 1, l + 1):
            result = result * _one_plus_q_power(i)
        return result

    @staticmethod
    def quadric_count(D: int, witt: WittType) -> PoincarePolynomial:
        """Count points on a smooth quadric of dimension D (D = -1 is the empty quadric)."""
        if D < -1:
            raise ValueError(f"quadric dimension must be at least -1, got {D}")
        if D == -1:
            return PoincarePolynomial.zero()
        base = (1,) * (D + 1)
        if D % 2 == 1:
            return PoincarePolynomial(coeffs=base)
        if witt == WittType.PLUS:
            coeffs = list(base)
            coeffs[D // 2] += 1
            return PoincarePolynomial(coeffs=tuple(coeffs))
        if witt == WittType.MINUS:
            coeffs = list(base)
            coeffs[D // 2] -= 1
            return PoincarePolynomial(coeffs=tuple(coeffs))
        raise ValueError(f"even-dimensional quadric needs type Plus or Minus, got {witt.value}")

    @staticmethod
    def isotropic_line_count(radical_dim: int, nondeg_dim: int, witt: WittType = WittType.PLUS) -> PoincarePolynomial:
        """Isotropic lines in a quadratic space with a radical of the given dimension.

        Lines inside the radical contribute P^(r-1); the others project onto an
        isotropic point of the nondegenerate quotient with q^r lifts each.
        """
        if radical_dim < 0 or nondeg_dim < 0:
            raise ValueError(f"dimensions must be nonnegative, got ({radical_dim}, {nondeg_dim})")
        inside = QCombinatoricsService.projective_count(radical_dim - 1)
        if nondeg_dim <= 1:
            return inside
        if nondeg_dim % 2 == 1:
            witt = WittType.ODD_SPLIT
        outside = QCombinatoricsService.quadric_count(nondeg_dim - 2, witt).shift(radical_dim)
        return inside + outside


# Service instance
qcombinatorics_service = QCombinatoricsService()
