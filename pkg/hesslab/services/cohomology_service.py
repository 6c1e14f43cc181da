"""Euler characteristics and primitive middle Betti numbers of smooth complete intersections."""

import logging
from math import prod
from sympy import Poly, Symbol, ZZ
from hesslab.errors import InconsistentProfileError
from hesslab.models import WittType
from hesslab.schemas import CIProfile
from hesslab.services.qcombinatorics_service import qcombinatorics_service

logger = logging.getLogger(__name__)

H = Symbol("h")


class CohomologyService:
    """Service for the complete-intersection cohomology oracle."""

    @staticmethod
    def profile(ambient_dim: int, quadrics: int) -> CIProfile:
        """Profile of `quadrics` quadrics in P^ambient_dim."""
        return CIProfile(ambient_dim=ambient_dim, degrees=(2,) * quadrics)

    @staticmethod
    def x_profile(N: int, m: int) -> CIProfile:
        """X_m: m quadrics in P^(N-1)."""
        return CohomologyService.profile(N - 1, m)

    @staticmethod
    def xtilde_profile(N: int, m: int) -> CIProfile:
        """Xtilde_m: m+1 quadrics in P^N."""
        return CohomologyService.profile(N, m + 1)

    @staticmethod
    def ci_euler(profile: CIProfile) -> int:
        """chi = (prod d) * [h^D] (1+h)^(K+1) / prod(1 + d h)."""
        D = profile.dim
        series = Poly((1 + H) ** (profile.ambient_dim + 1), H, domain=ZZ)
        for d in profile.degrees:
            # 1/(1 + d h) truncated at h^D
            inverse = Poly([(-d) ** t for t in reversed(range(D + 1))], H, domain=ZZ)
            series = series * inverse
        coefficient = int(series.coeff_monomial(H ** D))
        return prod(profile.degrees) * coefficient

    @staticmethod
    def middle_betti(profile: CIProfile) -> int:
        """b_D, taking the other Betti numbers from projective space."""
        D = profile.dim
        chi = CohomologyService.ci_euler(profile)
        if D % 2 == 0:
            return chi - D
        return D + 1 - chi

    @staticmethod
    def primitive_middle_betti(profile: CIProfile) -> int:
        """Dimension of the primitive part of H^D."""
        D = profile.dim
        b_mid = CohomologyService.middle_betti(profile)
        primitive = b_mid - 1 if D % 2 == 0 else b_mid
        if primitive < 0:
            logger.warning(f"Negative primitive Betti number {primitive} for {profile}")
            raise InconsistentProfileError(f"inconsistent profile: primitive middle Betti number {primitive} for {profile}")
        return primitive

    @staticmethod
    def quadric_euler_check(D: int) -> bool:
        """chi of a smooth D-dimensional quadric equals its point count at q = 1."""
        chi = CohomologyService.ci_euler(CohomologyService.profile(D + 1, 1))
        witt = WittType.ODD_SPLIT if D % 2 else WittType.PLUS
        return chi == qcombinatorics_service.quadric_count(D, witt).evaluate(1)


# Service instance
cohomology_service = CohomologyService()
