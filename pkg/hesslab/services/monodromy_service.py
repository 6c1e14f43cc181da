"""Monodromy local systems E_ij and Etilde_ij: dimensions, decompositions, catalog."""

import logging
from math import comb
from typing import Dict, List, Tuple
from hesslab.errors import IndexRangeError
from hesslab.models import DecompositionSource, MonoFamily
from hesslab.schemas import CharacterClass, DecompositionResponse, DecompositionTable, IdentificationPair, MonoLabel
from hesslab.services.cohomology_service import cohomology_service

logger = logging.getLogger(__name__)


def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _require_odd(N: int) -> int:
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N must be odd and at least 3, got {N}")
    return (N - 1) // 2


class MonodromyService:
    """Service for monodromy representation data."""

    @staticmethod
    def sp_fundamental_dim(g: int, j: int) -> int:
        """Dimension of the Sp(2g) representation with highest weight omega_j."""
        if g < 0 or j < 0:
            raise ValueError(f"sp_fundamental_dim needs nonnegative arguments, got ({g}, {j})")
        if j > g:
            raise IndexRangeError(f"omega_{j} is not a fundamental weight of Sp({2 * g})")
        return _binom(2 * g, j) - _binom(2 * g, j - 2)

    @staticmethod
    def character_classes(N: int) -> List[CharacterClass]:
        """Characters of I_N by support size, then those of I_{N+1} containing N+1."""
        _require_odd(N)
        classes = [
            CharacterClass(ambient=N, size=size, requires_last=False, count=comb(N, size))
            for size in range(2, N + 1, 2)
        ]
        classes.extend(
            CharacterClass(ambient=N + 1, size=size, requires_last=True, count=comb(N, size - 1))
            for size in range(2, N + 2, 2)
        )
        return classes

    @staticmethod
    def curve_genus(size: int) -> int:
        """Genus of the hyperelliptic curve branched over |chi| = size points."""
        if size < 2 or size % 2:
            raise ValueError(f"support size must be even and at least 2, got {size}")
        return size // 2 - 1

    @staticmethod
    def dim_label(family: MonoFamily, N: int, i: int, j: int) -> int:
        """Rank of E_ij (C(N,2i) characters) or Etilde_ij (C(N,2i-1) characters) times dim P^j."""
        n = _require_odd(N)
        if family == MonoFamily.E:
            if not (1 <= i <= n and 0 <= j <= i - 1):
                raise IndexRangeError(f"E({i},{j}) out of range for N={N}")
            return comb(N, 2 * i) * MonodromyService.sp_fundamental_dim(i - 1, j)
        if family == MonoFamily.ETILDE:
            if not (1 <= i <= n + 1 and 0 <= j <= i - 1):
                raise IndexRangeError(f"Etilde({i},{j}) out of range for N={N}")
            return comb(N, 2 * i - 1) * MonodromyService.sp_fundamental_dim(i - 1, j)
        if family == MonoFamily.L:
            return comb(N, i)
        if family == MonoFamily.F:
            return MonodromyService.sp_fundamental_dim(n, j)
        return 1

    @staticmethod
    def label(family: MonoFamily, N: int, i: int = 0, j: int = 0) -> MonoLabel:
        """Build a MonoLabel with its dimension."""
        return MonoLabel(family=family, i=i, j=j, N=N, dim=MonodromyService.dim_label(family, N, i, j))

    @staticmethod
    def _summands(family: MonoFamily, N: int, m: int, top: int) -> List[MonoLabel]:
        r = N - m - 1
        summands = []
        for i in range(1, top + 1):
            if 2 * i < N - m + 1:
                continue
            l = min(r, 2 * i - 2 - r)
            for j in range(r % 2, l + 1, 2):
                summands.append(MonodromyService.label(family, N, i, j))
        return summands

    @staticmethod
    def decompose_X(N: int, m: int) -> DecompositionTable:
        """Primitive H^(N-m-1) of X_m as a sum of E_ij."""
        n = _require_odd(N)
        if not 1 <= m <= N - 1:
            raise IndexRangeError(f"m must lie in [1, {N - 1}], got {m}")
        summands = MonodromyService._summands(MonoFamily.E, N, m, n)
        return DecompositionTable(
            source=DecompositionSource.X, N=N, m=m,
            summands=tuple(summands), total_dim=sum(s.dim for s in summands),
        )

    @staticmethod
    def decompose_Xtilde_minus(N: int, m: int) -> DecompositionTable:
        """The sigma = -id part of primitive H^(N-m-1) of Xtilde_m as a sum of Etilde_ij."""
        n = _require_odd(N)
        if not 1 <= m <= N - 1:
            raise IndexRangeError(f"m must lie in [1, {N - 1}], got {m}")
        summands = MonodromyService._summands(MonoFamily.ETILDE, N, m, n + 1)
        return DecompositionTable(
            source=DecompositionSource.XTILDE_MINUS, N=N, m=m,
            summands=tuple(summands), total_dim=sum(s.dim for s in summands),
        )

    @staticmethod
    def plain_summands(N: int, m: int) -> List[MonoLabel]:
        """The j = 0 summands of decompose_X(N, m)."""
        return [s for s in MonodromyService.decompose_X(N, m).summands if s.j == 0]

    @staticmethod
    def identifications(N: int) -> List[IdentificationPair]:
        """Coincidences between E, Etilde, L, F and the constant system."""
        n = _require_odd(N)
        label = MonodromyService.label
        pairs = []
        for i in range(1, n + 1):
            k = 2 * i if 2 * i <= n else 2 * n - 2 * i + 1
            pairs.append(IdentificationPair(left=label(MonoFamily.E, N, i, 0), right=label(MonoFamily.L, N, k, 0)))
        for j in range(1, n + 1):
            pairs.append(IdentificationPair(left=label(MonoFamily.ETILDE, N, n + 1, j), right=label(MonoFamily.F, N, 0, j)))
        pairs.append(IdentificationPair(left=label(MonoFamily.ETILDE, N, n + 1, 0), right=label(MonoFamily.TRIVIAL, N)))
        for i in range(1, n + 1):
            pairs.append(IdentificationPair(left=label(MonoFamily.E, N, i, 0), right=label(MonoFamily.ETILDE, N, n + 1 - i, 0)))
        return pairs

    @staticmethod
    def catalog(N: int) -> List[MonoLabel]:
        """Pairwise non-isomorphic local systems occurring in the decompositions."""
        n = _require_odd(N)
        label = MonodromyService.label
        labels = [label(MonoFamily.E, N, i, j) for i in range(1, n + 1) for j in range(i)]
        labels.extend(label(MonoFamily.ETILDE, N, i, j) for i in range(1, n + 2) for j in range(1, i))
        labels.append(label(MonoFamily.ETILDE, N, n + 1, 0))
        return labels

    @staticmethod
    def catalog_from_decompositions(N: int) -> List[MonoLabel]:
        """Union of all decomposition summands, identifying Etilde_(i,0) with E_(n+1-i,0)."""
        n = _require_odd(N)
        seen: Dict[Tuple[str, int, int], MonoLabel] = {}
        for m in range(1, N):
            for table in (MonodromyService.decompose_X(N, m), MonodromyService.decompose_Xtilde_minus(N, m)):
                for s in table.summands:
                    key = s.key
                    if s.family == MonoFamily.ETILDE and s.j == 0 and s.i <= n:
                        key = (MonoFamily.E.value, n + 1 - s.i, 0)
                    seen.setdefault(key, s)
        return [seen[key] for key in sorted(seen)]

    @staticmethod
    def decomposition_report(N: int, m: int, tilde: bool = False) -> DecompositionResponse:
        """Decomposition table next to the primitive Betti number it must match."""
        cs = cohomology_service
        if tilde:
            table = MonodromyService.decompose_Xtilde_minus(N, m)
            oracle = cs.primitive_middle_betti(cs.xtilde_profile(N, m)) - cs.primitive_middle_betti(cs.x_profile(N, m))
        else:
            table = MonodromyService.decompose_X(N, m)
            oracle = cs.primitive_middle_betti(cs.x_profile(N, m))
        if table.total_dim != oracle:
            logger.warning(f"{table.source.value}({m}) for N={N}: total {table.total_dim}, oracle {oracle}")
        row = table.to_row()
        return DecompositionResponse(**row, oracle=oracle, match=table.total_dim == oracle)


# Service instance
monodromy_service = MonodromyService()
