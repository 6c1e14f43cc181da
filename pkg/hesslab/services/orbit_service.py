"""Partition combinatorics for nilpotent K-orbits of (SL(N), SO(N)), N odd."""

import itertools
import logging
from typing import Any, Dict, List, Optional
from sympy.utilities.iterables import partitions
from hesslab.errors import IncomparableError, OutsideOrderThreeError
from hesslab.models import LocalSystemKind, Parity
from hesslab.schemas import LocalSystemLabel, OrbitDescriptor, Partition

logger = logging.getLogger(__name__)


def _require_odd(p: Partition) -> None:
    if p.n_total % 2 == 0:
        raise ValueError(f"N must be odd, got N={p.n_total} for {p}")


def _require_order3(p: Partition) -> None:
    if p.max_part > 3:
        raise OutsideOrderThreeError(f"partition {p} is outside N_1^3")


class OrbitService:
    """Service for nilpotent orbit data."""

    @staticmethod
    def partitions_of(N: int, max_part: Optional[int] = None) -> List[Partition]:
        """All partitions of N (parts at most max_part), reverse-lexicographic."""
        if N < 1:
            raise ValueError(f"N must be positive, got {N}")
        if max_part is not None and max_part < 1:
            raise ValueError(f"max_part must be positive, got {max_part}")
        found = set()
        # sympy reuses the yielded dict, so freeze it immediately
        for counts in partitions(N, k=max_part):
            parts = tuple(sorted(itertools.chain.from_iterable([part] * mult for part, mult in counts.items()), reverse=True))
            found.add(parts)
        return [Partition(parts=parts) for parts in sorted(found, reverse=True)]

    @staticmethod
    def transpose(p: Partition) -> Partition:
        """Conjugate partition."""
        return Partition(parts=tuple(sum(1 for part in p.parts if part > k) for k in range(p.max_part)))

    @staticmethod
    def orbit_dimension(p: Partition) -> int:
        """Half the SL_N-orbit dimension: (N^2 - sum of squared transpose parts) / 2."""
        _require_odd(p)
        N = p.n_total
        squares = sum(c * c for c in OrbitService.transpose(p).parts)
        return (N * N - squares) // 2

    @staticmethod
    def dominance_leq(p: Partition, q: Partition) -> bool:
        """True iff every prefix sum of p is at most the matching prefix sum of q."""
        if p.n_total != q.n_total:
            raise IncomparableError(f"incomparable: {p} partitions {p.n_total}, {q} partitions {q.n_total}")
        length = max(len(p.parts), len(q.parts))
        left = itertools.accumulate(p.parts + (0,) * (length - len(p.parts)))
        right = itertools.accumulate(q.parts + (0,) * (length - len(q.parts)))
        return all(a <= b for a, b in zip(left, right))

    @staticmethod
    def orbit_parity(p: Partition) -> Parity:
        """Odd iff the multiplicity of 3 is odd and the multiplicity of 2 is even."""
        _require_order3(p)
        i, j, _ = p.exponents()
        return Parity.ODD if i % 2 == 1 and j % 2 == 0 else Parity.EVEN

    @staticmethod
    def has_gaps(p: Partition) -> bool:
        """True iff some integer in [1, max part] is not a part."""
        present = set(p.parts)
        return any(k not in present for k in range(1, p.max_part + 1))

    @staticmethod
    def local_systems(p: Partition) -> List[LocalSystemLabel]:
        """Trivial plus the 2^(d-1) - 1 nontrivial local systems on O_p."""
        _require_order3(p)
        i, j, k = p.exponents()
        labels = [LocalSystemLabel(kind=LocalSystemKind.TRIVIAL, orbit=p)]
        distinct = sum(1 for e in (i, j, k) if e > 0)
        if distinct == 1:
            return labels
        if i == 0:
            labels.append(LocalSystemLabel(kind=LocalSystemKind.ORBIT_NONTRIVIAL, orbit=p, signs=(-1,)))
            return labels
        if i % 2 == 1 and j % 2 == 0:
            # characters on (gamma_1, gamma_2)
            if j > 0 and k > 0:
                labels.extend([
                    LocalSystemLabel(kind=LocalSystemKind.E1, orbit=p, signs=(-1, 1)),
                    LocalSystemLabel(kind=LocalSystemKind.E2, orbit=p, signs=(-1, -1)),
                    LocalSystemLabel(kind=LocalSystemKind.E3, orbit=p, signs=(1, -1)),
                ])
            elif k > 0:
                labels.append(LocalSystemLabel(kind=LocalSystemKind.E1, orbit=p, signs=(-1,)))
            else:
                logger.debug(f"{p}: the third component-group case is read with '= 0'; single label E3")
                labels.append(LocalSystemLabel(kind=LocalSystemKind.E3, orbit=p, signs=(-1,)))
            return labels
        for signs in itertools.product((1, -1), repeat=distinct - 1):
            if all(s == 1 for s in signs):
                continue
            labels.append(LocalSystemLabel(kind=LocalSystemKind.CHARACTER, orbit=p, signs=signs))
        return labels

    @staticmethod
    def orbit_descriptor(p: Partition) -> OrbitDescriptor:
        """Collect dimension, parity and gap data for an orbit."""
        dim = OrbitService.orbit_dimension(p)
        return OrbitDescriptor(
            partition=p,
            dim=dim,
            parity=Parity.ODD if dim % 2 else Parity.EVEN,
            order3=p.max_part <= 3,
            has_gaps=OrbitService.has_gaps(p),
        )

    @staticmethod
    def order3_orbits(n: int) -> List[OrbitDescriptor]:
        """Descriptors of every orbit in N_1^3 for N = 2n+1."""
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        return [OrbitService.orbit_descriptor(p) for p in OrbitService.partitions_of(2 * n + 1, max_part=3)]

    @staticmethod
    def orbit_table(n: int) -> List[Dict[str, Any]]:
        """Rows of the N_1^3 orbit table with local-system names."""
        rows = []
        for descriptor in OrbitService.order3_orbits(n):
            row = descriptor.to_row()
            row["systems"] = [label.name for label in OrbitService.local_systems(descriptor.partition)]
            rows.append(row)
        return rows

    @staticmethod
    def image_closure(p: Partition) -> List[Partition]:
        """Partitions of order at most 3 lying in the closure of O_p."""
        return [
            r for r in OrbitService.partitions_of(p.n_total, max_part=3)
            if OrbitService.dominance_leq(r, p)
        ]


# Service instance
orbit_service = OrbitService()
