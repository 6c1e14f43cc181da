"""The Fourier matching map on E_ij and Etilde_ij and its consistency suite."""

import logging
from typing import Any, Dict, List, Optional, Set, Tuple
from hesslab.errors import IndexRangeError
from hesslab.models import CheckStatus, LocalSystemKind, MatchStatus, MonoFamily, Parity
from hesslab.schemas import CheckResult, ConsistencyReport, FourierImage, LocalSystemLabel, MonoLabel, Partition
from hesslab.services.monodromy_service import monodromy_service
from hesslab.services.orbit_service import orbit_service

logger = logging.getLogger(__name__)

Exponents = Tuple[int, int, int]


def _even_cases(n: int, i: int, j: int) -> Dict[str, Exponents]:
    """All three case formulas for the image of E_(i,2j)."""
    return {
        "a": (2 * (n - i) + 1, 2 * (i + j - n) - 1, 2 * i - 4 * j),
        "b": (2 * j, 2 * (n - i - j) + 1, 4 * i - 2 * n - 2 * j - 1),
        "c": (2 * j, 2 * i - 4 * j, 2 * n - 4 * i + 2 * j + 1),
    }


def _odd_cases(n: int, i: int, j: int) -> Dict[str, Exponents]:
    """All three case formulas for the image of E_(i,2j-1)."""
    return {
        "a": (2 * (n - i) + 1, 2 * (i + j - n - 1), 2 * i - 4 * j + 2),
        "b": (2 * j - 1, 2 * (n - i - j + 1), 4 * i - 2 * j - 2 * n),
        "c": (2 * j - 1, 2 * (i - 2 * j + 1), 2 * n - 4 * i + 2 * j),
    }


ODD_SYSTEMS = {"a": LocalSystemKind.E1, "b": LocalSystemKind.E2, "c": LocalSystemKind.E3}


def _case(n: int, i: int, j: int) -> str:
    if i + j >= n + 1:
        return "a"
    if 2 * i - j >= n + 1:
        return "b"
    return "c"


def _relaxed_cases(n: int, i: int, j: int) -> List[str]:
    """Cases whose conditions hold once each boundary is widened by one."""
    cases = []
    if i + j >= n + 1:
        cases.append("a")
    if i + j <= n + 1 and 2 * i - j >= n:
        cases.append("b")
    if i + j <= n + 1 and 2 * i - j <= n + 1:
        cases.append("c")
    return cases


def _valid(n: int, exponents: Exponents) -> bool:
    return min(exponents) >= 0 and 3 * exponents[0] + 2 * exponents[1] + exponents[2] == 2 * n + 1


def _orbit(n: int, exponents: Exponents) -> Partition:
    if not _valid(n, exponents):
        raise ValueError(f"case formula produced exponents {exponents}, not a partition of {2 * n + 1}")
    return Partition.from_exponents({3: exponents[0], 2: exponents[1], 1: exponents[2]})


def _system(orbit: Partition, kind: LocalSystemKind) -> LocalSystemLabel:
    for label in orbit_service.local_systems(orbit):
        if label.kind == kind:
            return label
    raise ValueError(f"orbit {orbit} carries no local system {kind.value}")


def _require_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


class SpringerService:
    """Service for the Fourier matching map."""

    @staticmethod
    def fourier_image_even(n: int, i: int, j: int) -> FourierImage:
        """Image of E_(i,2j) for N = 2n+1; j is the half-index."""
        _require_n(n)
        if not (1 <= i <= n and 0 <= 2 * j <= i - 1):
            raise IndexRangeError(f"E({i},{2 * j}) out of range for n={n}")
        orbit = _orbit(n, _even_cases(n, i, j)[_case(n, i, j)])
        proven = j == 0 or (i, j) == (n, 1)
        return FourierImage(
            source=monodromy_service.label(MonoFamily.E, 2 * n + 1, i, 2 * j),
            orbit=orbit,
            local_system=LocalSystemLabel(kind=LocalSystemKind.TRIVIAL, orbit=orbit),
            status=MatchStatus.PROVEN if proven else MatchStatus.CONJECTURAL,
        )

    @staticmethod
    def fourier_image_odd(n: int, i: int, j: int) -> FourierImage:
        """Image of E_(i,2j-1) for N = 2n+1."""
        _require_n(n)
        if not (1 <= i <= n and 1 <= 2 * j - 1 <= i - 1):
            raise IndexRangeError(f"E({i},{2 * j - 1}) out of range for n={n}")
        case = _case(n, i, j)
        orbit = _orbit(n, _odd_cases(n, i, j)[case])
        proven = (i, j) == (n, 1) or (n >= 4 and (i, j) in ((n, 2), (n - 1, 1)))
        return FourierImage(
            source=monodromy_service.label(MonoFamily.E, 2 * n + 1, i, 2 * j - 1),
            orbit=orbit,
            local_system=_system(orbit, ODD_SYSTEMS[case]),
            status=MatchStatus.PROVEN if proven else MatchStatus.CONJECTURAL,
        )

    @staticmethod
    def fourier_image(n: int, i: int, j: int) -> FourierImage:
        """Image of E_(i,j) through the even or odd formula."""
        if j % 2 == 0:
            return SpringerService.fourier_image_even(n, i, j // 2)
        return SpringerService.fourier_image_odd(n, i, (j + 1) // 2)

    @staticmethod
    def proven_matchings(n: int) -> List[FourierImage]:
        """Every established correspondence, stated with the explicit orbits."""
        _require_n(n)
        N = 2 * n + 1
        label = monodromy_service.label
        trivial = LocalSystemKind.TRIVIAL
        images: List[FourierImage] = []

        def add(source: MonoLabel, exponents: Exponents, kind: LocalSystemKind) -> None:
            orbit = _orbit(n, exponents)
            images.append(FourierImage(
                source=source, orbit=orbit, local_system=_system(orbit, kind), status=MatchStatus.PROVEN,
            ))

        def plain(i: int) -> Exponents:
            if 2 * i <= n:
                return 0, 2 * i, 2 * n - 4 * i + 1
            return 0, 2 * n - 2 * i + 1, 4 * i - 2 * n - 1

        for i in range(1, n + 1):
            add(label(MonoFamily.E, N, i, 0), plain(i), trivial)
        if n >= 2:
            add(label(MonoFamily.E, N, n, 1), (1, 0, 2 * n - 2), LocalSystemKind.E1)
        if n >= 3:
            add(label(MonoFamily.E, N, n, 2), (1, 1, 2 * n - 4), trivial)
        if n >= 4:
            add(label(MonoFamily.E, N, n, 3), (1, 2, 2 * n - 6), LocalSystemKind.E1)
            add(label(MonoFamily.E, N, n - 1, 1), (1, 2, 2 * n - 6), LocalSystemKind.E2)

        # the generic hyperelliptic family and its wedge powers
        for j in range(1, n + 1):
            add(label(MonoFamily.ETILDE, N, n + 1, j), (0, j, N - 2 * j), LocalSystemKind.ORBIT_NONTRIVIAL)
            add(label(MonoFamily.F, N, 0, j), (0, j, N - 2 * j), LocalSystemKind.ORBIT_NONTRIVIAL)
        add(label(MonoFamily.ETILDE, N, n + 1, 0), (0, 0, N), trivial)
        for i in range(1, n + 1):
            add(label(MonoFamily.ETILDE, N, i, 0), plain(n + 1 - i), trivial)
        return images

    @staticmethod
    def full_map(n: int) -> List[FourierImage]:
        """Images of every E_ij and Etilde_ij; unresolved Etilde images are Unknown."""
        _require_n(n)
        N = 2 * n + 1
        images = [SpringerService.fourier_image(n, i, j) for i in range(1, n + 1) for j in range(i)]
        known = {
            img.source.key: img for img in SpringerService.proven_matchings(n)
            if img.source.family == MonoFamily.ETILDE
        }
        for i in range(1, n + 2):
            for j in range(i):
                source = monodromy_service.label(MonoFamily.ETILDE, N, i, j)
                images.append(known.get(source.key) or FourierImage(source=source, status=MatchStatus.UNKNOWN))
        return images

    @staticmethod
    def consistency_suite(n: int) -> ConsistencyReport:
        """Run the consistency checks; failures are report entries, never exceptions."""
        _require_n(n)
        logger.info(f"Springer consistency suite for n={n}")
        suite = _Suite(n)
        checks = [suite.run(name) for name in INVARIANTS]
        failed = [c.name for c in checks if c.status == CheckStatus.FAIL]
        if failed:
            logger.warning(f"Springer suite n={n}: failing checks {failed}")
        logger.info(f"Springer suite n={n}: {len(checks) - len(failed)}/{len(checks)} checks without failure")
        return ConsistencyReport(n=n, checks=checks, images=SpringerService.full_map(n))


INVARIANTS = {
    "support": "springer: images are local systems on N_1^3 orbits",
    "parity": "springer: index parity equals orbit-dimension parity",
    "injectivity": "springer: the map on E_ij is injective",
    "proven_reproduction": "springer: case formulas reproduce every proven image",
    "even_exhaustion": "springer: even images biject onto nonzero even gap-free orbits",
    "odd_exhaustion": "springer: odd images are the nontrivial systems on odd orbits",
    "trichotomy": "springer: case conditions partition the indices and boundary formulas agree",
    "curve_case": "springer: E_(i,1) images lie on 3 2^(2j) 1^(2n-4j-2) with E2 or E3",
    "unknown_index": "springer: the unresolved E_(?,1) target is hit once, through case (c)",
}

# (ok, lhs, rhs, detail), or None when the check does not apply
Outcome = Optional[Tuple[bool, Any, Any, str]]


class _Suite:
    """The consistency checks for one n."""

    def __init__(self, n: int):
        self.n = n
        self.even = [(i, j) for i in range(1, n + 1) for j in range(0, (i - 1) // 2 + 1)]
        self.odd = [(i, j) for i in range(1, n + 1) for j in range(1, i // 2 + 1)]
        self.images = [SpringerService.fourier_image_even(n, i, j) for i, j in self.even]
        self.images += [SpringerService.fourier_image_odd(n, i, j) for i, j in self.odd]

    def run(self, name: str) -> CheckResult:
        invariant = INVARIANTS[name]
        try:
            outcome = getattr(self, name)()
        except ValueError as e:
            return CheckResult(name=name, status=CheckStatus.FAIL, detail=str(e), invariant=invariant)
        if outcome is None:
            return CheckResult(name=name, status=CheckStatus.SKIPPED, detail=f"not applicable for n={self.n}",
                               invariant=invariant)
        ok, lhs, rhs, detail = outcome
        return CheckResult(name=name, status=CheckStatus.PASS if ok else CheckStatus.FAIL,
                           lhs=lhs, rhs=rhs, detail=detail, invariant=invariant)

    @staticmethod
    def _tally(bad: List[str], total: int) -> Outcome:
        return not bad, total - len(bad), total, ", ".join(bad)

    def support(self) -> Outcome:
        bad = [
            img.source.name for img in self.images
            if img.orbit.max_part > 3 or img.orbit.n_total != 2 * self.n + 1
            or img.local_system not in orbit_service.local_systems(img.orbit)
        ]
        return self._tally(bad, len(self.images))

    def parity(self) -> Outcome:
        bad = [
            img.source.name for img in self.images
            if orbit_service.orbit_dimension(img.orbit) % 2 != img.source.j % 2
        ]
        return self._tally(bad, len(self.images))

    def injectivity(self) -> Outcome:
        targets = {(img.orbit, img.local_system.name) for img in self.images}
        return len(targets) == len(self.images), len(targets), len(self.images), ""

    def proven_reproduction(self) -> Outcome:
        proven = [img for img in SpringerService.proven_matchings(self.n) if img.source.family == MonoFamily.E]
        bad = []
        for img in proven:
            predicted = SpringerService.fourier_image(self.n, img.source.i, img.source.j)
            if (predicted.orbit, predicted.local_system) != (img.orbit, img.local_system):
                bad.append(img.source.name)
        return self._tally(bad, len(proven))

    def even_exhaustion(self) -> Outcome:
        got = {img.orbit for img in self.images if img.source.j % 2 == 0}
        target = {
            d.partition for d in orbit_service.order3_orbits(self.n)
            if d.parity == Parity.EVEN and not d.has_gaps and d.partition.max_part > 1
        }
        return got == target and len(got) == len(self.even), len(got), len(target), ""

    def odd_exhaustion(self) -> Outcome:
        got = {(img.orbit, img.local_system.kind) for img in self.images if img.source.j % 2 == 1}
        target: Set[Tuple[Partition, LocalSystemKind]] = set()
        for d in orbit_service.order3_orbits(self.n):
            if d.parity == Parity.ODD:
                target.update(
                    (d.partition, s.kind) for s in orbit_service.local_systems(d.partition)
                    if s.kind != LocalSystemKind.TRIVIAL
                )
        return got == target and len(self.odd) == len(target), len(self.odd), len(target), ""

    def trichotomy(self) -> Outcome:
        n = self.n
        bad = []
        for formulas, indices, tag in ((_even_cases, self.even, "even"), (_odd_cases, self.odd, "odd")):
            for i, j in indices:
                strict = [
                    i + j >= n + 1,
                    i + j <= n and 2 * i - j >= n + 1,
                    i + j <= n and 2 * i - j <= n,
                ]
                cases = formulas(n, i, j)
                orbits = {cases[c] for c in _relaxed_cases(n, i, j) if _valid(n, cases[c])}
                if sum(strict) != 1 or len(orbits) != 1:
                    bad.append(f"{tag}({i},{j})")
        return self._tally(bad, len(self.even) + len(self.odd))

    def curve_case(self) -> Outcome:
        n = self.n
        bad = []
        for i in range(2, n):
            img = SpringerService.fourier_image_odd(n, i, 1)
            three, two, one = img.orbit.exponents()
            half = two // 2
            ok = (
                three == 1 and two % 2 == 0 and 1 <= half <= (n - 1) // 2 and one == 2 * n - 4 * half - 2
                and img.local_system.kind in (LocalSystemKind.E2, LocalSystemKind.E3)
            )
            if not ok:
                bad.append(img.source.name)
        return self._tally(bad, max(n - 2, 0))

    def unknown_index(self) -> Outcome:
        n = self.n
        if n < 4:
            return None
        target = _orbit(n, (1, 2, 2 * n - 6))
        hits = []
        for i in range(2, n + 1):
            img = SpringerService.fourier_image_odd(n, i, 1)
            if img.orbit == target and img.local_system.kind == LocalSystemKind.E3:
                hits.append(i)
        return hits == [2] and _case(n, 2, 1) == "c", len(hits), 1, ", ".join(f"E({i},1)" for i in hits)


# Service instance
springer_service = SpringerService()
