"""Prime-field oracles: nilpotent representatives, flag counts, point counts and configuration checks."""

import itertools
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, List, Optional, Sequence, Tuple
import numpy as np
from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix
from hesslab.config import settings
from hesslab.errors import OracleBudgetError, OutsideOrderThreeError
from hesslab.models import Flavor, WittType
from hesslab.schemas import NilpotentRep, Partition, RegularTuple
from hesslab.utils.modp import batch_nullspace, batch_rref, digits, nullspace, projective_points, rank

logger = logging.getLogger(__name__)

CHUNK = 1 << 16


class _Budget:
    """Thread-safe enumeration budget."""

    def __init__(self, subspaces: int, rows: int):
        self.subspaces = subspaces
        self.rows = rows
        self.used_subspaces = 0
        self.used_rows = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def spend(self, subspaces: int = 0, rows: int = 0) -> None:
        with self._lock:
            self.used_subspaces += subspaces
            self.used_rows += rows
            if self.exhausted or self.used_subspaces > self.subspaces or self.used_rows > self.rows:
                self.exhausted = True
                raise OracleBudgetError(
                    f"oracle too large: budget of {self.subspaces} subspaces / {self.rows} rows exceeded"
                )


@lru_cache(maxsize=None)
def _eta_table(p: int) -> np.ndarray:
    """Quadratic character of every residue mod p by Euler's criterion."""
    table = np.array([pow(x, (p - 1) // 2, p) for x in range(p)], dtype=np.int64)
    table[table == p - 1] = -1
    table.setflags(write=False)
    return table


def _run(tasks: Sequence[Any], fn: Callable[[Any], int], threads: int) -> int:
    """Sum fn over tasks, optionally across a thread pool."""
    if threads <= 1 or len(tasks) <= 1:
        return sum(fn(t) for t in tasks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(fn, tasks))


def _echelon_rows(pivots: Tuple[int, ...], r: int, dim: int, p: int, gram: Optional[np.ndarray]) -> np.ndarray:
    """Row r of every reduced echelon basis with these pivots, isotropic ones only when gram is given."""
    free = [c for c in range(pivots[r] + 1, dim) if c not in pivots]
    rows = np.zeros((p ** len(free), dim), dtype=np.int64)
    rows[:, pivots[r]] = 1
    rows[:, free] = digits(np.arange(p ** len(free), dtype=np.int64), len(free), p)
    if gram is None:
        return rows
    return rows[np.einsum("ij,jk,ik->i", rows, gram, rows) % p == 0]


def _extend(prefixes: np.ndarray, rows: np.ndarray, gram: Optional[np.ndarray], p: int) -> np.ndarray:
    """Append each row to each prefix it is orthogonal to."""
    if gram is None or prefixes.shape[1] == 0:
        i, j = np.indices((len(prefixes), len(rows))).reshape(2, -1)
    else:
        i, j = np.nonzero(((prefixes @ gram @ rows.T) % p == 0).all(axis=1))
    return np.concatenate([prefixes[i], rows[j][:, None, :]], axis=1)


def _walk(
    pivots: Tuple[int, ...],
    dim: int,
    p: int,
    gram: Optional[np.ndarray],
    meter: "_Budget",
    leaf: Callable[[np.ndarray], int],
) -> int:
    """Sum leaf over chunks of the echelon bases with the given pivots."""
    levels = [_echelon_rows(pivots, r, dim, p, gram) for r in range(len(pivots))]
    prefixes = np.zeros((1, 0, dim), dtype=np.int64)
    for rows in levels[:-1]:
        meter.spend(rows=len(prefixes) * len(rows))
        prefixes = _extend(prefixes, rows, gram, p)
    rows = levels[-1]
    step = max(1, CHUNK // max(1, len(rows)))
    total = 0
    for start in range(0, len(prefixes), step):
        chunk = prefixes[start:start + step]
        meter.spend(rows=len(chunk) * len(rows))
        bases = _extend(chunk, rows, gram, p)
        meter.spend(subspaces=len(bases))
        if len(bases):
            total += leaf(bases)
    return total


def _flag_counts(V: np.ndarray, G: np.ndarray, M: np.ndarray, psi: np.ndarray, p: int, flavor: Flavor) -> int:
    """Hyperplanes W completing each V of a stack to a flag of the given flavor, summed.

    W^perp = V^perp + <z>, where z runs over the pivot unit vectors of rref(V G)
    combined by psi; conditions are read off the symmetric form M = G x.
    """
    m = V.shape[1]
    reduced, _, pivots = batch_rref((V @ G) % p, p)
    P = batch_nullspace(reduced, pivots, p)
    closed = ~((P @ M @ P.transpose(0, 2, 1)) % p).any(axis=(1, 2))
    Mz = M[pivots]
    D = (P @ Mz.transpose(0, 2, 1)) % p
    hits = ((D @ psi.T) % p == 0).all(axis=1)
    if flavor == Flavor.O:
        Q = np.take_along_axis(Mz, np.repeat(pivots[:, None, :], m, axis=1), axis=2)
        hits &= np.einsum("fi,bij,fj->bf", psi, Q, psi) % p == 0
    return int((hits & closed[:, None]).sum())


class FiniteFieldService:
    """Service for brute-force enumeration over prime fields."""

    @staticmethod
    def quadratic_character(a: int, p: int) -> int:
        """Legendre symbol of a mod p (0 for a = 0)."""
        return int(_eta_table(p)[a % p])

    @staticmethod
    def nilpotent_representative(partition: Partition, p: int) -> NilpotentRep:
        """Self-adjoint nilpotent x of the given Jordan type with a split Gram matrix."""
        if partition.max_part > 3:
            raise OutsideOrderThreeError(f"partition {partition} is outside N_1^3")
        if p == 2 or not isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        N = partition.n_total
        x = np.zeros((N, N), dtype=np.int64)
        G = np.zeros((N, N), dtype=np.int64)
        i, j, k = partition.exponents()
        s = 0
        for _ in range(i):
            x[s + 1, s] = x[s + 2, s + 1] = 1
            G[s, s + 2] = G[s + 2, s] = G[s + 1, s + 1] = 1
            s += 3
        twos = [s + 2 * t for t in range(j)]
        for t in range(j):
            x[twos[t] + 1, twos[t]] = 1
        for a, b in zip(twos[0::2], twos[1::2]):
            G[a, b + 1] = G[b + 1, a] = G[a + 1, b] = G[b, a + 1] = 1
        if j % 2:
            v = twos[-1]
            G[v, v + 1] = G[v + 1, v] = 1
        s += 2 * j
        ones = list(range(s, s + k))
        for a, b in zip(ones[0::2], ones[1::2]):
            G[a, b] = G[b, a] = 1
        if k % 2:
            G[ones[-1], ones[-1]] = 1

        if ((x.T @ G - G @ x) % p).any():
            raise AssertionError(f"representative for {partition} is not self-adjoint")
        if rank(G, p) != N:
            raise AssertionError(f"Gram matrix for {partition} is degenerate")
        power = np.eye(N, dtype=np.int64)
        for step in range(1, 4):
            power = (power @ x) % p
            expected = sum(max(part - step, 0) for part in partition.parts)
            if rank(power, p) != expected:
                raise AssertionError(f"representative for {partition} has the wrong Jordan type")
        return NilpotentRep(
            x=tuple(tuple(int(v) for v in row) for row in x),
            gram=tuple(tuple(int(v) for v in row) for row in G),
            partition=partition,
            p=p,
        )

    @staticmethod
    def brute_fiber_count(
        flavor: Flavor,
        m: int,
        rep: NilpotentRep,
        threads: Optional[int] = None,
        budget: Optional[int] = None,
    ) -> int:
        """Count isotropic flags V_(m-1) in V_m over F_p satisfying the flavor's conditions at x."""
        p, N = rep.p, rep.N
        if flavor not in (Flavor.E, Flavor.O):
            raise ValueError(f"flag counts are defined for E and O, got {flavor.value}")
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        if p > settings.oracle_max_p or N > settings.oracle_max_n or m > settings.oracle_max_m:
            raise OracleBudgetError(
                f"oracle too large: p={p}, N={N}, m={m} exceeds limits "
                f"p<={settings.oracle_max_p}, N<={settings.oracle_max_n}, m<={settings.oracle_max_m}"
            )
        threads = threads or settings.threads
        meter = _Budget(budget or settings.oracle_budget, settings.oracle_row_budget)

        x = np.array(rep.x, dtype=np.int64)
        G = np.array(rep.gram, dtype=np.int64)
        M = (G @ x) % p
        K0 = nullspace(x, p)
        kappa = K0.shape[0]
        if m > kappa:
            return 0
        G0 = (K0 @ G @ K0.T) % p
        psi = projective_points(m, p)

        def leaf(bases: np.ndarray) -> int:
            return _flag_counts((bases @ K0) % p, G, M, psi, p, flavor)

        def count_pattern(pivots: Tuple[int, ...]) -> int:
            return _walk(pivots, kappa, p, G0, meter, leaf)

        patterns = list(itertools.combinations(range(kappa), m))
        logger.debug(f"Flag oracle {flavor.value}, m={m}, {rep.partition}, p={p}: {len(patterns)} pivot patterns")
        return _run(patterns, count_pattern, threads)

    @staticmethod
    def quadratic_space(d: int, witt: WittType, p: int) -> np.ndarray:
        """Gram matrix of a nondegenerate quadratic space of dimension d and the given Witt type over F_p.

        Hyperbolic planes, completed by <1> in odd dimension or by the
        anisotropic plane x^2 - e y^2 (e the least non-square) for Minus type.
        """
        if p == 2 or not isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if d < 0:
            raise ValueError(f"dimension must be nonnegative, got {d}")
        if d % 2 == 1 and witt not in (WittType.SPLIT, WittType.ODD_SPLIT):
            raise ValueError(f"odd dimension {d} only admits the split type, got {witt.value}")
        if d % 2 == 0 and witt not in (WittType.PLUS, WittType.MINUS):
            raise ValueError(f"even dimension {d} needs type Plus or Minus, got {witt.value}")
        if witt == WittType.MINUS and d == 0:
            raise ValueError("the zero space has no Minus form")
        G = np.zeros((d, d), dtype=np.int64)
        planes = d // 2 - (1 if witt == WittType.MINUS else 0)
        for t in range(planes):
            G[2 * t, 2 * t + 1] = G[2 * t + 1, 2 * t] = 1
        tail = 2 * planes
        if d % 2 == 1:
            G[tail, tail] = 1
        elif witt == WittType.MINUS:
            nonsquare = next(e for e in range(2, p) if int(_eta_table(p)[e]) == -1)
            G[tail, tail] = 1
            G[tail + 1, tail + 1] = (-nonsquare) % p
        return G

    @staticmethod
    def count_subspaces(
        k: int,
        d: int,
        p: int,
        gram: Optional[np.ndarray] = None,
        threads: Optional[int] = None,
        budget: Optional[int] = None,
    ) -> int:
        """Count k-dimensional subspaces of F_p^d by enumerating reduced echelon bases.

        With a Gram matrix only totally isotropic subspaces are counted.
        """
        if not isprime(p):
            raise ValueError(f"p must be prime, got {p}")
        if gram is not None and p == 2:
            raise ValueError("isotropic counts need an odd prime")
        if not 0 <= k <= d:
            raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
        if gram is not None:
            gram = np.asarray(gram, dtype=np.int64) % p
            if gram.shape != (d, d) or (gram != gram.T).any():
                raise ValueError(f"gram must be a symmetric {d}x{d} matrix")
        if k == 0:
            return 1
        meter = _Budget(budget or settings.oracle_budget, settings.oracle_row_budget)

        def count_pattern(pivots: Tuple[int, ...]) -> int:
            return _walk(pivots, d, p, gram, meter, len)

        return _run(list(itertools.combinations(range(d), k)), count_pattern, threads or settings.threads)

    @staticmethod
    def _projective_sum(dim: int, p: int, fn: Callable[[np.ndarray], int], threads: Optional[int] = None) -> int:
        """Sum fn over chunks of normalised representatives of P^(dim-1)(F_p)."""
        total_points = (p ** dim - 1) // (p - 1)
        if total_points > settings.count_budget:
            raise OracleBudgetError(
                f"oracle too large: {total_points} projective points exceed the budget {settings.count_budget}"
            )
        tasks = []
        for lead in range(dim):
            size = p ** (dim - lead - 1)
            tasks.extend((lead, start, min(start + CHUNK, size)) for start in range(0, size, CHUNK))

        def chunk(task: Tuple[int, int, int]) -> int:
            lead, start, stop = task
            free = dim - lead - 1
            points = np.zeros((stop - start, dim), dtype=np.int64)
            points[:, lead] = 1
            points[:, lead + 1:] = digits(np.arange(start, stop, dtype=np.int64), free, p)
            return fn(points)

        return _run(tasks, chunk, threads or settings.threads)

    @staticmethod
    def _equations(N: int, m: int, a: RegularTuple) -> np.ndarray:
        """Columns (a_1^k, ..., a_N^k) for k < m."""
        p = a.p
        return np.array([[pow(ai, k, p) for k in range(m)] for ai in a.a], dtype=np.int64).reshape(N, m)

    @staticmethod
    def _check_tuple(N: int, a: RegularTuple) -> int:
        if a.p is None:
            raise ValueError("point counts need a tuple over F_p")
        if a.N != N:
            raise ValueError(f"tuple has {a.N} entries, expected {N}")
        return a.p

    @staticmethod
    def count_quadric_intersection(
        N: int, m: int, a: RegularTuple, doubled: bool = False, threads: Optional[int] = None
    ) -> int:
        """F_p-points of X_(m,a) in P^(N-1), or of Xtilde_(m,a) in P^N when doubled."""
        p = FiniteFieldService._check_tuple(N, a)
        if not 1 <= m <= N - 1:
            raise ValueError(f"m must lie in [1, {N - 1}], got {m}")
        W = FiniteFieldService._equations(N, m, a)
        dim = N
        if doubled:
            extra = np.array([[pow(ai, m, p)] for ai in a.a] + [[p - 1]], dtype=np.int64)
            W = np.vstack([W, np.zeros((1, m), dtype=np.int64)])
            W = np.hstack([W, extra])
            dim = N + 1

        def fn(points: np.ndarray) -> int:
            values = ((points * points) % p) @ W % p
            return int((values == 0).all(axis=1).sum())

        return FiniteFieldService._projective_sum(dim, p, fn, threads)

    @staticmethod
    def double_cover_consistency(N: int, m: int, a: RegularTuple, threads: Optional[int] = None) -> bool:
        """#Xtilde_(m,a) equals the sum over X_(m,a) of 1 + eta(sum a_i^m v_i^2)."""
        p = FiniteFieldService._check_tuple(N, a)
        direct = FiniteFieldService.count_quadric_intersection(N, m, a, doubled=True, threads=threads)
        W = FiniteFieldService._equations(N, m, a)
        twist = np.array([pow(ai, m, p) for ai in a.a], dtype=np.int64)
        eta = _eta_table(p)

        def fn(points: np.ndarray) -> int:
            squares = (points * points) % p
            on_x = ((squares @ W) % p == 0).all(axis=1)
            values = (squares[on_x] @ twist) % p
            return int((1 + eta[values]).sum())

        fibered = FiniteFieldService._projective_sum(N, p, fn, threads)
        if direct != fibered:
            logger.warning(f"Double cover mismatch for N={N}, m={m}, a={a.a}: {direct} != {fibered}")
        return direct == fibered

    @staticmethod
    def count_hyperelliptic(branch: Sequence[int], include_infinity_branch: bool, p: int) -> int:
        """Points of the smooth projective model of y^2 = prod (x - b) over F_p."""
        if p == 2 or not isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        roots = [int(b) % p for b in branch]
        if not roots:
            raise ValueError("branch set must be nonempty")
        if len(set(roots)) != len(roots):
            raise ValueError(f"repeated branch points: {list(branch)}")
        if include_infinity_branch != (len(roots) % 2 == 1):
            raise ValueError("infinity is a branch point exactly when the finite branch set has odd size")
        xs = np.arange(p, dtype=np.int64)
        f = np.ones(p, dtype=np.int64)
        for b in roots:
            f = (f * (xs - b)) % p
        affine = int((1 + _eta_table(p)[f]).sum())
        at_infinity = 1 if len(roots) % 2 else 2
        return affine + at_infinity

    @staticmethod
    def weil_band(count: int, q: int, D: int, primitive: int) -> bool:
        """(count - sum_(i<=D) q^i)^2 <= primitive^2 q^D."""
        base = sum(q ** i for i in range(D + 1))
        return (count - base) ** 2 <= primitive ** 2 * q ** D

    @staticmethod
    def random_regular_tuple(N: int, p: Optional[int], seed: int) -> RegularTuple:
        """Seeded tuple of N distinct elements; small integers when p is None."""
        if p is not None and N > p:
            raise ValueError(f"F_{p} has no {N} distinct elements")
        rng = np.random.default_rng(seed)
        high = p if p is not None else 10 * N + 1
        low = 0 if p is not None else -10 * N
        chosen: List[int] = []
        while len(chosen) < N:
            value = int(rng.integers(low, high))
            if value not in chosen:
                chosen.append(value)
        return RegularTuple(a=tuple(chosen), p=p)

    @staticmethod
    def torsor_identity(a: RegularTuple) -> bool:
        """sum_i a_i^k / d_i vanishes for k <= N-2 and equals (-1)^(N-1) for k = N-1."""
        N, p = a.N, a.p
        d = a.d
        if p is None:
            inverses = [Fraction(1) / di for di in d]
        else:
            inverses = [pow(int(di), -1, p) for di in d]
        for k in range(N):
            total = sum(ai ** k * inv for ai, inv in zip(a.a, inverses))
            if p is not None:
                total %= p
            expected = 0 if k < N - 1 else (-1) ** (N - 1)
            if p is not None:
                expected %= p
            if total != expected:
                return False
        return True

    @staticmethod
    def configuration_check(N: int, m: int, a: RegularTuple) -> bool:
        """The linear map f carries d_i v_i to H_(a,i) and H_inf to x_(N-m)."""
        if a.N != N:
            raise ValueError(f"tuple has {a.N} entries, expected {N}")
        if N % 2 == 0:
            raise ValueError(f"N must be odd, got {N}")
        if not 1 <= m <= N - 1:
            raise ValueError(f"m must lie in [1, {N - 1}], got {m}")
        K = GF(a.p) if a.p is not None else QQ

        def el(v: Any) -> Any:
            if a.p is not None:
                return K(int(v) % a.p)
            v = Fraction(v)
            return K(v.numerator, v.denominator)

        def matrix(rows: List[List[Any]]) -> DomainMatrix:
            return DomainMatrix([[el(v) for v in row] for row in rows], (len(rows), len(rows[0])), K)

        def power(v: Any, k: int) -> Any:
            return pow(v, k, a.p) if a.p is not None else v ** k

        e = [1] + [0] * N
        for ai in a.a:
            for t in range(N, 0, -1):
                e[t] = e[t] + ai * e[t - 1]
        r = N - m
        vandermonde = matrix([[power(ai, t) for t in range(N)] for ai in a.a])
        A = matrix([[(-1) ** i * e[j - i] if j >= i else 0 for j in range(r)] for i in range(r)])
        # f_2 sends u_(N-i) to (-1)^(i-1) x_i
        select = matrix([[(-1) ** i if t == N - 1 - i else 0 for t in range(N)] for i in range(r)])
        scaled = matrix([[a.d[row] if col == row else 0 for col in range(N)] for row in range(N)])
        u_m = matrix([[power(ai, m)] for ai in a.a])

        def f(columns: DomainMatrix) -> DomainMatrix:
            coords = vandermonde.inv().matmul(columns)
            return select.matmul(coords).transpose().matmul(A.inv())

        hyperplanes = matrix([[power(ai, t) for t in range(r)] for ai in a.a])
        infinity = matrix([[1 if t == r - 1 else 0 for t in range(r)]])
        return f(scaled).to_Matrix() == hyperplanes.to_Matrix() and f(u_m).to_Matrix() == infinity.to_Matrix()


# Service instance
finitefield_service = FiniteFieldService()
