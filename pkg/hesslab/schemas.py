"""Pydantic schemas for hesslab values and request/response payloads."""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import Poly, Symbol, ZZ, isprime
from hesslab.models import (
    CheckStatus,
    DecompositionSource,
    Flavor,
    LocalSystemKind,
    MatchStatus,
    MonoFamily,
    OutputFormat,
    Parity,
)

Q = Symbol("q")


# Orbit Schemas
class Partition(BaseModel):
    """Weakly decreasing positive parts indexing a nilpotent K-orbit."""
    parts: Tuple[int, ...] = Field(..., description="Parts, weakly decreasing")

    model_config = ConfigDict(frozen=True)

    @field_validator("parts")
    @classmethod
    def validate_parts(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        """Validate positivity and ordering."""
        if not v:
            raise ValueError("a partition needs at least one part")
        if any(p <= 0 for p in v):
            raise ValueError(f"parts must be positive: {v}")
        if any(v[k] < v[k + 1] for k in range(len(v) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {v}")
        return v

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(parts=tuple(parts))

    @classmethod
    def from_exponents(cls, exponents: Dict[int, int]) -> "Partition":
        """Build from a {part: multiplicity} map such as {3: i, 2: j, 1: k}."""
        parts: List[int] = []
        for part in sorted(exponents, reverse=True):
            count = exponents[part]
            if count < 0:
                raise ValueError(f"negative multiplicity for part {part}: {count}")
            parts.extend([part] * count)
        return cls(parts=tuple(parts))

    @property
    def n_total(self) -> int:
        return sum(self.parts)

    @property
    def max_part(self) -> int:
        return self.parts[0]

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def exponents(self) -> Tuple[int, int, int]:
        """Multiplicities (i, j, k) of the shape 3^i 2^j 1^k."""
        return self.multiplicity(3), self.multiplicity(2), self.multiplicity(1)

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts)


class LocalSystemLabel(BaseModel):
    """Irreducible K-equivariant local system on an orbit of order at most 3."""
    kind: LocalSystemKind
    orbit: Partition
    signs: Tuple[int, ...] = Field((), description="Character values on the component group generators")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_shape(self) -> "LocalSystemLabel":
        """Attach E1/E2/E3 and OrbitNontrivial only to the shapes that carry them."""
        i, j, _ = self.orbit.exponents()
        if self.kind in (LocalSystemKind.E1, LocalSystemKind.E2, LocalSystemKind.E3):
            if i % 2 == 0 or j % 2 == 1:
                raise ValueError(f"{self.kind.value} needs a shape 3^odd 2^even 1^r, got {self.orbit}")
        if self.kind == LocalSystemKind.ORBIT_NONTRIVIAL:
            if i != 0 or j == 0:
                raise ValueError(f"OrbitNontrivial needs a shape 2^j 1^k with j >= 1, got {self.orbit}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"character values must be +1 or -1: {self.signs}")
        return self

    @property
    def name(self) -> str:
        if self.kind == LocalSystemKind.CHARACTER:
            return "chi(" + ",".join("+" if s > 0 else "-" for s in self.signs) + ")"
        return self.kind.value


class OrbitDescriptor(BaseModel):
    """Numerical data of a nilpotent K-orbit."""
    partition: Partition
    dim: int = Field(..., ge=0, description="Complex dimension of the K-orbit")
    parity: Parity
    order3: bool
    has_gaps: bool

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_consistency(self) -> "OrbitDescriptor":
        """Check parity and order-3 flags against the raw data."""
        if (self.dim % 2 == 1) != (self.parity == Parity.ODD):
            raise ValueError(f"parity {self.parity.value} disagrees with dim {self.dim}")
        if self.order3 != (self.partition.max_part <= 3):
            raise ValueError("order3 flag disagrees with the partition")
        return self

    def to_row(self) -> Dict[str, Any]:
        return {
            "partition": list(self.partition.parts),
            "dim": self.dim,
            "parity": self.parity.value,
            "order3": self.order3,
            "gaps": self.has_gaps,
        }


# Polynomial Schemas
class PoincarePolynomial(BaseModel):
    """Polynomial in q with nonnegative integer coefficients (index i holds q^i)."""
    coeffs: Tuple[int, ...] = Field((), description="Coefficient of q^i at index i")

    model_config = ConfigDict(frozen=True)

    @field_validator("coeffs")
    @classmethod
    def validate_coeffs(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        """Strip trailing zeros and reject negative coefficients."""
        if any(c < 0 for c in v):
            raise ValueError(f"paving counts cannot be negative: {v}")
        v = tuple(v)
        while v and v[-1] == 0:
            v = v[:-1]
        return v

    @classmethod
    def zero(cls) -> "PoincarePolynomial":
        return cls(coeffs=())

    @classmethod
    def one(cls) -> "PoincarePolynomial":
        return cls(coeffs=(1,))

    @classmethod
    def monomial(cls, k: int) -> "PoincarePolynomial":
        return cls(coeffs=(0,) * k + (1,))

    @classmethod
    def from_poly(cls, poly: Poly) -> "PoincarePolynomial":
        return cls(coeffs=tuple(int(c) for c in reversed(poly.all_coeffs())))

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], Q, domain=ZZ)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, q: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def shift(self, k: int) -> "PoincarePolynomial":
        """Multiply by q^k."""
        if self.is_zero:
            return self
        return PoincarePolynomial(coeffs=(0,) * k + self.coeffs)

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        return PoincarePolynomial.from_poly(self.to_poly() + other.to_poly())

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        return PoincarePolynomial.from_poly(self.to_poly() * other.to_poly())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


# Hessenberg Schemas
class FamilyDescriptor(BaseModel):
    """One of the four Hessenberg families over the flag variety K/P_l."""
    flavor: Flavor
    l: int = Field(..., ge=1, description="Step of the isotropic flag")
    N: int = Field(..., ge=3, description="Odd ambient dimension")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_range(self) -> "FamilyDescriptor":
        """Validate the step against N."""
        if self.N % 2 == 0:
            raise ValueError(f"N must be odd, got {self.N}")
        if self.l > (self.N - 1) // 2:
            raise ValueError(f"step l={self.l} exceeds (N-1)/2 for N={self.N}")
        return self


class FiberQuery(BaseModel):
    """A Hessenberg fiber over a nilpotent x of order at most 3."""
    flavor: Flavor
    m: int = Field(..., ge=0, description="Step of the family")
    N: int = Field(..., ge=1, description="Ambient dimension")
    partition: Partition

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_partition(self) -> "FiberQuery":
        """Check the partition shape."""
        if self.flavor not in (Flavor.E, Flavor.O):
            raise ValueError(f"fibers are modelled for flavors E and O, got {self.flavor.value}")
        if self.partition.n_total != self.N:
            raise ValueError(f"partition {self.partition} does not partition N={self.N}")
        if self.partition.max_part > 3:
            raise ValueError(f"partition {self.partition} is outside order 3")
        return self


# Monodromy Schemas
class CharacterClass(BaseModel):
    """Characters of I_N (or I_{N+1}) of a fixed support size."""
    ambient: int
    size: int = Field(..., ge=2)
    requires_last: bool = False
    count: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_size(self) -> "CharacterClass":
        """Validate the support size."""
        if self.size % 2:
            raise ValueError(f"support size must be even, got {self.size}")
        if self.size > self.ambient:
            raise ValueError(f"support size {self.size} exceeds ambient {self.ambient}")
        return self


class MonoLabel(BaseModel):
    """A monodromy local system E_ij, Etilde_ij, L_k, F_j or the trivial system."""
    family: MonoFamily
    i: int = 0
    j: int = 0
    N: int
    dim: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_indices(self) -> "MonoLabel":
        """Validate index ranges per family."""
        n = (self.N - 1) // 2
        if self.family == MonoFamily.E:
            ok = 1 <= self.i <= n and 0 <= self.j <= self.i - 1
        elif self.family == MonoFamily.ETILDE:
            ok = 1 <= self.i <= n + 1 and 0 <= self.j <= self.i - 1
        elif self.family == MonoFamily.L:
            ok = 1 <= self.i <= self.N and self.j == 0
        elif self.family == MonoFamily.F:
            ok = self.i == 0 and 1 <= self.j <= n
        else:
            ok = self.i == 0 and self.j == 0
        if not ok:
            raise ValueError(f"indices ({self.i},{self.j}) out of range for {self.family.value}, N={self.N}")
        return self

    @property
    def irreducible(self) -> bool:
        return True

    @property
    def infinite_monodromy(self) -> bool:
        return self.family in (MonoFamily.E, MonoFamily.ETILDE) and self.j > 0

    @property
    def key(self) -> Tuple[str, int, int]:
        return self.family.value, self.i, self.j

    @property
    def name(self) -> str:
        if self.family == MonoFamily.L:
            return f"L({self.i})"
        if self.family == MonoFamily.F:
            return f"F({self.j})"
        if self.family == MonoFamily.TRIVIAL:
            return "Trivial"
        return f"{self.family.value}({self.i},{self.j})"

    def to_row(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "i": self.i,
            "j": self.j,
            "dim": self.dim,
            "irreducible": self.irreducible,
            "infinite_monodromy": self.infinite_monodromy,
        }


class DecompositionTable(BaseModel):
    """Multiplicity-free decomposition of a primitive middle cohomology."""
    source: DecompositionSource
    N: int
    m: int
    summands: Tuple[MonoLabel, ...] = ()
    total_dim: int = 0

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_total(self) -> "DecompositionTable":
        """Total dimension is the sum of summand dimensions, each summand once."""
        if self.total_dim != sum(s.dim for s in self.summands):
            raise ValueError("total_dim differs from the sum of summand dimensions")
        keys = [s.key for s in self.summands]
        if len(keys) != len(set(keys)):
            raise ValueError("decomposition tables are multiplicity-free")
        return self

    def to_row(self) -> Dict[str, Any]:
        return {
            "source": f"{self.source.value}({self.m})",
            "N": self.N,
            "summands": [s.to_row() for s in self.summands],
            "total": self.total_dim,
        }


class IdentificationPair(BaseModel):
    """Two names for the same local system."""
    left: MonoLabel
    right: MonoLabel

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_dims(self) -> "IdentificationPair":
        """Identified systems share their rank."""
        if self.left.dim != self.right.dim:
            raise ValueError(f"{self.left.name} (dim {self.left.dim}) != {self.right.name} (dim {self.right.dim})")
        return self


# Cohomology Schemas
class CIProfile(BaseModel):
    """Smooth complete intersection of hypersurfaces in P^K."""
    ambient_dim: int = Field(..., ge=0, description="K of P^K")
    degrees: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_profile(self) -> "CIProfile":
        """Validate degrees and dimension."""
        if not self.degrees:
            raise ValueError("a complete intersection needs at least one degree")
        if any(d < 1 for d in self.degrees):
            raise ValueError(f"degrees must be positive: {self.degrees}")
        if self.dim < 0:
            raise ValueError(f"{len(self.degrees)} hypersurfaces in P^{self.ambient_dim} are not a complete intersection")
        return self

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.degrees)


# Finite Field Schemas
class RegularTuple(BaseModel):
    """Pairwise distinct field elements; residues mod p, or rationals when p is None."""
    a: Tuple[Any, ...]
    p: Optional[int] = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="before")
    @classmethod
    def normalise_entries(cls, data: Any) -> Any:
        """Reduce entries mod p, or coerce them to Fraction over the rationals."""
        if not isinstance(data, dict):
            return data
        p = data.get("p")
        if p is not None and (p == 2 or not isprime(p)):
            raise ValueError(f"p must be an odd prime, got {p}")
        entries = data.get("a", ())
        if p is not None:
            data = {**data, "a": tuple(int(v) % p for v in entries)}
        else:
            data = {**data, "a": tuple(Fraction(v) for v in entries)}
        return data

    @model_validator(mode="after")
    def validate_regular(self) -> "RegularTuple":
        """Entries must be pairwise distinct."""
        if len(set(self.a)) != len(self.a):
            raise ValueError(f"entries are not pairwise distinct: {self.a}")
        return self

    @property
    def N(self) -> int:
        return len(self.a)

    @property
    def d(self) -> Tuple[Any, ...]:
        """d_i = prod_{j != i} (a_j - a_i)."""
        out = []
        for idx, ai in enumerate(self.a):
            prod: Any = 1
            for jdx, aj in enumerate(self.a):
                if jdx != idx:
                    prod = prod * (aj - ai)
            out.append(prod % self.p if self.p is not None else prod)
        return tuple(out)


class NilpotentRep(BaseModel):
    """Self-adjoint nilpotent matrix and Gram matrix over F_p."""
    x: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[int, ...], ...]
    partition: Partition
    p: int

    model_config = ConfigDict(frozen=True)

    @property
    def N(self) -> int:
        return len(self.x)


# Springer Schemas
class FourierImage(BaseModel):
    """Orbit and local system matched with a monodromy local system."""
    source: MonoLabel
    orbit: Optional[Partition] = None
    local_system: Optional[LocalSystemLabel] = None
    status: MatchStatus

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_support(self) -> "FourierImage":
        """Images are supported on orbits of order at most 3."""
        if self.orbit is None:
            if self.status != MatchStatus.UNKNOWN:
                raise ValueError("only unknown images may omit the orbit")
            return self
        if self.orbit.max_part > 3:
            raise ValueError(f"image orbit {self.orbit} is outside order 3")
        if self.local_system is not None and self.local_system.orbit != self.orbit:
            raise ValueError("local system lives on a different orbit")
        return self

    def to_row(self) -> Dict[str, Any]:
        return {
            "source": {"family": self.source.family.value, "i": self.source.i, "j": self.source.j},
            "orbit": list(self.orbit.parts) if self.orbit else None,
            "system": self.local_system.name if self.local_system else None,
            "status": self.status.value,
        }


class CheckResult(BaseModel):
    """One entry of a verification report."""
    name: str
    status: CheckStatus
    lhs: Any = None
    rhs: Any = None
    detail: str = ""
    invariant: str = ""

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"name": self.name, "status": self.status.value}
        if self.lhs is not None:
            row["lhs"] = self.lhs
        if self.rhs is not None:
            row["rhs"] = self.rhs
        if self.detail:
            row["detail"] = self.detail
        if self.invariant:
            row["invariant"] = self.invariant
        return row


class ConsistencyReport(BaseModel):
    """Pass/fail report of the Springer consistency suite."""
    n: int
    checks: List[CheckResult] = []
    images: List[FourierImage] = []

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    def to_row(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "checks": [c.to_row() for c in self.checks],
            "map": [img.to_row() for img in self.images],
        }


# CLI Schemas
class RunConfig(BaseModel):
    """Effective configuration of one CLI run."""
    command: str
    n: Optional[int] = Field(None, ge=1)
    n_max: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=1)
    q: Optional[int] = None
    seed: int
    trials: int = Field(..., ge=1)
    threads: int = Field(..., ge=1)
    format: OutputFormat = OutputFormat.JSON
    budget: Optional[int] = Field(None, ge=1)
    tilde: bool = False

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: Optional[int]) -> Optional[int]:
        """q must be an odd prime."""
        if v is not None and (v == 2 or not isprime(v)):
            raise ValueError(f"q must be an odd prime, got {v}")
        return v


# API Schemas
class FiberRequest(BaseModel):
    """Request body for a fiber polynomial."""
    flavor: Flavor = Field(..., description="E or O")
    m: int = Field(..., ge=1)
    N: int = Field(..., ge=3)
    partition: List[int] = Field(..., min_length=1)
    q: Optional[int] = Field(None, ge=2, description="Evaluate the polynomial at q")


class FiberResponse(BaseModel):
    """Fiber polynomial response."""
    flavor: Flavor
    m: int
    N: int
    partition: List[int]
    coeffs: List[int]
    polynomial: str
    value: Optional[int] = None


class DecompositionResponse(BaseModel):
    """Decomposition table with its cohomology oracle value."""
    source: str
    N: int
    summands: List[Dict[str, Any]]
    total: int
    oracle: int
    match: bool


class SystemStatus(BaseModel):
    """System status response."""
    healthy: bool
    version: str
    uptime_seconds: int
    cpu_percent: float
    memory_percent: float
    threads: int
    oracle_budget: int
    count_budget: int
