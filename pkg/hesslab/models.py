"""Enumerations shared across hesslab."""

import enum


class Parity(str, enum.Enum):
    """Parity of an orbit dimension."""
    EVEN = "even"
    ODD = "odd"


class LocalSystemKind(str, enum.Enum):
    """Irreducible K-equivariant local systems on an orbit of order at most 3."""
    TRIVIAL = "Trivial"
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    ORBIT_NONTRIVIAL = "OrbitNontrivial"
    CHARACTER = "Character"


class WittType(str, enum.Enum):
    """Witt type of a nondegenerate quadratic space over F_q."""
    SPLIT = "Split"
    PLUS = "Plus"
    MINUS = "Minus"
    ODD_SPLIT = "OddSplit"


class Flavor(str, enum.Enum):
    """Hessenberg family flavors."""
    E = "E"
    O = "O"
    EPERP = "Eperp"
    OPERP = "Operp"


class MonoFamily(str, enum.Enum):
    """Families of monodromy local systems on the regular semisimple locus."""
    E = "E"
    ETILDE = "Etilde"
    L = "L"
    F = "F"
    TRIVIAL = "Trivial"


class DecompositionSource(str, enum.Enum):
    """Cohomology whose primitive part is decomposed."""
    X = "X"
    XTILDE_MINUS = "XtildeMinus"


class MatchStatus(str, enum.Enum):
    """How well a Fourier image is established."""
    PROVEN = "proven"
    CONJECTURAL = "conjectural"
    UNKNOWN = "unknown"


class CheckStatus(str, enum.Enum):
    """Outcome of a verification check."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class OutputFormat(str, enum.Enum):
    """CLI output formats."""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"
