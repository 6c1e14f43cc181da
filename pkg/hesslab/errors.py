"""Exceptions raised by hesslab services.

Every error is a ``ValueError`` so that callers (HTTP routers, the CLI) can
treat the whole family as bad input.
"""


class HesslabError(ValueError):
    """Base class for hesslab errors."""


class IncomparableError(HesslabError):
    """Partitions of different integers were compared."""


class OutsideOrderThreeError(HesslabError):
    """A partition has a part larger than 3."""


class EmptyFiberError(HesslabError):
    """The fiber reduction leaves no flags at all."""


class OracleBudgetError(HesslabError):
    """A brute-force enumeration was refused as too large."""


class InconsistentProfileError(HesslabError):
    """A complete-intersection profile produced a negative Betti number."""


class IndexRangeError(HesslabError):
    """A label or step index lies outside its admissible range."""
