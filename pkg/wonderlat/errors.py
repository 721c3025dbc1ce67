"""
Exception hierarchy for wonderlat.

Every domain error derives from ``WonderlatError`` and from the closest builtin
exception, so callers may catch either.
"""

from typing import List, Sequence, Tuple


class WonderlatError(Exception):
    """Base class for all wonderlat errors."""


class ConfigError(WonderlatError, ValueError):
    """Invalid configuration value."""


class InvalidRank(WonderlatError, ValueError):
    """A series/rank pair outside the classification bounds."""


class IndexOutOfRange(WonderlatError, IndexError):
    """A simple-root, boundary or basis label outside the valid range."""


class TypeAColorUnsupported(WonderlatError, ValueError):
    """A simple root is itself a spherical root (color of type (a))."""


class DatumParseError(WonderlatError, ValueError):
    """A datum file could not be parsed as JSON."""


class DatumValidationError(WonderlatError, ValueError):
    """
    Aggregated datum validation failure.

    Attributes:
        violations: List of ``(path, message)`` pairs, ``path`` a JSON pointer
    """

    def __init__(self, violations: Sequence[Tuple[str, str]]):
        self.violations: List[Tuple[str, str]] = list(violations)
        lines = [f"{path or '/'}: {message}" for path, message in self.violations]
        super().__init__(
            f"{len(self.violations)} datum violation(s):\n  " + "\n  ".join(lines)
        )


class RhoInconsistent(WonderlatError, ValueError):
    """The two moving roots of a color give different rho-values."""


class DatumMismatch(WonderlatError, ValueError):
    """Classes living on different data were combined."""


class NotMovable(WonderlatError, ValueError):
    """A curve class is negative on some effective divisor."""


class NotEffective(WonderlatError, ValueError):
    """A curve class has a negative coordinate in the dual basis."""


class NonIntegralClass(WonderlatError, ValueError):
    """A curve class was given a non-integral coefficient."""


class RootMovesNoColor(WonderlatError, ValueError):
    """A Schubert curve was indexed by a root in S^p."""


class NotGroupKind(WonderlatError, ValueError):
    """The operation is only defined for group-compactification data."""


class NotDominant(WonderlatError, ValueError):
    """A coweight has a negative fundamental coordinate."""


class ConsistencyFailure(WonderlatError, RuntimeError):
    """An internal invariant was breached; indicates a bug."""


class NegativeAnticanonicalCoeff(WonderlatError, ValueError):
    """An anticanonical color coefficient a_D is negative."""


class FixtureMissing(WonderlatError, FileNotFoundError):
    """A Cartan fixture file is absent."""
