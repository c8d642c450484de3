"""Exception types shared across the library."""


class FeeLabError(Exception):
    """Base class for all feelab errors."""


class DomainError(FeeLabError):
    """An input lies outside the domain an operation is defined on."""


class RangeError(FeeLabError):
    """A supplied or computed value left its admissible range."""


class NoBracket(FeeLabError):
    """A root-finding bracket does not enclose a sign change."""


class NonConvergence(FeeLabError):
    """An iterative numerical routine exhausted its budget."""


class NonFinite(FeeLabError):
    """A computation produced or encountered NaN or Inf."""
