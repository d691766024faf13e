"""Exceptions shared across the package.

Exit-code mapping used by the CLI:
  usage / parse errors        -> 2
  size bound exceeded         -> 3
  internal consistency failed -> 4
"""


class KhomError(Exception):
    pass


class ParseError(KhomError):
    """Malformed user input (group string, rep string, flag combination)."""


class SizeBoundError(KhomError):
    """Requested group exceeds the configured order bound."""


class InternalConsistencyError(KhomError):
    """Two independent computation paths disagreed, or a structural
    invariant failed mid-computation.  Always a bug or bad math, never
    a user error."""
