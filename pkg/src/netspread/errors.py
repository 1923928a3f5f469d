"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "NetspreadError",
    "GuardExceededError",
    "ParseError",
    "ConfigError",
    "DisconnectedTerminalsError",
]


class NetspreadError(Exception):
    """Base class for all package-specific errors."""


class GuardExceededError(NetspreadError):
    """An operation would exceed its combinatorial guard.

    Raised instead of silently attempting an enumeration whose cost
    (n!, k!, binomial coefficients, ...) is beyond the documented cap.
    The message states the offending cost so callers can switch to a
    Monte-Carlo route or shrink the instance.
    """


class ParseError(NetspreadError):
    """A text input (edge list, status file, config) is malformed.

    Messages carry the line number or config path of the offending entry.
    """


class ConfigError(NetspreadError):
    """A config document violates the schema.

    Messages are path-qualified ("entries[2].k: expected integer") so
    the offending field is findable in the file.
    """


class DisconnectedTerminalsError(NetspreadError):
    """Steiner terminals do not lie in one connected component."""
