"""Exception types shared across the planner."""

from __future__ import annotations

import math


class PlannerError(Exception):
    """Base class for every error the planner raises on purpose."""


class DomainError(PlannerError, ValueError):
    """A numeric argument lies outside the domain of an operation."""


class ConfigError(PlannerError, ValueError):
    """A scenario document is malformed or holds an invalid value."""


def ensure_finite(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def ensure_positive(value: float, name: str) -> float:
    ensure_finite(value, name)
    if value <= 0.0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def ensure_non_negative(value: float, name: str) -> float:
    ensure_finite(value, name)
    if value < 0.0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")
    return value


def ensure_efficiency(value: float, name: str) -> float:
    ensure_finite(value, name)
    if not 0.0 < value <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {value!r}")
    return value


class OutputError(PlannerError, OSError):
    """An output file could not be written."""
