"""Exact decimal simulation timestamps.

Optical path differences live at femtoseconds while emission epochs live at
microseconds; binary floats drift when both appear in one sum, so timestamps
are decimal with a configurable precision (default 24 significant digits).
"""

from __future__ import annotations

import decimal
import functools
from dataclasses import dataclass

DEFAULT_PRECISION = 24

_context = decimal.Context(prec=DEFAULT_PRECISION)


def set_time_precision(significant_digits: int) -> None:
    """Reconfigure timestamp arithmetic precision (significant digits)."""
    global _context
    if significant_digits < 1:
        raise ValueError(f"precision must be >= 1, got {significant_digits}")
    _context = decimal.Context(prec=significant_digits)


def time_precision() -> int:
    return _context.prec


def time_context() -> decimal.Context:
    """The context governing timestamp arithmetic (tracks reconfiguration)."""
    return _context


@functools.total_ordering
@dataclass(frozen=True)
class SimTime:
    """Exact decimal timestamp in seconds."""

    value: decimal.Decimal

    def __post_init__(self):
        if not isinstance(self.value, decimal.Decimal):
            object.__setattr__(self, "value", _to_decimal(self.value))
        if not self.value.is_finite():
            raise ValueError(f"timestamp must be finite, got {self.value}")

    @staticmethod
    def from_seconds(seconds) -> "SimTime":
        return SimTime(_to_decimal(seconds))

    def __add__(self, other) -> "SimTime":
        return SimTime(_context.add(self.value, _coerce(other)))

    def __sub__(self, other) -> "SimTime":
        return SimTime(_context.subtract(self.value, _coerce(other)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimTime):
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other) -> bool:
        if not isinstance(other, SimTime):
            return NotImplemented
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"SimTime('{self.value}')"


def _to_decimal(x) -> decimal.Decimal:
    if isinstance(x, decimal.Decimal):
        return x
    if isinstance(x, SimTime):
        return x.value
    if isinstance(x, int):
        return decimal.Decimal(x)
    if isinstance(x, float):
        # repr round-trips the float exactly; Decimal(float) would drag in
        # the full binary expansion
        return decimal.Decimal(repr(x))
    if isinstance(x, str):
        return decimal.Decimal(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a timestamp")


def _coerce(x) -> decimal.Decimal:
    return x.value if isinstance(x, SimTime) else _to_decimal(x)


TIME_ZERO = SimTime(decimal.Decimal(0))
