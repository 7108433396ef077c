"""Signed log-scale scalar arithmetic.

Quantities like walk counts, unnormalized gamma tails, and pmf normalizers
overflow or underflow doubles long before the sizes this package targets
(n ~ 1e8), so they are carried as sign * exp(log_magnitude).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class LogScaleValue:
    """A real number stored as sign * exp(log_magnitude).

    sign is +1, -1, or 0; a zero value always carries log_magnitude = -inf
    so that equal values have equal representations.
    """

    log_magnitude: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0, or 1, got {self.sign!r}")
        if math.isnan(self.log_magnitude):
            raise DomainError("log magnitude is NaN")
        if self.sign == 0 and self.log_magnitude != _NEG_INF:
            raise DomainError("zero value must have log magnitude -inf")
        if self.log_magnitude == _NEG_INF and self.sign != 0:
            # normalize: exp(-inf) is exactly zero
            object.__setattr__(self, "sign", 0)

    @classmethod
    def from_value(cls, x: float) -> "LogScaleValue":
        if math.isnan(x) or math.isinf(x):
            raise DomainError(f"cannot represent {x!r} on the log scale")
        if x == 0.0:
            return cls(_NEG_INF, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def zero(cls) -> "LogScaleValue":
        return cls(_NEG_INF, 0)

    def value(self) -> float:
        """Back to a plain float; overflows to +-inf, underflows to 0."""
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.log_magnitude)
        except OverflowError:
            mag = math.inf
        return mag if self.sign > 0 else -mag

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "LogScaleValue") -> "LogScaleValue":
        if not isinstance(other, LogScaleValue):
            return NotImplemented
        s = self.sign * other.sign
        if s == 0:
            return LogScaleValue.zero()
        return LogScaleValue(self.log_magnitude + other.log_magnitude, s)

    def __truediv__(self, other: "LogScaleValue") -> "LogScaleValue":
        if not isinstance(other, LogScaleValue):
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("division by log-scale zero")
        if self.sign == 0:
            return LogScaleValue.zero()
        return LogScaleValue(self.log_magnitude - other.log_magnitude,
                             self.sign * other.sign)

    def __float__(self) -> float:
        return self.value()
