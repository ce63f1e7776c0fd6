"""Log-domain arithmetic for quantities far outside float range.

Graph class sizes and model evidences in this package routinely have
magnitudes like exp(+-65000), so every count and probability is carried as
its natural logarithm. ``LogValue`` wraps one nonnegative quantity; addition
shifts by the running maximum so that combining values whose logs differ by
tens of thousands of nats neither overflows nor underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "LogValue",
    "log_add_exp",
    "log_diff_exp",
    "log_sum_exp",
]


def log_add_exp(a: float, b: float) -> float:
    """log(exp(a) + exp(b)) with max-shift; tolerates -inf."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def log_diff_exp(a: float, b: float) -> float:
    """log(exp(a) - exp(b)) for a >= b; returns -inf when a == b."""
    if b == -math.inf:
        return a
    if b > a:
        raise DomainError(f"log_diff_exp needs a >= b, got a={a}, b={b}")
    if a == b:
        return -math.inf
    return a + math.log(-math.expm1(b - a))


def log_sum_exp(values) -> float:
    """log(sum(exp(v))) over an iterable, max-shifted; empty sum is -inf."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0:
        return -math.inf
    hi = float(np.max(arr))
    if hi == -math.inf:
        return -math.inf
    return hi + math.log(np.sum(np.exp(arr - hi)))


@dataclass(frozen=True)
class LogValue:
    """A nonnegative real stored as its natural log.

    ``is_zero`` marks exact zero, which has no finite logarithm;
    ``log_magnitude`` is ignored in that case.
    """

    log_magnitude: float
    is_zero: bool = False

    @staticmethod
    def from_log(log_magnitude: float) -> "LogValue":
        if math.isnan(log_magnitude):
            raise DomainError("log magnitude is NaN")
        if log_magnitude == -math.inf:
            return LogValue.zero()
        return LogValue(float(log_magnitude))

    @staticmethod
    def from_float(value: float) -> "LogValue":
        if value < 0:
            raise DomainError(f"LogValue holds nonnegative reals, got {value}")
        if value == 0:
            return LogValue.zero()
        return LogValue(math.log(value))

    @staticmethod
    def zero() -> "LogValue":
        return LogValue(-math.inf, is_zero=True)

    @staticmethod
    def one() -> "LogValue":
        return LogValue(0.0)

    def __add__(self, other: "LogValue") -> "LogValue":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return LogValue(log_add_exp(self.log_magnitude, other.log_magnitude))

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.log_magnitude + other.log_magnitude)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.is_zero:
            raise ZeroDivisionError("division by an exactly-zero LogValue")
        if self.is_zero:
            return LogValue.zero()
        return LogValue(self.log_magnitude - other.log_magnitude)

    def to_float(self) -> float:
        """exp of the log magnitude; overflows to inf beyond float range."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log_magnitude)
        except OverflowError:
            return math.inf

    @property
    def log10_magnitude(self) -> float:
        if self.is_zero:
            return -math.inf
        return self.log_magnitude / math.log(10.0)

    def _key(self) -> float:
        return -math.inf if self.is_zero else self.log_magnitude

    def __lt__(self, other: "LogValue") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "LogValue") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "LogValue") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "LogValue") -> bool:
        return self._key() >= other._key()

    def __repr__(self) -> str:
        if self.is_zero:
            return "LogValue(0)"
        return f"LogValue(log={self.log_magnitude:.6g})"
