"""
compensated.py
==============
Running compensated summation for series evaluation.

A truncated series needs a running total (the stopping rule looks at the partial
sum after every term), so math.fsum, which wants the whole sequence up front,
does not fit. NeumaierSum keeps the rounding error of every addition in a
separate carry using the two-sum error-free transformation.
"""

from typing import Iterable, Tuple


def two_sum(a: float, b: float) -> Tuple[float, float]:
    """Return (s, err) with s = fl(a + b) and s + err == a + b exactly."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


class NeumaierSum:
    """Incremental compensated sum with an absolute-magnitude side total."""

    __slots__ = ("_sum", "_carry", "abs_total", "count")

    def __init__(self, initial: float = 0.0):
        self._sum = float(initial)
        self._carry = 0.0
        self.abs_total = abs(float(initial))
        self.count = 0

    def add(self, value: float) -> None:
        self._sum, err = two_sum(self._sum, value)
        self._carry += err
        self.abs_total += abs(value)
        self.count += 1

    def extend(self, values: Iterable[float]) -> "NeumaierSum":
        for v in values:
            self.add(v)
        return self

    @property
    def value(self) -> float:
        return self._sum + self._carry
