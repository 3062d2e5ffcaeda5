"""Power series in t with SparsePoly coefficients, known up to a finite order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .polycore import ONE, ZERO, SparsePoly, linear_combination, mul


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{n<=order} coeffs[n] t**n``; terms above ``order`` are unknown."""

    order: int
    coeffs: tuple[SparsePoly, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[SparsePoly], order: int | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[: order + 1] + [ZERO] * (order + 1 - len(coeffs))
        return cls(order, tuple(coeffs))

    @classmethod
    def from_function(cls, fn: Callable[[int], SparsePoly], order: int) -> "TruncatedSeries":
        return cls(order, tuple(fn(n) for n in range(order + 1)))

    @classmethod
    def tpoly(cls, coeffs: Sequence[int], order: int) -> "TruncatedSeries":
        """A polynomial in t with integer coefficients (constant in z)."""
        return cls.from_coeffs([SparsePoly.constant(c) for c in coeffs], order)

    def __getitem__(self, n: int) -> SparsePoly:
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} up to {order}")
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, tuple(a - b for a, b in zip(self.coeffs[: order + 1], other.coeffs)))

    def scale(self, k: int) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(c * k for c in self.coeffs))

    def map_coeffs(self, fn: Callable[[SparsePoly], SparsePoly]) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(fn(c) for c in self.coeffs))

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product; the result is valid up to the order both factors pin down."""
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            return TruncatedSeries.from_coeffs([], min(self.order + (vb or 0), other.order + (va or 0)))
        order = min(self.order + vb, other.order + va)
        out = []
        for n in range(order + 1):
            out.append(
                linear_combination(
                    (1, mul(self.coeffs[i], other.coeffs[n - i]))
                    for i in range(max(0, n - other.order), min(n, self.order) + 1)
                )
            )
        return TruncatedSeries(order, tuple(out))

    def shift_t(self, k: int) -> "TruncatedSeries":
        """Multiply by t**k."""
        return TruncatedSeries(self.order + k, (ZERO,) * k + self.coeffs)

    def derivative_t(self, times: int = 1) -> "TruncatedSeries":
        """Formal t-derivative; the known order drops by one per derivative."""
        s = self
        for _ in range(times):
            if s.order == 0:
                raise ValueError("derivative exhausts the known order")
            s = TruncatedSeries(s.order - 1, tuple(c * (n + 1) for n, c in enumerate(s.coeffs[1:])))
        return s

    def equal_up_to(self, other: "TruncatedSeries") -> tuple[bool, int | None]:
        """Compare coefficients up to the common order; return the first mismatch index."""
        order = min(self.order, other.order)
        for n in range(order + 1):
            if self.coeffs[n] != other.coeffs[n]:
                return False, n
        return True, None


def geometric_series(order: int) -> TruncatedSeries:
    """1/(1 - t) to the given order."""
    return TruncatedSeries(order, (ONE,) * (order + 1))
