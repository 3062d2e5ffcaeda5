"""Closed-form bounds on the moduli of the zeros of f_{m,n}."""

from __future__ import annotations

import math

from ..family import binomial


class OutOfRegime(ValueError):
    pass


def icbrt_ceil(x: int) -> int:
    """Smallest integer r >= 0 with r**3 >= x."""
    if x <= 0:
        return 0
    r = round(x ** (1 / 3))
    while r**3 < x:
        r += 1
    while r > 0 and (r - 1) ** 3 >= x:
        r -= 1
    return r


def lower_regime_start(m: int) -> int:
    """``ceil(2^(1/3) m^(4/3) + m)``, computed exactly as ``m + ceil(cbrt(2 m^4))``."""
    return m + icbrt_ceil(2 * m**4)


def upper_regime_start(m: int) -> int:
    return 3 if m == 2 else 2 * m + 1


def in_upper_regime(m: int, n: int) -> bool:
    return m >= 2 and n >= upper_regime_start(m)


def in_lower_regime(m: int, n: int) -> bool:
    if m == 2:
        return n >= 3
    return m >= 3 and n >= lower_regime_start(m)


def upper_regime_label(m: int, n: int) -> str:
    """Which argument covers the upper bound at (m, n)."""
    if m == 2:
        return "annulus-m2"
    if m >= 6 and n >= 6 * m + 1:
        return "proved"
    return "numerical"


def upper_bound(m: int, n: int) -> float:
    if not in_upper_regime(m, n):
        raise OutOfRegime(f"upper bound needs m >= 3 and n >= 2m+1, or m = 2 and n >= 3 (got m={m}, n={n})")
    if m == 2:
        return 1 + 3 / n * math.log(n)
    return 1 + math.factorial(m) / (n - m) ** (m - 2)


def lower_bound(m: int, n: int) -> float:
    if not in_lower_regime(m, n):
        raise OutOfRegime(
            f"lower bound needs n >= {lower_regime_start(m) if m >= 3 else 3} for m={m} (got n={n})"
        )
    if m == 2:
        return 2 / n
    return m / (n - m + 1)


def epsilon_threshold(m: int, n: int) -> float:
    """``(6/5) n (log n - log log 2) / C(n, m)``."""
    if n <= m:
        raise ValueError("requires n > m")
    return 1.2 * n * (math.log(n) - math.log(math.log(2))) / binomial(n, m)


def epsilon_threshold_ok(m: int, n: int) -> bool:
    """The threshold is dominated by the disc radius excess m!/(n-m)^(m-2)."""
    return epsilon_threshold(m, n) <= math.factorial(m) / (n - m) ** (m - 2)


def exponent_growth_ok(m: int, j: int) -> bool:
    """``C(m+j-1, m) >= (m+1)(j-1)``."""
    return binomial(m + j - 1, m) >= (m + 1) * (j - 1)
