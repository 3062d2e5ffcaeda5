"""Exponent rules and the polynomial families built from them.

For an exponent sequence ``h`` the family is ``H_n(z) = sum_j C(n, j) z**h[j]``;
the rule ``binom:m`` (``h[j] = C(j, m)``) gives the polynomials ``f_{m,n}``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

from .polycore import SparsePoly, linear_combination

PASCAL_ROWS = 256


class RuleError(ValueError):
    pass


class IndexOutOfRange(RuleError, IndexError):
    pass


@dataclass(frozen=True)
class ExponentRule:
    """One of ``binomial`` (h_j = C(j, m)), ``geometric`` (h_j = 2**j), or ``table``."""

    kind: str
    m: int = 0
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "binomial":
            if self.m < 1:
                raise RuleError(f"binomial rule needs m >= 1, got {self.m}")
        elif self.kind == "table":
            if any(v < 0 for v in self.values):
                raise RuleError("table exponents must be nonnegative")
        elif self.kind != "geometric":
            raise RuleError(f"unknown rule kind {self.kind!r}")

    @classmethod
    def binomial(cls, m: int) -> "ExponentRule":
        return cls("binomial", m=m)

    @classmethod
    def geometric(cls) -> "ExponentRule":
        return cls("geometric")

    @classmethod
    def table(cls, values) -> "ExponentRule":
        return cls("table", values=tuple(int(v) for v in values))

    def __str__(self) -> str:
        if self.kind == "binomial":
            return f"binom:{self.m}"
        if self.kind == "geometric":
            return "geom"
        return "table:" + ",".join(map(str, self.values))

    @property
    def domain(self) -> int | None:
        """Number of defined indices, or None when unbounded."""
        return len(self.values) if self.kind == "table" else None

    def covers(self, n: int) -> bool:
        return self.kind != "table" or n < len(self.values)

    def strictly_increasing_from(self) -> int | None:
        """First index from which h is strictly increasing for all larger j.

        None for tables, whose behaviour past the end is unknown.
        """
        if self.kind == "binomial":
            return self.m - 1
        if self.kind == "geometric":
            return 0
        return None


def parse_rule(text: str) -> ExponentRule:
    """Parse ``binom:m``, ``geom`` or ``table:v0,v1,...``."""
    text = text.strip()
    if text == "geom":
        return ExponentRule.geometric()
    kind, sep, arg = text.partition(":")
    if not sep:
        raise RuleError(f"cannot parse rule {text!r}")
    try:
        if kind == "binom":
            return ExponentRule.binomial(int(arg))
        if kind == "table":
            return ExponentRule.table(int(v) for v in arg.split(",") if v.strip())
    except ValueError as exc:
        raise RuleError(f"cannot parse rule {text!r}: {exc}") from None
    raise RuleError(f"unknown rule kind {kind!r}")


@lru_cache(maxsize=None)
def _pascal_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pascal_row(n - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def binomial(n: int, k: int) -> int:
    """Exact C(n, k) for n >= 0; zero when k is outside 0..n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    if n <= PASCAL_ROWS:
        return _pascal_row(n)[k]
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


def binomial_poly(x: int, k: int) -> int:
    """C(x, k) as the polynomial x(x-1)...(x-k+1)/k!, valid for any integer x."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


def h_value(rule: ExponentRule, j: int) -> int:
    if j < 0:
        raise IndexOutOfRange(f"negative index {j}")
    if rule.kind == "binomial":
        return binomial(j, rule.m)
    if rule.kind == "geometric":
        return 1 << j
    if j >= len(rule.values):
        raise IndexOutOfRange(f"table rule has {len(rule.values)} entries, index {j} requested")
    return rule.values[j]


def check_table_tail(rule: ExponentRule, upto: int) -> bool:
    """True if a table rule is nondecreasing on its last stretch up to ``upto``.

    Only the used range is validated; nothing is extrapolated.
    """
    if rule.kind != "table":
        return True
    vals = rule.values[: upto + 1]
    if len(vals) <= upto:
        raise IndexOutOfRange(f"table rule has {len(rule.values)} entries, index {upto} requested")
    # the tail is the longest nondecreasing suffix; require it to be nonempty past the midpoint
    i = len(vals) - 1
    while i > 0 and vals[i - 1] <= vals[i]:
        i -= 1
    return i <= len(vals) // 2


def H_poly(rule: ExponentRule, n: int) -> SparsePoly:
    """``sum_j C(n, j) z**h_j`` with equal exponents merged."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SparsePoly((h_value(rule, j), binomial(n, j)) for j in range(n + 1))


def f_poly(m: int, n: int) -> SparsePoly:
    return H_poly(ExponentRule.binomial(m), n)


def forward_difference(rule: ExponentRule, n: int, r: int) -> SparsePoly:
    """r-th forward difference in n: ``sum_k (-1)^k C(r, k) H_{n+r-k}``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return linear_combination(
        ((-1) ** k * binomial(r, k), H_poly(rule, n + r - k)) for k in range(r + 1)
    )


@dataclass
class FamilyHandle:
    """Memoizing front end for one rule; safe for concurrent readers."""

    rule: ExponentRule
    _cache: dict[int, SparsePoly] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def H(self, n: int) -> SparsePoly:
        p = self._cache.get(n)
        if p is None:
            p = H_poly(self.rule, n)
            with self._lock:
                p = self._cache.setdefault(n, p)
        return p

    __call__ = H

    def h(self, j: int) -> int:
        return h_value(self.rule, j)

    def difference(self, n: int, r: int) -> SparsePoly:
        return linear_combination(
            ((-1) ** k * binomial(r, k), self.H(n + r - k)) for k in range(r + 1)
        )


@lru_cache(maxsize=64)
def f_handle(m: int) -> FamilyHandle:
    return FamilyHandle(ExponentRule.binomial(m))


def f_cached(m: int, n: int) -> SparsePoly:
    return f_handle(m).H(n)
