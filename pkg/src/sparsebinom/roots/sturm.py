"""Exact real-root counting with Sturm sequences over the integers.

The chain is a signed primitive remainder sequence: each remainder is the
negated pseudo-remainder taken with a positive multiplier, divided by its
positive content, so every element keeps the sign pattern of the classical
rational Sturm chain.  Sign variations therefore count distinct real zeros
even when the polynomial has repeated factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..polycore import DegreeCapExceeded, SparsePoly, to_dense

STURM_DEGREE_CAP = 600


def _content(a: list[int]) -> int:
    g = 0
    # smallest entries first: the gcd usually collapses to 1 after a few of them
    for c in sorted(a, key=abs):
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b, descending coefficients."""
    lc = b[0]
    db = len(b) - 1
    delta = len(a) - len(b)
    r = list(a)
    steps = 0
    while len(r) - 1 >= db and r:
        lead = r[0]
        # r <- lc * r - lead * z^(deg r - db) * b, leading term dropped
        r = [lc * x - lead * y for x, y in zip(r[1:], b[1:])] + [lc * x for x in r[db + 1:]]
        steps += 1
    # every skipped step (a zero leading term) still owes its factor of lc
    missing = delta + 1 - steps
    if missing:
        f = lc**missing
        r = [f * x for x in r]
    while r and r[0] == 0:
        r.pop(0)
    return r


def _derivative_desc(a: list[int]) -> list[int]:
    d = len(a) - 1
    return [c * (d - i) for i, c in enumerate(a[:-1])]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(p: SparsePoly, cap: int = STURM_DEGREE_CAP) -> list[list[int]]:
    """Sturm chain as descending integer coefficient lists.

    The remainders come from the subresultant sequence, whose divisions are
    exact, so coefficient growth stays polynomial without any gcd work.  Each
    element is then multiplied by the sign that makes it a positive multiple
    of the classical chain p, p', -rem(p, p'), ...; only those signs matter
    for counting.
    """
    if p.degree > cap:
        raise DegreeCapExceeded(f"degree {p.degree} exceeds Sturm cap {cap}")
    a = list(reversed(to_dense(p, cap)))
    g = _content(a)
    a = [c // g for c in a]
    if len(a) <= 1:
        return [a]
    b = _derivative_desc(a)
    gb = _content(b)
    b = [c // gb for c in b]
    chain = [a, b]
    signs = [1, 1]
    gg, h = 1, 1
    while len(chain[-1]) > 1:
        prev, cur = chain[-2], chain[-1]
        delta = len(prev) - len(cur)
        r = _prem(prev, cur)
        if not r:
            break
        beta = gg * h**delta
        nxt = [c // beta for c in r]
        # prem(P_{i-1}, P_i) = lc(P_i)^(delta+1) c_{i-1} (-S_{i+1}) when P_j = c_j S_j
        signs.append(-(_sign(cur[0]) ** (delta + 1)) * signs[-2] * _sign(beta))
        chain.append(nxt)
        gg = cur[0]
        h = gg**delta // h ** (delta - 1) if delta >= 1 else h
    return [c if s > 0 else [-x for x in c] for c, s in zip(chain, signs)]


def _variations(signs) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _sign_neg_inf(poly: list[int]) -> int:
    lead = (poly[0] > 0) - (poly[0] < 0)
    return lead if (len(poly) - 1) % 2 == 0 else -lead


def sign_at(poly: list[int], x: Fraction) -> int:
    """Sign of ``sum poly[i] x^(d-i)`` at rational x, evaluated without fractions."""
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    # Horner in num with den powers folded in: acc ends as den^d p(x)
    for c in poly:
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def variations_at(chain: list[list[int]], x: Fraction | None) -> int:
    """Sign variations of the chain at x; ``None`` means minus infinity."""
    if x is None:
        return _variations(_sign_neg_inf(p) for p in chain)
    return _variations(sign_at(p, x) for p in chain)


@dataclass
class RealRootCount:
    m: int
    n: int
    count: int
    isolating_intervals: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    squarefree: bool = True

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "count": self.count,
            "isolating_intervals": [[str(a), str(b)] for a, b in self.isolating_intervals],
            "squarefree": self.squarefree,
        }


def cauchy_bound(p: SparsePoly) -> Fraction:
    lc = abs(p.leading_coefficient)
    return 1 + Fraction(max(abs(c) for e, c in p.terms if e != p.degree) if len(p) > 1 else 0, lc)


def count_negative(chain: list[list[int]]) -> int:
    """Distinct zeros in (-inf, 0), assuming p(0) != 0."""
    return variations_at(chain, None) - variations_at(chain, Fraction(0))


def isolate_negative(p: SparsePoly, chain: list[list[int]] | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b] each holding exactly one distinct zero in (-inf, 0)."""
    if chain is None:
        chain = sturm_chain(p, cap=max(p.degree, 0))
    if p.coeff(0) == 0:
        raise ValueError("p(0) = 0; divide out z first")
    cache: dict[Fraction, int] = {}

    def V(x: Fraction) -> int:
        if x not in cache:
            cache[x] = variations_at(chain, x)
        return cache[x]

    lo = -cauchy_bound(p)
    total = V(lo) - V(Fraction(0))
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, Fraction(0), total)]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        # keep bisection points off the zeros themselves
        while sign_at(chain[0], mid) == 0:
            mid = (a + 2 * mid) / 3
        left = V(a) - V(mid)
        stack.append((mid, b, k - left))
        stack.append((a, mid, left))
    out.sort()
    return out


def refine_root(chain: list[list[int]], a: Fraction, b: Fraction, width: Fraction = Fraction(1, 2**50)) -> Fraction:
    """Shrink an isolating interval (a, b] around its zero; returns the midpoint."""
    p = chain[0]
    while b - a > width:
        mid = (a + b) / 2
        sa, sm = sign_at(p, a), sign_at(p, mid)
        if sm == 0:
            return mid
        if sa != 0 and sa != sign_at(p, b) and sign_at(p, b) != 0:
            if sa == sm:
                a = mid
            else:
                b = mid
        else:
            # even multiplicity or endpoint zero: fall back to counting
            if variations_at(chain, a) - variations_at(chain, mid) >= 1:
                b = mid
            else:
                a = mid
    return (a + b) / 2


@lru_cache(maxsize=64)
def family_chain(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Sturm chain of f_{m,n}, shared by every caller (degree cap checked by callers)."""
    from ..family import f_cached

    p = f_cached(m, n)
    return tuple(tuple(c) for c in sturm_chain(p, cap=max(p.degree, 0)))


def count_real_roots(m: int, n: int, cap: int = STURM_DEGREE_CAP, isolate: bool = True) -> RealRootCount:
    """Number of distinct real zeros of f_{m,n}; all of them are negative."""
    from ..family import f_cached

    p = f_cached(m, n)
    if p.degree <= 0:
        return RealRootCount(m, n, 0, [])
    if p.degree > cap:
        raise DegreeCapExceeded(f"degree {p.degree} exceeds Sturm cap {cap}")
    chain = family_chain(m, n)
    count = count_negative(chain)
    intervals = isolate_negative(p, chain) if isolate else []
    return RealRootCount(m, n, count, intervals, squarefree=len(chain[-1]) == 1)
