"""Exact sparse polynomials with integer coefficients.

A :class:`SparsePoly` is an immutable, canonical list of ``(exponent,
coefficient)`` pairs with strictly increasing exponents and no zero
coefficients.  Equality is structural, so identities between polynomials
reduce to comparing term tuples.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import mpmath

DEFAULT_DEGREE_CAP = 20000
DENSE_GAP_THRESHOLD = 4096


class PolyError(ValueError):
    pass


class NotDivisible(PolyError):
    pass


class DegreeCapExceeded(PolyError):
    pass


class SparsePoly:
    """Immutable univariate polynomial over the integers, stored sparsely."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[tuple[int, int]] | Mapping[int, int] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            if e < 0:
                raise PolyError(f"negative exponent {e}")
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = tuple((e, acc[e]) for e in sorted(acc) if acc[e] != 0)
        self._hash: int | None = None

    @classmethod
    def _from_canonical(cls, terms: tuple[tuple[int, int], ...]) -> "SparsePoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "SparsePoly":
        return cls([(exponent, coefficient)])

    @classmethod
    def constant(cls, c: int) -> "SparsePoly":
        return cls([(0, c)])

    @classmethod
    def from_dense(cls, coeffs: Sequence[int]) -> "SparsePoly":
        return cls((i, c) for i, c in enumerate(coeffs) if c)

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self._terms[-1][0] if self._terms else -1

    @property
    def leading_coefficient(self) -> int:
        return self._terms[-1][1] if self._terms else 0

    @property
    def valuation(self) -> int:
        return self._terms[0][0] if self._terms else -1

    def coeff(self, exponent: int) -> int:
        lo, hi = 0, len(self._terms)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._terms[mid][0] < exponent:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self._terms) and self._terms[lo][0] == exponent:
            return self._terms[lo][1]
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficients(self) -> list[int]:
        return [c for _, c in self._terms]

    def __add__(self, other: "SparsePoly | int") -> "SparsePoly":
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._from_canonical(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other: "SparsePoly | int") -> "SparsePoly":
        return add(self, -_coerce(other))

    def __rsub__(self, other: "SparsePoly | int") -> "SparsePoly":
        return add(_coerce(other), -self)

    def __mul__(self, other: "SparsePoly | int") -> "SparsePoly":
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise PolyError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return eval_exact(self, x)
        return eval_numeric(self, x)[0]


def _coerce(p: "SparsePoly | int") -> SparsePoly:
    if isinstance(p, SparsePoly):
        return p
    if isinstance(p, int):
        return SparsePoly.constant(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


ZERO = SparsePoly()
ONE = SparsePoly.constant(1)
Z = SparsePoly.monomial(1)
ONE_MINUS_Z = SparsePoly([(0, 1), (1, -1)])


def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Merge two canonical term lists."""
    a, b = p.terms, q.terms
    i = j = 0
    out = []
    while i < len(a) and j < len(b):
        ea, eb = a[i][0], b[j][0]
        if ea < eb:
            out.append(a[i])
            i += 1
        elif eb < ea:
            out.append(b[j])
            j += 1
        else:
            c = a[i][1] + b[j][1]
            if c:
                out.append((ea, c))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return SparsePoly._from_canonical(tuple(out))


def sub(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return add(p, -q)


def scale(p: SparsePoly, k: int) -> SparsePoly:
    if k == 0:
        return ZERO
    return SparsePoly._from_canonical(tuple((e, c * k) for e, c in p.terms))


def shift(p: SparsePoly, k: int) -> SparsePoly:
    """Multiply by ``z**k``."""
    return SparsePoly._from_canonical(tuple((e + k, c) for e, c in p.terms))


def mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    if not p or not q:
        return ZERO
    if len(p) > len(q):
        p, q = q, p
    acc: dict[int, int] = {}
    get = acc.get
    for ea, ca in p.terms:
        for eb, cb in q.terms:
            e = ea + eb
            acc[e] = get(e, 0) + ca * cb
    return SparsePoly._from_canonical(tuple((e, acc[e]) for e in sorted(acc) if acc[e]))


def linear_combination(pairs: Iterable[tuple[int, SparsePoly]]) -> SparsePoly:
    """Sum of ``k * p`` over the pairs, accumulated in one pass."""
    acc: dict[int, int] = {}
    for k, p in pairs:
        if not k:
            continue
        for e, c in p.terms:
            acc[e] = acc.get(e, 0) + k * c
    return SparsePoly._from_canonical(tuple((e, acc[e]) for e in sorted(acc) if acc[e]))


def substitute_neg(p: SparsePoly) -> SparsePoly:
    """Return p(-z)."""
    return SparsePoly._from_canonical(tuple((e, -c if e & 1 else c) for e, c in p.terms))


def taylor_shift(p: SparsePoly, a: int) -> SparsePoly:
    """Return p(z + a) (dense result)."""
    result = ZERO
    za = SparsePoly([(0, a), (1, 1)])
    # Horner over the dense coefficient list
    for c in reversed(to_dense(p, cap=max(p.degree, 0))):
        result = mul(result, za) + c
    return result


def derivative(p: SparsePoly) -> SparsePoly:
    return SparsePoly._from_canonical(tuple((e - 1, c * e) for e, c in p.terms if e))


def coefficient_sum(p: SparsePoly) -> int:
    return sum(c for _, c in p.terms)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact evaluation needs an int or Fraction, got {type(x).__name__}")


def eval_exact(p: SparsePoly, x) -> Fraction:
    """Evaluate at a rational point by sparse Horner across exponent gaps."""
    x = _as_fraction(x)
    if not p:
        return Fraction(0)
    terms = p.terms
    value = Fraction(terms[-1][1])
    prev = terms[-1][0]
    for e, c in reversed(terms[:-1]):
        value = value * x ** (prev - e) + c
        prev = e
    if prev:
        value *= x**prev
    return value


def eval_numeric(p: SparsePoly, x, work_precision: int = 53) -> tuple[mpmath.mpc, float]:
    """Evaluate ``p`` at a complex point in ``work_precision``-bit arithmetic.

    Each term is formed as ``c * exp(e * log x)`` so that large exponents never
    overflow.  The returned error bound dominates the accumulated rounding
    error: with unit roundoff ``u``, a term with exponent ``e`` is off by at
    most ``(8 + 4 e |log x|) u`` relative to its magnitude, and summing ``k``
    terms adds ``k u`` times the sum of magnitudes.  A rational ``x`` is
    rounded once to the working precision; that relative error ``d`` moves a
    term with exponent ``e`` by about ``e d``, which the bound also carries.
    """
    if work_precision < 53:
        raise ValueError("work_precision must be at least 53 bits")
    with mpmath.workprec(work_precision + 10):
        if isinstance(x, Fraction):
            xm = mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
            rounded = x.denominator & (x.denominator - 1) != 0
        else:
            xm = mpmath.mpc(x)
            rounded = False
        total = mpmath.mpc(0)
        if not p:
            return total, 0.0
        u = mpmath.ldexp(1, -work_precision)
        bound = mpmath.mpf(0)
        magsum = mpmath.mpf(0)
        if xm == 0:
            c0 = p.coeff(0)
            return mpmath.mpc(c0), 0.0
        lx = mpmath.log(xm)
        abs_lx = abs(lx)
        log_abs = mpmath.re(lx)
        for e, c in p.terms:
            if e == 0:
                term = mpmath.mpc(c)
                mag = abs(mpmath.mpf(c))
                rel = mpmath.mpf(1)
            else:
                term = c * mpmath.exp(e * lx)
                mag = abs(mpmath.mpf(c)) * mpmath.exp(e * log_abs)
                rel = 8 + 4 * e * abs_lx + (2 * e if rounded else 0)
            total += term
            magsum += mag
            bound += rel * mag
        bound = (bound + (len(p) + 2) * magsum) * u
        # slack for the magnitude estimate itself
        bound *= 1 + mpmath.mpf(2) ** -20
        return +total, float(bound) if bound < mpmath.mpf("1e300") else float("inf")


def _runs(p: SparsePoly) -> list[tuple[int, int, int]]:
    """Partial-sum runs ``(start, stop, value)`` of p/(1-z), half-open."""
    runs = []
    s = 0
    terms = p.terms
    for idx, (e, c) in enumerate(terms):
        s += c
        stop = terms[idx + 1][0] if idx + 1 < len(terms) else e
        if s and stop > e:
            runs.append((e, stop, s))
    return runs


def quotient_runs(p: SparsePoly) -> list[tuple[int, int, int]]:
    """Run-length form of ``p/(1-z)``: list of ``(start, stop, value)``.

    Coefficient ``k`` of the quotient equals ``value`` for ``start <= k < stop``.
    Raises :class:`NotDivisible` if p(1) != 0.
    """
    if coefficient_sum(p) != 0:
        raise NotDivisible(f"p(1) = {coefficient_sum(p)} != 0")
    return _runs(p)


def div_one_minus_z(p: SparsePoly) -> SparsePoly:
    """Exact quotient ``p/(1-z)``.

    Coefficients of the quotient are running sums of the coefficients of p,
    constant between consecutive exponents of p.  Runs are materialized one
    term per exponent since a SparsePoly has no block encoding.
    """
    runs = quotient_runs(p)
    out = []
    for start, stop, value in runs:
        out.extend((k, value) for k in range(start, stop))
    return SparsePoly._from_canonical(tuple(out))


def one_minus_z_multiplicity(p: SparsePoly) -> tuple[int, SparsePoly]:
    """Largest k with (1-z)^k | p, together with p/(1-z)^k."""
    if not p:
        raise PolyError("multiplicity of (1-z) in the zero polynomial is undefined")
    k = 0
    while coefficient_sum(p) == 0:
        p = div_one_minus_z(p)
        k += 1
    return k, p


def to_dense(p: SparsePoly, cap: int = DEFAULT_DEGREE_CAP) -> list[int]:
    """Ascending dense coefficient list of length deg+1."""
    if p.degree > cap:
        raise DegreeCapExceeded(f"degree {p.degree} exceeds cap {cap}")
    out = [0] * (p.degree + 1)
    for e, c in p.terms:
        out[e] = c
    return out


def max_abs_coefficient(p: SparsePoly) -> int:
    return max((abs(c) for _, c in p.terms), default=0)


def all_nonnegative(p: SparsePoly) -> bool:
    return all(c >= 0 for _, c in p.terms)


def first_negative(p: SparsePoly) -> tuple[int, int] | None:
    for e, c in p.terms:
        if c < 0:
            return (e, c)
    return None


# --- canonical text format -------------------------------------------------

_TERM_RE = re.compile(r"(\d+)(?:\*z\^(\d+))?")


def format_poly(p: SparsePoly) -> str:
    """Render as ``c0 + c1*z^e1 - c2*z^e2 ...`` in ascending exponent order."""
    if not p:
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms):
        body = str(abs(c)) if e == 0 else f"{abs(c)}*z^{e}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_poly(text: str) -> SparsePoly:
    """Parse the canonical text format produced by :func:`format_poly`."""
    s = text.strip()
    if s == "0":
        return ZERO
    tokens = s.split()
    if not tokens:
        raise PolyError("empty polynomial text")
    sign = 1
    first = tokens[0]
    if first.startswith("-"):
        sign = -1
        first = first[1:]
    items = [(sign, first)]
    rest = tokens[1:]
    if len(rest) % 2:
        raise PolyError(f"malformed polynomial text: {text!r}")
    for op, body in zip(rest[::2], rest[1::2]):
        if op not in ("+", "-"):
            raise PolyError(f"expected '+' or '-', got {op!r}")
        items.append((1 if op == "+" else -1, body))
    terms = []
    last = -1
    for sgn, body in items:
        m = _TERM_RE.fullmatch(body)
        if not m:
            raise PolyError(f"malformed term {body!r}")
        c = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 0
        if c == 0 or e <= last or (m.group(2) is None) != (e == 0):
            raise PolyError(f"non-canonical term {body!r} in {text!r}")
        last = e
        terms.append((e, sgn * c))
    return SparsePoly._from_canonical(tuple(terms))


def dense_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Schoolbook convolution of ascending coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out
