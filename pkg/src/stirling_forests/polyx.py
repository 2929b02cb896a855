"""Exact integer polynomial arithmetic and shape analysis.

A polynomial is represented by a dense coefficient sequence starting with the
constant term, so 1 + 10x + 4x^2 is ``IntPolynomial([1, 10, 4])``.  Trailing
zeros are trimmed on construction; the zero polynomial has an empty
coefficient tuple and degree -inf.  All arithmetic is exact over arbitrary
precision integers (or exact rationals for the series intermediates).

Shape notions are always taken relative to an explicit center degree n, which
may exceed the actual degree:

* symmetric about n: a_i = a_{n-i} for 0 <= i <= n;
* unimodal: coefficients rise then fall;
* alternating increasing: a_0 <= a_n <= a_1 <= a_{n-1} <= ...;
* gamma expansion about n: h = sum_i g_i x^i (1+x)^(n-2i).

Every polynomial of degree <= n splits uniquely as h = a + x*b with a
symmetric about n and b symmetric about n-1 (``symmetric_decompose``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence


class SymmetryError(ValueError):
    """Raised when a gamma expansion is requested for a non-symmetric input.

    Carries the first violated index pair as ``.pair``.
    """

    def __init__(self, pair: tuple[int, int], values: tuple[int, int]):
        self.pair = pair
        super().__init__(
            f"not symmetric about requested center: coefficient {pair[0]} is "
            f"{values[0]} but coefficient {pair[1]} is {values[1]}"
        )


class IntPolynomial:
    """Dense integer-coefficient polynomial, lowest degree first.

    >>> IntPolynomial([1, 10, 4]).pretty()
    '1 + 10x + 4x^2'
    >>> IntPolynomial([0, 0]) == IntPolynomial([])
    True
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        self.coeffs = tuple(int(c) for c in coeffs[:end])

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversal(self, n: int) -> "IntPolynomial":
        """x^n * h(1/x), valid for n >= deg(h)."""
        if n < self.degree:
            raise ValueError(f"reversal center {n} below degree {self.degree}")
        return IntPolynomial([self.coeff(n - i) for i in range(n + 1)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, by: int) -> "IntPolynomial":
        """Multiply by x^by."""
        return IntPolynomial((0,) * by + self.coeffs)

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            term = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            body = str(mag) if (i == 0 or mag != 1) else ""
            if not parts:
                parts.append(("-" if c < 0 else "") + body + term)
            else:
                parts.append((" - " if c < 0 else " + ") + body + term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial with exact rational coefficients (series plumbing)."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(coeffs: Sequence[Fraction | int]) -> "RationalPolynomial":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return RationalPolynomial(tuple(cs))

    def add(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        return RationalPolynomial.of(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def mul(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return RationalPolynomial.of(out)

    def scale(self, s: Fraction | int) -> "RationalPolynomial":
        return RationalPolynomial.of([c * s for c in self.coeffs])

    def to_int_polynomial(self) -> IntPolynomial:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ArithmeticError(f"non-integer coefficients: {self.coeffs}")
        return IntPolynomial([int(c) for c in self.coeffs])


@dataclass(frozen=True)
class SymmetricDecomposition:
    """h = a + x*b with a symmetric about ``center`` and b about ``center``-1."""

    a: IntPolynomial
    b: IntPolynomial
    center: int

    def recombine(self) -> IntPolynomial:
        return self.a + self.b.shift(1)


@dataclass(frozen=True)
class GammaExpansion:
    """center n plus g_0..g_{floor(n/2)} with h = sum g_i x^i (1+x)^(n-2i)."""

    center: int
    gamma: tuple[int, ...]


def _exact_div_by_one_minus_x(p: IntPolynomial) -> IntPolynomial:
    """Divide exactly by (1 - x); the remainder must vanish."""
    if p.is_zero():
        return p
    out = []
    run = 0
    for c in p.coeffs:
        run += c
        out.append(run)
    if out[-1] != 0:
        raise ArithmeticError("division by (1 - x) is not exact; decomposition bug")
    return IntPolynomial(out[:-1])


def _check_center(h: IntPolynomial, n: int) -> None:
    if n < h.degree:
        raise ValueError(f"center degree {n} below polynomial degree {h.degree}")
    if n < 0:
        raise ValueError("center degree must be nonnegative")


def is_symmetric(h: IntPolynomial, n: int) -> bool:
    return all(h.coeff(i) == h.coeff(n - i) for i in range(n + 1))


def shape_properties(h: IntPolynomial, n: int) -> dict:
    """Symmetry, unimodality, alternating-increase, and gamma-positivity about n.

    Requires nonnegative coefficients and n >= deg(h).
    """
    _check_center(h, n)
    if any(c < 0 for c in h.coeffs):
        raise ValueError("shape predicates require nonnegative coefficients")
    a = [h.coeff(i) for i in range(n + 1)]
    symmetric = all(a[i] == a[n - i] for i in range(n + 1))
    rises = 0
    while rises < n and a[rises] <= a[rises + 1]:
        rises += 1
    unimodal = all(a[i] >= a[i + 1] for i in range(rises, n))
    chain = []
    lo, hi = 0, n
    while lo <= hi:
        chain.append(a[lo])
        if lo != hi:
            chain.append(a[hi])
        lo, hi = lo + 1, hi - 1
    # chain is a_0, a_n, a_1, a_{n-1}, ..., ending at a_{floor((n+1)/2)}
    alternating = all(chain[i] <= chain[i + 1] for i in range(len(chain) - 1))
    gamma_positive = symmetric and all(
        g >= 0 for g in gamma_expand(h, n).gamma
    )
    return {
        "symmetric": symmetric,
        "unimodal": unimodal,
        "alternating_increasing": alternating,
        "gamma_positive": gamma_positive,
    }


def symmetric_decompose(h: IntPolynomial, n: int) -> SymmetricDecomposition:
    """Unique split h = a + x*b, a symmetric about n, b about n-1.

    a = (h(x) - x^(n+1) h(1/x)) / (1 - x) and b = (x^n h(1/x) - h(x)) / (1 - x);
    both divisions are exact.
    """
    _check_center(h, n)
    a = _exact_div_by_one_minus_x(h - h.reversal(n + 1))
    b = _exact_div_by_one_minus_x(h.reversal(n) - h)
    return SymmetricDecomposition(a=a, b=b, center=n)


def _binomial_row(m: int) -> list[int]:
    row = [1]
    for _ in range(m):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def gamma_expand(h: IntPolynomial, n: int) -> GammaExpansion:
    """Coordinates of h in the basis x^i (1+x)^(n-2i), for h symmetric about n.

    The coefficients are peeled from i = 0 upward; they are unique, and may be
    negative.  Non-symmetric input raises SymmetryError.
    """
    _check_center(h, n)
    for i in range(n + 1):
        if h.coeff(i) != h.coeff(n - i):
            raise SymmetryError((i, n - i), (h.coeff(i), h.coeff(n - i)))
    work = [h.coeff(i) for i in range(n + 1)]
    gamma = []
    for i in range(n // 2 + 1):
        g = work[i]
        gamma.append(g)
        if g:
            row = _binomial_row(n - 2 * i)
            for j, binom in enumerate(row):
                work[i + j] -= g * binom
    if any(work):
        raise ArithmeticError("gamma peeling left a nonzero remainder")
    return GammaExpansion(center=n, gamma=tuple(gamma))


def gamma_compose(g: GammaExpansion) -> IntPolynomial:
    """Expand sum_i gamma_i x^i (1+x)^(center-2i); inverse of gamma_expand."""
    out = IntPolynomial()
    for i, gi in enumerate(g.gamma):
        if gi == 0:
            continue
        if g.center - 2 * i < 0:
            raise ValueError(f"gamma index {i} exceeds center {g.center}")
        out = out + IntPolynomial(_binomial_row(g.center - 2 * i)).shift(i) * gi
    return out


def egf_one_over_k_eulerian(k: int, N: int) -> list[IntPolynomial]:
    """First N+1 polynomials A_n of the order-1/k Eulerian family.

    The exponential generating function of A_n/n! is
    ((1 - x) / (e^(kz(x-1)) - x))^(1/k).  Writing it as h(z) = g(z)^(-1/k)
    with g(z) = 1 - sum_{m>=1} k^m (x-1)^(m-1) z^m / m!, the coefficients
    h_n follow from the first-order relation k h' g = -g' h, solved as a
    triangular recurrence in exact rational arithmetic.  Each n! h_n must
    come out integral; a fractional coefficient aborts.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if N < 0:
        raise ValueError("N must be nonnegative")
    x_minus_1_pow = [RationalPolynomial.of([1])]
    for _ in range(N):
        x_minus_1_pow.append(x_minus_1_pow[-1].mul(RationalPolynomial.of([-1, 1])))
    g = [RationalPolynomial.of([1])]
    for m in range(1, N + 1):
        g.append(x_minus_1_pow[m - 1].scale(Fraction(-(k**m), factorial(m))))
    h = [RationalPolynomial.of([1])]
    for n in range(N):
        acc = RationalPolynomial(())
        for m in range(1, n + 1):
            acc = acc.add(h[n - m + 1].mul(g[m]).scale(-k * (n - m + 1)))
        for m in range(n + 1):
            acc = acc.add(g[m + 1].mul(h[n - m]).scale(-(m + 1)))
        h.append(acc.scale(Fraction(1, k * (n + 1))))
    return [hn.scale(factorial(n)).to_int_polynomial() for n, hn in enumerate(h)]
