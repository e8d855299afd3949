"""Dense polynomials with exact rational coefficients, and the factorial
polynomial toolkit built on them.

Coefficients are `fractions.Fraction` values indexed by degree; the
highest-degree coefficient is nonzero (the zero polynomial is the empty
tuple, degree -1).  Everything here is exact: floating point only enters
when a polynomial is *evaluated* at a float or complex point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "RationalPoly",
    "X",
    "ONE",
    "ZERO",
    "rising_factorial",
    "falling_factorial",
    "rising_product",
    "discrete_difference",
    "rising_square_sum",
    "connection_expand",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class RationalPoly:
    """Immutable dense polynomial over the rationals."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of X^k (zero beyond the degree)."""
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalPoly) else RationalPoly([-_as_fraction(other)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self._coeffs])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return RationalPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / _as_fraction(scalar))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    # -- evaluation and transforms -------------------------------------------

    def __call__(self, x):
        """Horner evaluation.  Exact for int/Fraction arguments; float or
        complex arguments evaluate in floating point."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        """The polynomial self(inner(X))."""
        acc = RationalPoly()
        for c in reversed(self._coeffs):
            acc = acc * inner + RationalPoly([c])
        return acc

    def reflect(self) -> "RationalPoly":
        """The polynomial P(-X)."""
        return RationalPoly([-c if k & 1 else c for k, c in enumerate(self._coeffs)])

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * c for k, c in enumerate(self._coeffs)][1:])

    # -- rendering ------------------------------------------------------------

    def coeff_strings(self) -> list[str]:
        """Coefficients as "num/den" strings, index = degree."""
        return [f"{c.numerator}/{c.denominator}" for c in self._coeffs]

    @classmethod
    def from_coeff_strings(cls, strings: Sequence[str]) -> "RationalPoly":
        return cls([Fraction(s) for s in strings])

    def pretty(self, var: str = "t") -> str:
        """Human-readable rendering, highest degree first."""
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self._coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = var if k == 1 else f"{var}^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"RationalPoly({self.pretty(var='X')!r})"


ZERO = RationalPoly()
ONE = RationalPoly([1])
X = RationalPoly([0, 1])


def rising_factorial(n: int) -> RationalPoly:
    """The degree-n polynomial X(X+1)...(X+n-1); 1 for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = ONE
    for i in range(n):
        p = p * RationalPoly([i, 1])
    return p


def falling_factorial(n: int) -> RationalPoly:
    """The degree-n polynomial X(X-1)...(X-n+1); 1 for n = 0.

    Equals (-1)^n * rising_factorial(n)(-X).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = ONE
    for i in range(n):
        p = p * RationalPoly([-i, 1])
    return p


def rising_product(x: Rational, n: int) -> Rational:
    """Exact value of x(x+1)...(x+n-1).

    For a positive integer x this equals the gamma ratio Γ(x+n)/Γ(x); we
    never go through floating-point gamma.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = x ** 0  # 1 with the argument's exact type
    for i in range(n):
        acc *= x + i
    return acc


def discrete_difference(p: RationalPoly) -> RationalPoly:
    """The backward difference P(X) - P(X-1).

    Drops the degree by exactly one for nonconstant P, and sends the rising
    factorial of degree n to n times the one of degree n-1.
    """
    return p - p.compose(RationalPoly([-1, 1]))


def rising_square_sum(m: int) -> RationalPoly:
    """The degree-(2m+1) polynomial S with S(0) = 0 whose backward difference
    is the square of the degree-m rising factorial.

    Consequently S(N) = sum_{k=1..N} (k(k+1)...(k+m-1))^2 at every integer
    N >= 1.  Explicitly:

        S(X) = sum_{k=0..m} (-1)^k * k!/(2m-k+1) * C(m,k)^2 * R_{2m-k+1}(X)

    with R_n the degree-n rising factorial.
    """
    if m < 1:
        raise ValueError("m must be positive")
    total = ZERO
    for k in range(m + 1):
        coeff = Fraction((-1) ** k * math.factorial(k) * math.comb(m, k) ** 2, 2 * m - k + 1)
        total = total + coeff * rising_factorial(2 * m - k + 1)
    return total


def connection_expand(m: int, n: int) -> RationalPoly:
    """Expansion of the product of the degree-m and degree-n falling
    factorials in the falling-factorial basis:

        sum_{k=0..m} C(m,k) C(n,k) k! * F_{m+n-k}(X)

    which must coincide with falling_factorial(m) * falling_factorial(n).
    Counting argument: both sides count pairs of injective lists of lengths
    m and n drawn from X items, grouped by the overlap size k.
    """
    if m > n:
        raise ValueError(f"m must not exceed n (got m={m}, n={n})")
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = ZERO
    for k in range(m + 1):
        total = total + (math.comb(m, k) * math.comb(n, k) * math.factorial(k)) * falling_factorial(m + n - k)
    return total
