"""Closed-form probability generating functions (PGFs) for cycle counts of
commutators [σ,τ] with σ uniform, for the solved families of τ, plus the
uniform/alternating-group baselines and decompositions of these laws into
sums of independent Bernoulli variables.

All PGF coefficients are exact rationals.  Floating point appears only in
the root-finder that extracts numeric Bernoulli parameters for the
one-cycle family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polys import (
    ONE,
    RationalPoly,
    falling_factorial,
    rising_factorial,
    rising_square_sum,
)

__all__ = [
    "CyclePGF",
    "PgfValidation",
    "BernoulliTerm",
    "BernoulliDecomposition",
    "RootFindError",
    "uniform_cycles_pgf",
    "alternating_pgf",
    "one_cycle_pgf",
    "two_cycles_pgf",
    "transpositions_pgf",
    "transpositions_rising_form",
    "validate_pgf",
    "bernoulli_decomposition",
    "negative_real_roots",
    "one_cycle_pgf_roots",
]

# Source tags for PGFs produced in this package.  "oracle" marks PGFs built
# from an enumerated distribution rather than a closed form.
COMMUTATOR_SOURCES = ("one_cycle", "two_cycles", "transpositions")
SOURCES = ("uniform", "alternating", "co_alternating", *COMMUTATOR_SOURCES, "oracle")


@dataclass(frozen=True)
class CyclePGF:
    """A cycle-count PGF: E t^C = sum_k P(C = k) t^k, with exact rational
    coefficients, on a ground set of size M."""

    poly: RationalPoly
    M: int
    source: str

    def coefficient(self, k: int) -> Fraction:
        return self.poly.coefficient(k)

    def probabilities(self) -> dict[int, Fraction]:
        """Nonzero probabilities keyed by cycle count."""
        return {k: c for k, c in enumerate(self.poly.coeffs) if c}

    def mean(self) -> Fraction:
        """Expected cycle count (derivative of the PGF at 1)."""
        return self.poly.derivative()(1)

    def to_json(self) -> dict:
        return {"M": self.M, "source": self.source, "coeffs": self.poly.coeff_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "CyclePGF":
        return cls(RationalPoly.from_coeff_strings(data["coeffs"]), int(data["M"]), data["source"])


def uniform_cycles_pgf(m: int) -> CyclePGF:
    """PGF of the cycle count of a uniform permutation of m points:
    the degree-m rising factorial divided by m!."""
    if m < 1:
        raise ValueError("m must be positive")
    return CyclePGF(rising_factorial(m) / math.factorial(m), m, "uniform")


def alternating_pgf(m: int, complement: bool = False) -> CyclePGF:
    """PGF of the cycle count of a uniform even permutation of m points,
    or of a uniform odd permutation when complement=True.

    Conditioning the uniform law on cycle-count parity gives
    (R_m(t) +/- F_m(t)) / m! with R/F the rising/falling factorials.
    The even/odd split is degenerate at m=1 (there are no odd permutations),
    so complement=True requires m >= 2 and the even law at m=1 is the point
    mass t.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if complement:
        if m < 2:
            raise ValueError("no odd permutations on a single point")
        poly = (rising_factorial(m) - falling_factorial(m)) / math.factorial(m)
        return CyclePGF(poly, m, "co_alternating")
    if m == 1:
        return CyclePGF(RationalPoly([0, 1]), 1, "alternating")
    poly = (rising_factorial(m) + falling_factorial(m)) / math.factorial(m)
    return CyclePGF(poly, m, "alternating")


def one_cycle_pgf(m: int) -> CyclePGF:
    """PGF of the cycle count of [σ,τ] when τ is a single m-cycle:
    (R_{m+1}(t) - F_{m+1}(t)) / (m+1)!.

    This is also the cycle-count law of a uniform odd permutation of m+1
    points, which is how the brute-force oracle cross-checks it.
    """
    if m < 1:
        raise ValueError("m must be positive")
    poly = (rising_factorial(m + 1) - falling_factorial(m + 1)) / math.factorial(m + 1)
    return CyclePGF(poly, m, "one_cycle")


def two_cycles_pgf(m: int) -> CyclePGF:
    """PGF of the cycle count of [σ,τ] when τ is a product of two disjoint
    m-cycles on 2m points:

        (R_{2m+1}(t) - F_{2m+1}(t)) / (2m+1)!
        + 2/(2m)! * ((R_{m+1}(t) - F_{m+1}(t)) / (m+1))^2
        - 2/(2m)! * (S(t) + S(-t))

    with S = rising_square_sum(m).  Only even powers of t survive.
    """
    if m < 1:
        raise ValueError("m must be positive")
    two_m = 2 * m
    head = (rising_factorial(two_m + 1) - falling_factorial(two_m + 1)) / math.factorial(two_m + 1)
    cross = (rising_factorial(m + 1) - falling_factorial(m + 1)) / (m + 1)
    cross = (cross * cross) * Fraction(2, math.factorial(two_m))
    s = rising_square_sum(m)
    diag = (s + s.reflect()) * Fraction(2, math.factorial(two_m))
    return CyclePGF(head + cross - diag, two_m, "two_cycles")


def transpositions_pgf(m: int) -> CyclePGF:
    """PGF of the cycle count of [σ,τ] when τ is a product of m disjoint
    transpositions on 2m points: prod_{k=1..m} (t^2 + 2k - 2) / (2k - 1).

    Equivalently 2 * (sum of independent Bernoulli(1/(2k-1)) variables).
    """
    if m < 1:
        raise ValueError("m must be positive")
    poly = ONE
    denom = 1
    for k in range(1, m + 1):
        poly = poly * RationalPoly([2 * k - 2, 0, 1])
        denom *= 2 * k - 1
    return CyclePGF(poly / denom, 2 * m, "transpositions")


def transpositions_rising_form(m: int, base: int = 4) -> RationalPoly:
    """The transpositions law written against the rising factorial:
    base^m * m!/(2m)! * R_m(t^2/2).

    base=4 reproduces transpositions_pgf exactly.  base=2, a prefactor
    sometimes quoted for this law, fails normalization — total mass 2^-m
    (1/2 already at m=1) — and is kept available as a failing witness for
    the consistency suite.
    """
    if m < 1:
        raise ValueError("m must be positive")
    scale = Fraction(base**m * math.factorial(m), math.factorial(2 * m))
    half_square = RationalPoly([0, 0, Fraction(1, 2)])
    return scale * rising_factorial(m).compose(half_square)


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class PgfValidation:
    """Structured result of checking the CyclePGF invariants."""

    source: str
    M: int
    normalized: bool
    nonnegative: bool
    zero_constant: bool
    parity_ok: Union[bool, None]  # None when the source has no parity law

    @property
    def ok(self) -> bool:
        return self.normalized and self.nonnegative and self.zero_constant and self.parity_ok is not False

    def failures(self) -> list[str]:
        out = []
        if not self.normalized:
            out.append("total probability != 1")
        if not self.nonnegative:
            out.append("negative coefficient")
        if not self.zero_constant:
            out.append("nonzero constant term")
        if self.parity_ok is False:
            out.append("support violates cycle-count parity")
        return out

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "M": self.M,
            "normalized": self.normalized,
            "nonnegative": self.nonnegative,
            "zero_constant": self.zero_constant,
            "parity_ok": self.parity_ok,
            "ok": self.ok,
        }


def validate_pgf(pgf: CyclePGF) -> PgfValidation:
    """Check normalization, nonnegativity, zero constant term, and (for
    sources with a parity law) that only cycle counts of the right parity
    carry mass.  All checks are exact."""
    poly = pgf.poly
    normalized = poly(1) == 1
    nonnegative = all(c >= 0 for c in poly.coeffs)
    zero_constant = poly.coefficient(0) == 0
    if pgf.source in COMMUTATOR_SOURCES or pgf.source == "alternating":
        want = pgf.M % 2
    elif pgf.source == "co_alternating":
        want = (pgf.M + 1) % 2
    else:
        want = None
    if want is None:
        parity_ok: Union[bool, None] = None
    else:
        parity_ok = all(k % 2 == want for k, c in enumerate(poly.coeffs) if c)
    return PgfValidation(pgf.source, pgf.M, normalized, nonnegative, zero_constant, parity_ok)


# -- Bernoulli decompositions --------------------------------------------------


@dataclass(frozen=True)
class BernoulliTerm:
    """One independent Bernoulli(p) summand, contributing multiplier * B."""

    p: Union[Fraction, float]
    multiplier: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.p, Fraction)


@dataclass(frozen=True)
class BernoulliDecomposition:
    """A cycle-count law written as offset + sum_j multiplier_j * B_j with
    independent Bernoulli B_j; the PGF is t^offset * prod_j (1 - p_j + p_j t^{m_j})."""

    terms: tuple[BernoulliTerm, ...]
    offset: int

    @property
    def is_exact(self) -> bool:
        return all(t.is_exact for t in self.terms)

    def mean(self):
        return self.offset + sum(t.multiplier * t.p for t in self.terms)

    def reconstruct(self) -> Union[RationalPoly, list[float]]:
        """Expand the product of term PGFs times t^offset.  Exact
        decompositions return a RationalPoly; numeric ones a float
        coefficient list (index = degree)."""
        if self.is_exact:
            poly = RationalPoly([0] * self.offset + [1])
            for t in self.terms:
                factor = [1 - t.p] + [Fraction(0)] * (t.multiplier - 1) + [t.p]
                poly = poly * RationalPoly(factor)
            return poly
        coeffs = [0.0] * self.offset + [1.0]
        for t in self.terms:
            p = float(t.p)
            factor = [1.0 - p] + [0.0] * (t.multiplier - 1) + [p]
            out = [0.0] * (len(coeffs) + len(factor) - 1)
            for i, a in enumerate(coeffs):
                if a:
                    for j, b in enumerate(factor):
                        out[i + j] += a * b
            coeffs = out
        return coeffs

    def residual_against(self, pgf: CyclePGF) -> float:
        """Largest absolute coefficient difference between the expanded
        decomposition and the PGF (0.0 for exact matches)."""
        rebuilt = self.reconstruct()
        if isinstance(rebuilt, RationalPoly):
            degree = max(rebuilt.degree, pgf.poly.degree)
            return float(max(abs(rebuilt.coefficient(k) - pgf.poly.coefficient(k)) for k in range(degree + 1)))
        degree = max(len(rebuilt) - 1, pgf.poly.degree)
        return max(
            abs((rebuilt[k] if k < len(rebuilt) else 0.0) - float(pgf.poly.coefficient(k)))
            for k in range(degree + 1)
        )

    def to_json(self) -> dict:
        terms = []
        for t in self.terms:
            p = f"{t.p.numerator}/{t.p.denominator}" if isinstance(t.p, Fraction) else float(t.p)
            terms.append({"p": p, "multiplier": t.multiplier})
        return {"offset": self.offset, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "BernoulliDecomposition":
        terms = tuple(
            BernoulliTerm(Fraction(e["p"]) if isinstance(e["p"], str) else float(e["p"]), int(e["multiplier"]))
            for e in data["terms"]
        )
        return cls(terms, int(data["offset"]))


class RootFindError(RuntimeError):
    """Raised when the real-root locator cannot isolate the expected roots."""


def negative_real_roots(p: RationalPoly, expected: int) -> list[float]:
    """Locate all roots of p on the negative real axis, for a polynomial
    whose roots are known to all be real and negative.

    Brackets sign changes of the exact polynomial on a geometric grid
    (refining the grid until `expected` brackets appear), bisects each
    bracket with exact rational arithmetic, then polishes in floating point
    with Newton steps.  Residuals are checked against the monic rescaling
    of p at 1e-12.
    """
    if expected == 0:
        return []
    if p.degree != expected:
        raise RootFindError(f"degree {p.degree} polynomial cannot have {expected} negative roots")
    coeffs = p.coeffs
    lead = abs(coeffs[-1])
    const = abs(coeffs[0])
    if const == 0:
        raise RootFindError("zero constant term: divide out the root at 0 first")
    upper = 1 + max(abs(c) for c in coeffs[:-1]) / lead  # Cauchy bound on |root|
    lower = const / (const + max(abs(c) for c in coeffs[1:]))
    hi_mag, lo_mag = float(upper) * 1.001, float(lower) * 0.999

    def sign_at(x: Fraction) -> int:
        v = p(x)
        return (v > 0) - (v < 0)

    grid_n = max(8 * expected, 32)
    brackets: list[tuple[Fraction, Fraction]] = []
    exact_roots: list[Fraction] = []
    for _ in range(14):
        ratio = (lo_mag / hi_mag) ** (1.0 / grid_n)
        pts = [Fraction(-hi_mag * ratio**j) for j in range(grid_n + 1)]
        signs = [sign_at(x) for x in pts]
        brackets, exact_roots = [], []
        for a, b, sa, sb in zip(pts, pts[1:], signs, signs[1:]):
            if sa == 0:
                exact_roots.append(a)
            elif sa * sb < 0:
                brackets.append((a, b))
        if signs[-1] == 0:
            exact_roots.append(pts[-1])
        if len(brackets) + len(exact_roots) >= expected:
            break
        grid_n *= 2
    if len(brackets) + len(exact_roots) != expected:
        raise RootFindError(
            f"isolated {len(brackets) + len(exact_roots)} of {expected} negative roots "
            f"on [{-hi_mag:.6g}, {-lo_mag:.6g}] at grid size {grid_n}; "
            f"coefficients span {float(min(map(abs, coeffs))):.3g}..{float(max(map(abs, coeffs))):.3g}"
        )

    deriv = p.derivative()
    abs_coeffs = [abs(float(c)) for c in coeffs]

    def scaled_residual(x: float) -> float:
        # Residual relative to the evaluation magnitude: invariant under
        # rescaling to the monic polynomial, and bounded below only by the
        # float roundoff of the evaluation itself.
        scale = 0.0
        for c in reversed(abs_coeffs):
            scale = scale * abs(x) + c
        return abs(p(x)) / scale if scale else abs(p(x))

    roots = [float(r) for r in exact_roots]
    for lo, hi in brackets:
        slo = sign_at(lo)
        for _ in range(80):
            mid = (lo + hi) / 2
            sm = sign_at(mid)
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        best = float((lo + hi) / 2)
        x = best
        for _ in range(6):
            dfx = deriv(x)
            if dfx == 0:
                break
            x = x - p(x) / dfx
            if scaled_residual(x) < scaled_residual(best):
                best = x
        if scaled_residual(best) > 1e-12:
            raise RootFindError(f"Newton polish stalled at x={best!r}, scaled residual {scaled_residual(best):.3g}")
        roots.append(best)
    return sorted(roots)


def _one_cycle_even_part(pgf: CyclePGF) -> tuple[int, RationalPoly]:
    """Split the one-cycle PGF as t^offset * E(t^2); returns (offset, E)
    with E having integer coefficients after clearing denominators."""
    m = pgf.M
    offset = 1 if m % 2 else 2
    scaled = pgf.poly * math.factorial(m + 1)
    even = [scaled.coefficient(offset + 2 * j) for j in range((m - offset) // 2 + 1)]
    return offset, RationalPoly(even)


def bernoulli_decomposition(pgf: CyclePGF) -> BernoulliDecomposition:
    """Decompose a cycle-count PGF into independent Bernoulli summands.

    uniform          -> parameters 1/k (k = 1..M), multiplier 1.
    transpositions   -> parameters 1/(2k-1) (k = 1..M/2), multiplier 2.
    one_cycle        -> all zeros of the PGF are purely imaginary, so
                        t^-offset * PGF factors into quadratics
                        (t^2 + r_j)/(1 + r_j); each gives a doubled
                        Bernoulli with numeric parameter p_j = 1/(1 + r_j).
    """
    if pgf.source == "uniform":
        terms = tuple(BernoulliTerm(Fraction(1, k), 1) for k in range(1, pgf.M + 1))
        return BernoulliDecomposition(terms, 0)
    if pgf.source == "transpositions":
        pairs = pgf.M // 2
        terms = tuple(BernoulliTerm(Fraction(1, 2 * k - 1), 2) for k in range(1, pairs + 1))
        return BernoulliDecomposition(terms, 0)
    if pgf.source == "one_cycle":
        offset, even = _one_cycle_even_part(pgf)
        expected = (pgf.M - offset) // 2
        magnitudes = [-u for u in negative_real_roots(even, expected)]
        terms = tuple(BernoulliTerm(1.0 / (1.0 + r), 2) for r in sorted(magnitudes, reverse=True))
        return BernoulliDecomposition(terms, offset)
    raise ValueError(f"no Bernoulli decomposition for source {pgf.source!r}")


def one_cycle_pgf_roots(m: int) -> list[complex]:
    """All nonzero complex roots of the one-cycle commutator PGF of order m,
    found via the negative-real-root locator in u = t^2 and polished with
    complex Newton iterations on the exact polynomial.

    The polished roots sit on the imaginary axis (the PGF has the Lee-Yang
    property); callers can measure |Re z| to confirm.
    """
    pgf = one_cycle_pgf(m)
    offset, even = _one_cycle_even_part(pgf)
    expected = (m - offset) // 2
    magnitudes = [-u for u in negative_real_roots(even, expected)]
    scaled = pgf.poly * math.factorial(m + 1)
    deriv = scaled.derivative()
    roots = []
    for r in magnitudes:
        for z0 in (complex(0.0, math.sqrt(r)), complex(0.0, -math.sqrt(r))):
            z = best = z0
            for _ in range(8):
                dfz = deriv(z)
                if dfz == 0:
                    break
                z = z - scaled(z) / dfz
                if abs(scaled(z)) < abs(scaled(best)):
                    best = z
            roots.append(best)
    return roots
