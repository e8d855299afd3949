"""Closed-form PGFs: frozen values, cross-family equalities, invariant
validation, Bernoulli decompositions, and the Lee-Yang root structure.

The coefficientwise comparisons against brute-force enumeration live in
test_oracle.py; here we pin the formulas themselves.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from commcycles.genfun import (
    BernoulliDecomposition,
    CyclePGF,
    bernoulli_decomposition,
    negative_real_roots,
    one_cycle_pgf,
    one_cycle_pgf_roots,
    RootFindError,
    alternating_pgf,
    transpositions_pgf,
    transpositions_rising_form,
    two_cycles_pgf,
    uniform_cycles_pgf,
    validate_pgf,
)
from commcycles.polys import RationalPoly, falling_factorial, rising_factorial, rising_product

F = Fraction


def poly(*coeffs):
    return RationalPoly(coeffs)


class TestUniform:
    def test_m1(self):
        assert uniform_cycles_pgf(1).poly == poly(0, 1)

    def test_m3(self):
        assert uniform_cycles_pgf(3).poly == poly(0, F(2, 6), F(3, 6), F(1, 6))

    def test_m4_stirling_cycle_numbers(self):
        assert uniform_cycles_pgf(4).poly == poly(0, F(6, 24), F(11, 24), F(6, 24), F(1, 24))


class TestAlternating:
    def test_m2_even(self):
        assert alternating_pgf(2).poly == poly(0, 0, 1)

    def test_m2_odd(self):
        assert alternating_pgf(2, complement=True).poly == poly(0, 1)

    def test_m4_odd(self):
        # 6 transpositions (3 cycles) + 6 four-cycles (1 cycle) out of 12
        assert alternating_pgf(4, complement=True).poly == poly(0, F(1, 2), 0, F(1, 2))

    def test_m1_even_is_point_mass(self):
        assert alternating_pgf(1).poly == poly(0, 1)
        assert validate_pgf(alternating_pgf(1)).ok

    def test_m1_odd_rejected(self):
        with pytest.raises(ValueError):
            alternating_pgf(1, complement=True)


class TestOneCycle:
    def test_m2(self):
        assert one_cycle_pgf(2).poly == poly(0, 0, 1)

    def test_m3(self):
        assert one_cycle_pgf(3).poly == poly(0, F(1, 2), 0, F(1, 2))

    def test_m4(self):
        assert one_cycle_pgf(4).poly == poly(0, 0, F(5, 6), 0, F(1, 6))

    @pytest.mark.parametrize("m", range(1, 10))
    def test_equals_odd_permutation_law(self, m):
        assert one_cycle_pgf(m).poly == alternating_pgf(m + 1, complement=True).poly

    @pytest.mark.parametrize("m", range(1, 7))
    def test_gamma_sum_values_inside_range(self, m):
        # M! * P(N) = sum_{i<=N} Γ(M+i)/Γ(i) for N <= M
        p = one_cycle_pgf(m).poly
        for n in range(1, m + 1):
            assert math.factorial(m) * p(n) == sum(rising_product(i, m) for i in range(1, n + 1))


class TestTwoCycles:
    def test_m1_point_mass(self):
        assert two_cycles_pgf(1).poly == poly(0, 0, 1)

    def test_meets_transpositions_at_m2(self):
        assert two_cycles_pgf(2).poly == transpositions_pgf(2).poly

    @pytest.mark.parametrize("m", range(1, 7))
    def test_normalized_and_even(self, m):
        pgf = two_cycles_pgf(m)
        assert pgf.poly(1) == 1
        assert pgf.poly.degree == 2 * m
        assert all(c == 0 for k, c in enumerate(pgf.poly.coeffs) if k % 2)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_fourth_moment_expansion_inside_range(self, m):
        # (2M)! * P(N) = ΣΓ(i+2M)/Γ(i) + 2(ΣΓ(i+M)/Γ(i))^2 - 2Σ(Γ(i+M)/Γ(i))^2
        # for N <= M
        p = two_cycles_pgf(m).poly
        for n in range(1, m + 1):
            singles = [rising_product(i, m) for i in range(1, n + 1)]
            expected = (
                sum(rising_product(i, 2 * m) for i in range(1, n + 1))
                + 2 * sum(singles) ** 2
                - 2 * sum(s**2 for s in singles)
            )
            assert math.factorial(2 * m) * p(n) == expected


class TestTranspositions:
    def test_frozen_small(self):
        assert transpositions_pgf(1).poly == poly(0, 0, 1)
        assert transpositions_pgf(2).poly == poly(0, 0, F(2, 3), 0, F(1, 3))
        assert transpositions_pgf(3).poly == poly(0, 0, F(8, 15), 0, F(2, 5), 0, F(1, 15))

    @pytest.mark.parametrize("m", range(1, 9))
    def test_rising_form_with_corrected_prefactor(self, m):
        assert transpositions_rising_form(m, base=4) == transpositions_pgf(m).poly

    def test_halved_prefactor_fails_normalization(self):
        # documented failing witness: the 2^M prefactor gives mass 2^-M
        for m in range(1, 6):
            assert transpositions_rising_form(m, base=2)(1) == F(1, 2**m)
        assert transpositions_rising_form(1, base=2)(1) == F(1, 2)


class TestPgfInvariants:
    @pytest.mark.parametrize("m", range(1, 21))
    def test_normalization_and_mean(self, m):
        for pgf in (
            uniform_cycles_pgf(m),
            one_cycle_pgf(m),
            two_cycles_pgf(m),
            transpositions_pgf(m),
            alternating_pgf(m),
        ):
            assert pgf.poly(1) == 1
            assert pgf.mean() >= 0

    def test_validate_passes_on_real_pgfs(self):
        assert validate_pgf(uniform_cycles_pgf(5)).ok
        v = validate_pgf(one_cycle_pgf(6))
        assert v.ok and v.parity_ok  # even ground set: only even powers

    def test_validate_fails_on_garbage(self):
        bad = CyclePGF(poly(-1, 1), 1, "uniform")  # t - 1
        v = validate_pgf(bad)
        assert not v.ok
        assert not v.normalized
        assert not v.nonnegative
        assert not v.zero_constant
        assert "negative coefficient" in v.failures()

    def test_validate_catches_parity_violation(self):
        bad = CyclePGF(poly(0, F(1, 2), F(1, 2)), 2, "one_cycle")
        assert validate_pgf(bad).parity_ok is False

    def test_json_round_trip(self):
        pgf = transpositions_pgf(3)
        again = CyclePGF.from_json(pgf.to_json())
        assert again == pgf


class TestBernoulliDecompositions:
    def test_uniform_parameters(self):
        dec = bernoulli_decomposition(uniform_cycles_pgf(3))
        assert [t.p for t in dec.terms] == [F(1), F(1, 2), F(1, 3)]
        assert all(t.multiplier == 1 for t in dec.terms)
        assert dec.offset == 0
        assert dec.reconstruct() == uniform_cycles_pgf(3).poly
        assert dec.mean() == uniform_cycles_pgf(3).mean()

    def test_transpositions_parameters(self):
        dec = bernoulli_decomposition(transpositions_pgf(2))
        assert [t.p for t in dec.terms] == [F(1), F(1, 3)]
        assert all(t.multiplier == 2 for t in dec.terms)
        assert dec.reconstruct() == transpositions_pgf(2).poly

    def test_one_cycle_m3(self):
        dec = bernoulli_decomposition(one_cycle_pgf(3))
        assert dec.offset == 1
        assert len(dec.terms) == 1
        assert dec.terms[0].multiplier == 2
        assert dec.terms[0].p == pytest.approx(0.5, abs=1e-12)

    def test_one_cycle_degenerate_sizes(self):
        assert bernoulli_decomposition(one_cycle_pgf(1)) == BernoulliDecomposition((), 1)
        assert bernoulli_decomposition(one_cycle_pgf(2)) == BernoulliDecomposition((), 2)

    def test_one_cycle_m10_parameter_count(self):
        # degree 10 = offset 2 + 2 * 4 quadratic factors
        dec = bernoulli_decomposition(one_cycle_pgf(10))
        assert dec.offset == 2
        assert len(dec.terms) == 4

    @pytest.mark.parametrize("m", range(1, 31))
    def test_reconstruction_residual(self, m):
        pgf = one_cycle_pgf(m)
        dec = bernoulli_decomposition(pgf)
        assert dec.residual_against(pgf) < 1e-10
        assert all(0 < t.p <= 1 for t in dec.terms)

    def test_rejects_undistributable_sources(self):
        with pytest.raises(ValueError):
            bernoulli_decomposition(two_cycles_pgf(2))
        with pytest.raises(ValueError):
            bernoulli_decomposition(alternating_pgf(3))

    def test_json_round_trip_exact_and_numeric(self):
        for dec in (
            bernoulli_decomposition(uniform_cycles_pgf(4)),
            bernoulli_decomposition(one_cycle_pgf(7)),
        ):
            again = BernoulliDecomposition.from_json(dec.to_json())
            assert again.offset == dec.offset
            assert len(again.terms) == len(dec.terms)
            for a, b in zip(again.terms, dec.terms):
                assert a.multiplier == b.multiplier
                assert float(a.p) == pytest.approx(float(b.p), abs=1e-15)


class TestRootFinder:
    @pytest.mark.parametrize("m", range(3, 31))
    def test_lee_yang_property(self, m):
        roots = one_cycle_pgf_roots(m)
        offset = 1 if m % 2 else 2
        assert len(roots) == m - offset
        assert max(abs(z.real) for z in roots) < 1e-9

    @pytest.mark.parametrize("m", [5, 12, 21, 30])
    def test_agrees_with_companion_matrix_roots(self, m):
        # independent cross-check: numpy's eigenvalue-based roots, polished
        w = rising_factorial(m + 1) - falling_factorial(m + 1)
        np_roots = [z for z in np.roots([float(c) for c in reversed(w.coeffs)]) if abs(z) > 1e-8]
        ours = sorted(one_cycle_pgf_roots(m), key=lambda z: round(z.imag, 9))
        theirs = sorted(np_roots, key=lambda z: round(z.imag, 9))
        assert len(ours) == len(theirs)
        assert max(abs(a - b) for a, b in zip(ours, theirs)) < 1e-6

    def test_known_quadratic(self):
        # (u+1)(u+4) has roots -4, -1
        p = poly(4, 5, 1)
        roots = negative_real_roots(p, 2)
        assert roots == pytest.approx([-4.0, -1.0], abs=1e-12)

    def test_rejects_wrong_expectation(self):
        with pytest.raises(RootFindError):
            negative_real_roots(poly(4, 5, 1), 3)

    def test_rejects_zero_constant(self):
        with pytest.raises(RootFindError):
            negative_real_roots(poly(0, 1, 1), 2)
