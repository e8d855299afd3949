"""Aggregated consistency suites behind the CLI `verify` command.

Each suite returns a list of CheckResult; exact checks use rational
arithmetic with zero tolerance, statistical checks use a z-score threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import genfun, oracle, rmt
from .perm import CycleType, disjoint_transpositions, from_cycle_type, one_cycle, two_disjoint_cycles
from .polys import (
    connection_expand,
    discrete_difference,
    falling_factorial,
    rising_factorial,
    rising_product,
    rising_square_sum,
)

__all__ = ["CheckResult", "run_scope", "SCOPES"]

SCOPES = ("factorials", "genfun_vs_oracle", "bernoulli", "rmt", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), detail)


def run_factorial_checks(max_n: int = 12) -> list[CheckResult]:
    out = []
    ok = all(discrete_difference(rising_factorial(n)) == n * rising_factorial(n - 1) for n in range(1, max_n + 1))
    out.append(_check("difference_of_rising", ok, f"n <= {max_n}"))

    ok = all(rising_factorial(n).reflect() == (-1) ** n * falling_factorial(n) for n in range(max_n + 1))
    out.append(_check("reflection", ok, f"n <= {max_n}"))

    ok = all(
        connection_expand(m, n) == falling_factorial(m) * falling_factorial(n)
        for n in range(9)
        for m in range(n + 1)
    )
    out.append(_check("connection_coefficients", ok, "m <= n <= 8"))

    ok = True
    for m in range(1, 9):
        s = rising_square_sum(m)
        ok &= s(0) == 0
        ok &= discrete_difference(s) == rising_factorial(m) * rising_factorial(m)
        ok &= all(s(n) == sum(rising_product(k, m) ** 2 for k in range(1, n + 1)) for n in range(1, 13))
    out.append(_check("squared_rising_partial_sums", ok, "m <= 8, evaluations n <= 12"))

    ok = all(
        rising_factorial(n)(k) == n * sum(rising_product(j, n - 1) for j in range(1, k + 1))
        for n in range(1, max_n + 1)
        for k in range(1, max_n + 1)
    )
    out.append(_check("rising_values_as_gamma_sums", ok, f"n, k <= {max_n}"))
    return out


def run_genfun_oracle_checks(max_m: int = 6, cap: int | None = None) -> list[CheckResult]:
    out = []
    ok = all(
        oracle.distribution_to_pgf(oracle.exact_commutator_distribution(one_cycle(m), cap=cap)).poly
        == genfun.one_cycle_pgf(m).poly
        for m in range(1, max_m + 1)
    )
    out.append(_check("one_cycle_vs_oracle", ok, f"M <= {max_m}"))

    ok = all(
        oracle.distribution_to_pgf(oracle.exact_commutator_distribution(two_disjoint_cycles(m), cap=cap)).poly
        == genfun.two_cycles_pgf(m).poly
        for m in range(1, max_m // 2 + 1)
    )
    out.append(_check("two_cycles_vs_oracle", ok, f"ground sets <= {max_m}"))

    ok = all(
        oracle.distribution_to_pgf(oracle.exact_commutator_distribution(disjoint_transpositions(m), cap=cap)).poly
        == genfun.transpositions_pgf(m).poly
        for m in range(1, max_m // 2 + 1)
    )
    out.append(_check("transpositions_vs_oracle", ok, f"ground sets <= {max_m}"))

    ok = all(
        oracle.distribution_to_pgf(oracle.exact_uniform_cycle_distribution(m, subset, cap=cap)).poly
        == {
            "all": genfun.uniform_cycles_pgf,
            "alternating": lambda mm: genfun.alternating_pgf(mm, complement=False),
            "co_alternating": lambda mm: genfun.alternating_pgf(mm, complement=True),
        }[subset](m).poly
        for m in range(1, max_m + 1)
        for subset in (("all", "alternating") if m == 1 else ("all", "alternating", "co_alternating"))
    )
    out.append(_check("subset_laws_vs_oracle", ok, f"M <= {max_m}"))

    ok = all(
        genfun.one_cycle_pgf(m).poly == genfun.alternating_pgf(m + 1, complement=True).poly
        for m in range(1, 10)
    )
    out.append(_check("one_cycle_equals_odd_law", ok, "M <= 9"))

    types = [t for t in ([1], [2], [3], [2, 1], [2, 2], [3, 2], [4, 2], [2, 2, 2]) if sum(t) <= max_m]
    ok = all(
        oracle.exact_class_product_distribution(CycleType(t), cap=cap).probs
        == oracle.exact_commutator_distribution(from_cycle_type(CycleType(t)), cap=cap).probs
        for t in types
    )
    out.append(_check("class_product_reformulation", ok, f"types with M <= {max_m}"))

    ok = all(
        oracle.hultman_count(m, k) == oracle.hultman_count(m, k, method="enumerate", cap=cap)
        for m in range(1, max_m + 1)
        for k in range(1, m + 1)
    )
    out.append(_check("hultman_formula_vs_enumeration", ok, f"M <= {max_m}"))

    ok = genfun.two_cycles_pgf(2).poly == genfun.transpositions_pgf(2).poly
    out.append(_check("two_cycles_meets_transpositions", ok, "cycle type [2,2]"))

    ok = all(
        genfun.validate_pgf(pgf).ok
        for m in range(1, max_m + 1)
        for pgf in (
            genfun.uniform_cycles_pgf(m),
            genfun.one_cycle_pgf(m),
            genfun.two_cycles_pgf(m),
            genfun.transpositions_pgf(m),
        )
    )
    out.append(_check("pgf_invariants", ok, f"M <= {max_m}"))

    mass = genfun.transpositions_rising_form(1, base=2)(1)
    out.append(
        _check(
            "prefactor_witness_detected",
            mass == Fraction(1, 2),
            "the 2^M-prefactor closed form has total mass 1/2 at M=1 (product form is the law)",
        )
    )
    return out


def run_bernoulli_checks(max_m: int = 30) -> list[CheckResult]:
    out = []
    dec = genfun.bernoulli_decomposition(genfun.uniform_cycles_pgf(12))
    ok = [t.p for t in dec.terms] == [Fraction(1, k) for k in range(1, 13)]
    ok &= all(t.multiplier == 1 for t in dec.terms) and dec.offset == 0
    ok &= dec.reconstruct() == genfun.uniform_cycles_pgf(12).poly
    out.append(_check("uniform_parameters", ok, "1/k for k <= 12, exact reconstruction"))

    dec = genfun.bernoulli_decomposition(genfun.transpositions_pgf(12))
    ok = [t.p for t in dec.terms] == [Fraction(1, 2 * k - 1) for k in range(1, 13)]
    ok &= all(t.multiplier == 2 for t in dec.terms) and dec.offset == 0
    ok &= dec.reconstruct() == genfun.transpositions_pgf(12).poly
    out.append(_check("transpositions_parameters", ok, "1/(2k-1) for k <= 12, exact reconstruction"))

    worst_res, worst_re = 0.0, 0.0
    ok = True
    for m in range(1, max_m + 1):
        pgf = genfun.one_cycle_pgf(m)
        d = genfun.bernoulli_decomposition(pgf)
        worst_res = max(worst_res, d.residual_against(pgf))
        roots = genfun.one_cycle_pgf_roots(m)
        if roots:
            worst_re = max(worst_re, max(abs(z.real) for z in roots))
        ok &= len(roots) == m - d.offset
    ok &= worst_res < 1e-10 and worst_re < 1e-9
    out.append(
        _check(
            "one_cycle_decomposition",
            ok,
            f"M <= {max_m}: residual {worst_res:.2e} < 1e-10, max |Re root| {worst_re:.2e} < 1e-9",
        )
    )
    return out


def _z_check(name: str, report: rmt.MomentReport, z_max: float) -> CheckResult:
    detail = f"estimate {report.estimate:.6g}, target {float(report.target):.6g}, z {report.z:+.2f}"
    return _check(name, abs(report.z) <= z_max, detail)


def run_rmt_checks(samples: int = 100_000, seed: int = 42, z_max: float = 5.0, partitions: int = 1) -> list[CheckResult]:
    out = []
    for n_dim, power, factors in [(1, 1, 1), (2, 2, 1), (3, 2, 1), (2, 4, 1), (2, 2, 2), (3, 2, 2), (2, 2, 3)]:
        cfg = rmt.MatrixSampleConfig(N=n_dim, samples=samples, seed=seed, partitions=partitions)
        rep = rmt.mc_trace_power_moment(cfg, power, factors)
        out.append(_z_check(f"trace_power[N={n_dim},m={power},K={factors}]", rep, z_max))

    for n_dim, m in [(1, 1), (2, 2), (2, 3), (3, 4), (2, 5)]:
        rep = rmt.mc_gamma_shortcut_moment(n_dim, m, 1, samples=samples, seed=seed, partitions=partitions)
        out.append(_z_check(f"gamma_shortcut[N={n_dim},M={m},K=1]", rep, z_max))
        direct = rmt.mc_trace_power_moment(
            rmt.MatrixSampleConfig(N=n_dim, samples=samples, seed=seed, partitions=partitions), m, 1
        )
        combined = abs(rep.estimate - direct.estimate) / math.hypot(rep.std_error, direct.std_error)
        out.append(
            _check(
                f"shortcut_vs_direct[N={n_dim},M={m}]",
                combined <= z_max,
                f"combined z {combined:.2f}",
            )
        )

    for n_dim, m in [(1, 1), (2, 1), (2, 3), (3, 2), (4, 3)]:
        rep = rmt.mc_real_trace_law(n_dim, m, samples=samples, seed=seed, partitions=partitions)
        out.append(_z_check(f"real_trace[N={n_dim},M={m}]", rep, z_max))

    for n_dim, m in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        rep = rmt.mc_tr_g_squared_law(n_dim, m, samples=samples, seed=seed, partitions=partitions)
        out.append(_z_check(f"tr_g_squared[N={n_dim},M={m}]", rep, z_max))

    for n_dim, m1, m2 in [(2, 1, 2), (1, 1, 3), (3, 2, 4)]:
        rep = rmt.mixed_trace_vanishing(n_dim, m1, m2, samples=samples, seed=seed, partitions=partitions)
        out.append(
            _check(
                f"mixed_trace_zero[N={n_dim},M1={m1},M2={m2}]",
                rep.z <= z_max,
                f"|mean| {rep.estimate:.4g}, z {rep.z:.2f}",
            )
        )

    for n_dim, m in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        rep = rmt.mc_tr_g1g2_law(n_dim, m, samples=samples, seed=seed, partitions=partitions)
        out.append(_z_check(f"tr_g1_g2[N={n_dim},M={m}]", rep, z_max))
    return out


def run_scope(
    scope: str,
    max_m: int | None = None,
    samples: int = 100_000,
    seed: int = 42,
    partitions: int = 1,
    cap: int | None = None,
) -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {SCOPES}")
    out = []
    if scope in ("factorials", "all"):
        out.extend(run_factorial_checks(max_n=max_m or 12))
    if scope in ("genfun_vs_oracle", "all"):
        out.extend(run_genfun_oracle_checks(max_m=max_m or 6, cap=cap))
    if scope in ("bernoulli", "all"):
        out.extend(run_bernoulli_checks(max_m=max_m or 30))
    if scope in ("rmt", "all"):
        out.extend(run_rmt_checks(samples=samples, seed=seed, partitions=partitions))
    return out
