"""Monte-Carlo verification of the trace identities linking Gaussian random
matrices to cycle counts of permutation commutators.

Every identity is checked by simulating the matrix side and comparing
against an exact rational target (computed from the closed forms, the
enumeration oracle, or gamma-moment formulas — never floating-point gamma).
Estimates carry a standard error and a z-score.

Draws are split across `partitions` independent substreams spawned from
numpy SeedSequence; a fixed (seed, partitions) pair reproduces estimates
bit for bit, and each identity derives its own substream from its name so
that different identities do not share variates.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import oracle
from .genfun import one_cycle_pgf, transpositions_pgf, two_cycles_pgf
from .perm import CycleType, from_cycle_type
from .polys import rising_product

__all__ = [
    "MatrixSampleConfig",
    "MomentReport",
    "mc_trace_power_moment",
    "mc_gamma_shortcut_moment",
    "mc_real_trace_law",
    "mc_tr_g_squared_law",
    "mc_tr_g1g2_law",
    "mixed_trace_vanishing",
    "trace_power_target",
    "gamma_shortcut_target",
    "real_trace_target",
    "tr_g_squared_target",
    "tr_g1g2_target",
    "tr_g_squared_samples",
]

_BATCH = 1 << 15

ENSEMBLES = ("complex_gaussian", "real_gaussian", "pair_complex_gaussian")


@dataclass(frozen=True)
class MatrixSampleConfig:
    """Sampling plan for one matrix ensemble.

    Entries are unscaled: complex entries are (x+iy)/sqrt(2) with x, y
    standard real normals, so every entry has total variance 1.
    """

    N: int
    samples: int
    seed: int
    ensemble: str = "complex_gaussian"
    partitions: int = 1

    def __post_init__(self):
        if self.N < 1 or self.samples < 1 or self.partitions < 1:
            raise ValueError("N, samples and partitions must be positive")
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}")


@dataclass(frozen=True)
class MomentReport:
    """A Monte-Carlo estimate next to its exact target."""

    identity: str
    params: dict
    estimate: float
    std_error: float
    target: Optional[Fraction]
    z: Optional[float]
    samples: int
    seed: int
    partitions: int
    extra: dict = field(default_factory=dict)

    @property
    def flagged(self) -> bool:
        """True when no exact target was available (estimate only)."""
        return self.target is None

    def to_json(self) -> dict:
        out = {"identity": self.identity}
        out.update(self.params)
        out["estimate"] = self.estimate
        out["std_error"] = self.std_error
        if self.target is None:
            out["target"] = None
        else:
            out["target"] = f"{self.target.numerator}/{self.target.denominator}"
            out["target_float"] = float(self.target)
        out["z"] = self.z
        out["samples"] = self.samples
        out["seed"] = self.seed
        out["partitions"] = self.partitions
        out.update(self.extra)
        return out


def _streams(seed: int, partitions: int, identity: str) -> list[np.random.Generator]:
    root = np.random.SeedSequence(entropy=(seed % 2**63, zlib.crc32(identity.encode())))
    return [np.random.default_rng(child) for child in root.spawn(partitions)]


def _partition_sizes(total: int, partitions: int) -> list[int]:
    base, rem = divmod(total, partitions)
    return [base + (1 if i < rem else 0) for i in range(partitions)]


def _batches(total: int) -> list[int]:
    return [_BATCH] * (total // _BATCH) + ([total % _BATCH] if total % _BATCH else [])


def _complex_gaussian(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    block = rng.standard_normal((2, count, n, n))
    return (block[0] + 1j * block[1]) * np.sqrt(0.5)


def _collect(identity, seed, partitions, total, produce) -> np.ndarray:
    """Run `produce(rng, count)` over each partition substream and
    concatenate (deterministic for fixed seed/partitions)."""
    chunks = []
    for rng, size in zip(_streams(seed, partitions, identity), _partition_sizes(total, partitions)):
        if size:
            chunks.append(produce(rng, size))
    return np.concatenate(chunks)


def _report(identity, params, values, target, seed, partitions, extra=None) -> MomentReport:
    n = values.size
    estimate = float(values.mean())
    std_error = float(values.std(ddof=1)) / math.sqrt(n) if n > 1 else float("nan")
    if target is None:
        z = None
    elif std_error > 0:
        z = (estimate - float(target)) / std_error
    else:
        z = 0.0 if estimate == float(target) else float("inf")
    return MomentReport(
        identity, params, estimate, std_error, target, z, n, seed, partitions, extra or {}
    )


# -- exact targets ---------------------------------------------------------------


def trace_power_target(n_dim: int, power: int, factors: int, cap: Optional[int] = None) -> Optional[Fraction]:
    """Exact value of E prod_{k<=factors} |tr G^power|^2 for an N=n_dim
    complex Gaussian matrix: M! * E_sigma N^C([σ,τ]) with τ a product of
    `factors` disjoint `power`-cycles and M = power*factors.

    Uses a closed form when τ is in a solved family, otherwise the
    enumeration oracle; None when neither applies.
    """
    total = power * factors
    if factors == 1:
        poly = one_cycle_pgf(power).poly
    elif factors == 2:
        poly = two_cycles_pgf(power).poly
    elif power == 1:
        return Fraction(math.factorial(total) * n_dim**total)
    elif power == 2:
        poly = transpositions_pgf(factors).poly
    else:
        cap_value = oracle.DEFAULT_ENUMERATION_CAP if cap is None else cap
        if total > cap_value:
            return None
        tau = from_cycle_type(CycleType([power] * factors))
        poly = oracle.distribution_to_pgf(oracle.exact_commutator_distribution(tau, cap=cap)).poly
    return math.factorial(total) * poly(n_dim)


def gamma_shortcut_target(n_dim: int, m: int, factors: int) -> Optional[Fraction]:
    """Exact moments of |sum_i λ_i^m|^(2*factors) under the decorrelated
    eigenvalue-power representation (valid for m >= n_dim):

    factors=1: Σ_i Γ(m+i)/Γ(i); factors=2: the four-term expansion
    Σ_i Γ(2m+i)/Γ(i) + 2(Σ_i Γ(m+i)/Γ(i))^2 - 2 Σ_i (Γ(m+i)/Γ(i))^2.
    Gamma ratios are exact integer rising products.
    """
    singles = [rising_product(i, m) for i in range(1, n_dim + 1)]
    if factors == 1:
        return Fraction(sum(singles))
    if factors == 2:
        doubles = sum(rising_product(i, 2 * m) for i in range(1, n_dim + 1))
        return Fraction(doubles + 2 * sum(singles) ** 2 - 2 * sum(s**2 for s in singles))
    return None


def real_trace_target(n_dim: int, m: int) -> Fraction:
    """E (tr R Rᵀ)^M = 2^M * (N²/2)(N²/2+1)...(N²/2+M-1) exactly."""
    return 2**m * rising_product(Fraction(n_dim * n_dim, 2), m)


def tr_g_squared_target(n_dim: int, m: int) -> Fraction:
    """E |tr G²|^(2M) = 4^M * M! * (N²/2)(N²/2+1)...(N²/2+M-1) exactly."""
    return 4**m * math.factorial(m) * rising_product(Fraction(n_dim * n_dim, 2), m)


def tr_g1g2_target(n_dim: int, m: int) -> Fraction:
    """E |tr G₁G₂|^(2M) = M! * N²(N²+1)...(N²+M-1) exactly."""
    return Fraction(math.factorial(m) * rising_product(n_dim * n_dim, m))


# -- Monte-Carlo estimators --------------------------------------------------------


def mc_trace_power_moment(cfg: MatrixSampleConfig, power: int, factors: int = 1) -> MomentReport:
    """Estimate E |tr G^power|^(2*factors) by direct simulation of the
    complex Gaussian ensemble and compare with the exact permutation-side
    target (flagged if none is available)."""
    if cfg.ensemble != "complex_gaussian":
        raise ValueError("trace-power moments are defined for the complex Gaussian ensemble")
    if power < 1 or factors < 1:
        raise ValueError("power and factors must be positive")

    def produce(rng, count):
        out = np.empty(count)
        pos = 0
        for b in _batches(count):
            g = _complex_gaussian(rng, b, cfg.N)
            a = g if power == 1 else np.linalg.matrix_power(g, power)
            tr = np.einsum("kii->k", a)
            out[pos : pos + b] = np.abs(tr) ** (2 * factors)
            pos += b
        return out

    values = _collect("trace_power", cfg.seed, cfg.partitions, cfg.samples, produce)
    target = trace_power_target(cfg.N, power, factors)
    params = {"N": cfg.N, "M": power, "K": factors}
    return _report("trace_power", params, values, target, cfg.seed, cfg.partitions)


def mc_gamma_shortcut_moment(
    n_dim: int, m: int, factors: int = 1, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> MomentReport:
    """Estimate the same moment as mc_trace_power_moment without any matrix:
    for m >= N the eigenvalue powers decorrelate, |λ_i|^(2m) =d γ_i^m with
    independent Gamma(i) variables and independent uniform phases, so we
    sample λ_i^m = γ_i^(m/2) e^{iθ_i} directly."""
    if m < n_dim:
        raise ValueError(f"decorrelation requires m >= N (got m={m}, N={n_dim})")
    shapes = np.arange(1, n_dim + 1, dtype=float)

    def produce(rng, count):
        out = np.empty(count)
        pos = 0
        for b in _batches(count):
            radii = rng.gamma(shape=shapes, size=(b, n_dim)) ** (m / 2.0)
            phases = rng.uniform(0.0, 2.0 * np.pi, size=(b, n_dim))
            total = (radii * np.exp(1j * phases)).sum(axis=1)
            out[pos : pos + b] = np.abs(total) ** (2 * factors)
            pos += b
        return out

    values = _collect("gamma_shortcut", seed, partitions, samples, produce)
    target = gamma_shortcut_target(n_dim, m, factors)
    params = {"N": n_dim, "M": m, "K": factors}
    return _report("gamma_shortcut", params, values, target, seed, partitions)


def mc_real_trace_law(
    n_dim: int, m: int, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> MomentReport:
    """Estimate E (tr R Rᵀ)^M for the real Gaussian ensemble; tr R Rᵀ is the
    sum of the N² squared entries, distributed as 2·Gamma(N²/2)."""

    def produce(rng, count):
        out = np.empty(count)
        pos = 0
        for b in _batches(count):
            entries = rng.standard_normal((b, n_dim * n_dim))
            out[pos : pos + b] = (entries**2).sum(axis=1) ** m
            pos += b
        return out

    values = _collect("real_trace", seed, partitions, samples, produce)
    params = {"N": n_dim, "M": m, "K": 1}
    return _report("real_trace", params, values, real_trace_target(n_dim, m), seed, partitions)


def tr_g_squared_samples(
    n_dim: int, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> np.ndarray:
    """Raw complex samples of tr(G²), for distribution-level checks such as
    the rotational symmetry of its phase."""

    def produce(rng, count):
        out = np.empty(count, dtype=complex)
        pos = 0
        for b in _batches(count):
            g = _complex_gaussian(rng, b, n_dim)
            out[pos : pos + b] = np.einsum("kij,kji->k", g, g)
            pos += b
        return out

    return _collect("tr_g_squared", seed, partitions, samples, produce)


def mc_tr_g_squared_law(
    n_dim: int, m: int, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> MomentReport:
    """Estimate E |tr G²|^(2M) and compare with the exact moments of
    4·γ₁·γ_{N²/2}, i.e. 4^M M! (N²/2)...(N²/2+M-1)."""
    values = np.abs(tr_g_squared_samples(n_dim, samples, seed, partitions)) ** (2 * m)
    params = {"N": n_dim, "M": m, "K": 1}
    return _report("tr_g_squared", params, values, tr_g_squared_target(n_dim, m), seed, partitions)


def mc_tr_g1g2_law(
    n_dim: int, m: int, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> MomentReport:
    """Estimate E |tr G₁G₂|^(2M) for independent complex Gaussian matrices
    and compare with the exact moments of γ₁·γ_{N²}, i.e. M! N²...(N²+M-1)."""

    def produce(rng, count):
        out = np.empty(count)
        pos = 0
        for b in _batches(count):
            g1 = _complex_gaussian(rng, b, n_dim)
            g2 = _complex_gaussian(rng, b, n_dim)
            tr = np.einsum("kij,kji->k", g1, g2)
            out[pos : pos + b] = np.abs(tr) ** (2 * m)
            pos += b
        return out

    values = _collect("tr_g1_g2", seed, partitions, samples, produce)
    params = {"N": n_dim, "M": m, "K": 1}
    return _report("tr_g1_g2", params, values, tr_g1g2_target(n_dim, m), seed, partitions)


def mixed_trace_vanishing(
    n_dim: int, m1: int, m2: int, samples: int = 100_000, seed: int = 42, partitions: int = 1
) -> MomentReport:
    """Estimate the mixed moment E tr(G^{M1}) conj(tr(G^{M2})), which is
    exactly 0 for M1 != M2.  The report's estimate is the modulus of the
    complex sample mean, with the combined real+imaginary standard error."""
    if m1 == m2:
        raise ValueError("mixed moment vanishes only for M1 != M2")

    def produce(rng, count):
        out = np.empty(count, dtype=complex)
        pos = 0
        for b in _batches(count):
            g = _complex_gaussian(rng, b, n_dim)
            t1 = np.einsum("kii->k", g if m1 == 1 else np.linalg.matrix_power(g, m1))
            t2 = np.einsum("kii->k", g if m2 == 1 else np.linalg.matrix_power(g, m2))
            out[pos : pos + b] = t1 * np.conj(t2)
            pos += b
        return out

    values = _collect("mixed_trace", seed, partitions, samples, produce)
    n = values.size
    mean = complex(values.mean())
    se = math.sqrt((values.real.var(ddof=1) + values.imag.var(ddof=1)) / n)
    z = abs(mean) / se if se > 0 else float("inf")
    params = {"N": n_dim, "M": m1, "M2": m2, "K": 1}
    extra = {"estimate_re": mean.real, "estimate_im": mean.imag}
    return MomentReport(
        "mixed_trace", params, abs(mean), se, Fraction(0), z, n, seed, partitions, extra
    )
