"""Command-line front end.

Subcommands: pgf, dist, bernoulli, hultman, sample, verify, mc.  Output is
JSON by default (`--format human` for aligned text; dist and hultman also
speak CSV).  Global flags are mirrored by COMMCYCLES_* environment
variables; flags win.  Exit codes: 0 pass, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction

from . import genfun, oracle, rmt, verify
from .perm import (
    CycleType,
    Permutation,
    commutator,
    disjoint_transpositions,
    from_cycle_type,
    one_cycle,
    parse_cycles,
    sample_uniform,
    two_disjoint_cycles,
)

ENV_PREFIX = "COMMCYCLES_"

_CLOSED_FORMS = {
    "one-cycle": ("one_cycle", genfun.one_cycle_pgf, one_cycle),
    "two-cycles": ("two_cycles", genfun.two_cycles_pgf, two_disjoint_cycles),
    "transpositions": ("transpositions", genfun.transpositions_pgf, disjoint_transpositions),
    "uniform": ("uniform", genfun.uniform_cycles_pgf, None),
}


class UsageError(ValueError):
    pass


def parse_tau_spec(text: str):
    """Parse a τ selector: "one-cycle:M", "two-cycles:M", "transpositions:M",
    "uniform:M", "type:[c1,c2,...]", or explicit cycle notation "(1 2 3)(4 5)"."""
    text = text.strip()
    if text.startswith("("):
        return ("explicit", parse_cycles(text))
    if ":" not in text:
        raise UsageError(f"cannot parse tau selector {text!r}")
    head, _, tail = text.partition(":")
    head = head.strip().lower()
    if head in _CLOSED_FORMS:
        try:
            m = int(tail)
        except ValueError:
            raise UsageError(f"expected an integer after {head!r}, got {tail!r}") from None
        if m < 1:
            raise UsageError("the size parameter must be positive")
        return (head, m)
    if head == "type":
        try:
            parts = json.loads(tail)
        except json.JSONDecodeError:
            raise UsageError(f"expected type:[c1,c2,...], got {text!r}") from None
        if not isinstance(parts, list) or not all(isinstance(p, int) for p in parts):
            raise UsageError(f"expected a list of integers in {text!r}")
        return ("type", CycleType(parts))
    raise UsageError(f"unknown tau selector {head!r}")


def _tau_permutation(kind, value) -> Permutation:
    if kind == "explicit":
        return value
    if kind == "type":
        return from_cycle_type(value)
    if kind == "uniform":
        raise UsageError("'uniform' selects a law, not a permutation")
    return _CLOSED_FORMS[kind][2](value)


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _emit(payload: dict, fmt: str, human_lines) -> None:
    if fmt == "human":
        for line in human_lines(payload):
            print(line)
    else:
        print(json.dumps(payload))


# -- subcommands -------------------------------------------------------------


def _cmd_pgf(args) -> int:
    args.format = args.format or "json"
    kind, value = parse_tau_spec(args.tau)
    if kind in _CLOSED_FORMS:
        source, builder, _ = _CLOSED_FORMS[kind]
        pgf = builder(value)
        provenance = f"closed-form: {kind}"
    else:
        tau = _tau_permutation(kind, value)
        try:
            dist = oracle.exact_commutator_distribution(tau, cap=args.cap)
        except oracle.EnumerationCapError as exc:
            raise UsageError(f"{exc}; try `commcycles mc` or `commcycles sample`") from exc
        pgf = oracle.distribution_to_pgf(dist)
        provenance = "oracle enumeration"
    validation = genfun.validate_pgf(pgf)
    payload = {
        "tau": args.tau,
        "provenance": provenance,
        "pgf": pgf.to_json(),
        "pretty": pgf.poly.pretty(),
        "validation": validation.to_json(),
    }

    def human(p):
        yield f"tau: {p['tau']}   ({p['provenance']})"
        yield f"ground set size: {pgf.M}"
        yield f"PGF: {p['pretty']}"
        for k, prob in sorted(pgf.probabilities().items()):
            yield f"  P(C = {k}) = {_fraction_str(prob)}"
        yield f"invariants ok: {validation.ok}"

    _emit(payload, args.format, human)
    return 0


def _cmd_dist(args) -> int:
    args.format = args.format or "json"
    kind, value = parse_tau_spec(args.tau)
    tau = _tau_permutation(kind, value)
    try:
        dist = oracle.exact_commutator_distribution(tau, cap=args.cap)
    except oracle.EnumerationCapError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        oracle.write_distribution_csv(dist, sys.stdout)
        return 0
    payload = {
        "tau": args.tau,
        "M": dist.M,
        "probs": {str(k): _fraction_str(p) for k, p in sorted(dist.probs.items())},
    }

    def human(p):
        yield f"tau: {p['tau']}   M = {dist.M}"
        for k, prob in sorted(dist.probs.items()):
            yield f"  P(C = {k}) = {_fraction_str(prob)} = {float(prob):.6f}"

    _emit(payload, args.format, human)
    return 0


def _cmd_bernoulli(args) -> int:
    args.format = args.format or "json"
    kind, value = parse_tau_spec(args.tau)
    if kind not in ("uniform", "transpositions", "one-cycle"):
        raise UsageError(
            "Bernoulli decompositions exist for uniform:M, transpositions:M and one-cycle:M"
        )
    pgf = _CLOSED_FORMS[kind][1](value)
    dec = genfun.bernoulli_decomposition(pgf)
    payload = {
        "tau": args.tau,
        "provenance": "exact" if dec.is_exact else "root-found",
        "decomposition": dec.to_json(),
        "reconstruction_residual": dec.residual_against(pgf),
    }

    def human(p):
        yield f"tau: {p['tau']}   ({p['provenance']} parameters)"
        yield f"offset: {dec.offset}"
        for t in dec.terms:
            pval = _fraction_str(t.p) if isinstance(t.p, Fraction) else f"{t.p:.12g}"
            yield f"  + {t.multiplier} * Bernoulli({pval})"
        yield f"reconstruction residual: {p['reconstruction_residual']:.3g}"

    _emit(payload, args.format, human)
    return 0


def _cmd_hultman(args) -> int:
    args.format = args.format or "csv"  # the table is CSV-typed
    max_m = args.max_m if args.max_m is not None else 8
    if max_m > 12:
        raise UsageError("the formula path is tabulated up to M = 12")
    rows = oracle.hultman_table_rows(max_m, oracle_cap=args.cap)
    if args.format == "json":
        payload = {
            "rows": [
                {"M": m, "k": k, "count": c, "oracle_count": oc} for m, k, c, oc in rows
            ]
        }
        print(json.dumps(payload))
    elif args.format == "human":
        print(f"{'M':>3} {'k':>3} {'count':>12} {'oracle':>12}")
        for m, k, c, oc in rows:
            print(f"{m:>3} {k:>3} {c:>12} {('' if oc is None else oc):>12}")
    else:
        oracle.write_hultman_csv(rows, sys.stdout)
    return 0


def _pool_bins(probs: dict[int, Fraction], draws: int, min_expected: float = 5.0):
    """Pool adjacent support bins until each pooled bin expects at least
    min_expected draws; returns [(ks, expected)]."""
    pooled = []
    current_ks: list[int] = []
    current_expected = 0.0
    for k, p in sorted(probs.items()):
        current_ks.append(k)
        current_expected += float(p) * draws
        if current_expected >= min_expected:
            pooled.append((tuple(current_ks), current_expected))
            current_ks, current_expected = [], 0.0
    if current_ks:
        if pooled:
            ks, exp = pooled.pop()
            pooled.append((ks + tuple(current_ks), exp + current_expected))
        else:
            pooled.append((tuple(current_ks), current_expected))
    return pooled


def _chi_square(probs: dict[int, Fraction], histogram: dict[int, int], draws: int):
    from scipy.stats import chi2

    if any(k not in probs for k in histogram):
        return {"statistic": float("inf"), "df": 0, "p_value": 0.0}
    pooled = _pool_bins(probs, draws)
    if len(pooled) < 2:
        ok = sum(histogram.values()) == draws
        return {"statistic": 0.0 if ok else float("inf"), "df": 0, "p_value": 1.0 if ok else 0.0}
    stat = 0.0
    for ks, expected in pooled:
        observed = sum(histogram.get(k, 0) for k in ks)
        stat += (observed - expected) ** 2 / expected
    df = len(pooled) - 1
    return {"statistic": stat, "df": df, "p_value": float(chi2.sf(stat, df))}


def _reference_pgf(kind, value, cap):
    if kind in _CLOSED_FORMS and kind != "uniform":
        return _CLOSED_FORMS[kind][1](value), f"closed-form: {kind}"
    tau = _tau_permutation(kind, value)
    try:
        dist = oracle.exact_commutator_distribution(tau, cap=cap)
    except oracle.EnumerationCapError:
        return None, None
    return oracle.distribution_to_pgf(dist), "oracle enumeration"


def _cmd_sample(args) -> int:
    args.format = args.format or "json"
    kind, value = parse_tau_spec(args.tau)
    if kind == "uniform":
        raise UsageError("sampling needs a permutation selector, not uniform:M")
    tau = _tau_permutation(kind, value)
    rng = random.Random(args.seed)
    histogram: dict[int, int] = {}
    for _ in range(args.draws):
        sigma = sample_uniform(tau.size, rng)
        c = commutator(sigma, tau).cycle_count()
        histogram[c] = histogram.get(c, 0) + 1
    reference, provenance = _reference_pgf(kind, value, args.cap)
    payload = {
        "tau": args.tau,
        "M": tau.size,
        "draws": args.draws,
        "seed": args.seed,
        "histogram": {str(k): v for k, v in sorted(histogram.items())},
    }
    if reference is None:
        payload["reference"] = None
        payload["note"] = "no exact reference above the enumeration cap"
    else:
        payload["reference"] = {
            "provenance": provenance,
            "probs": {str(k): _fraction_str(p) for k, p in sorted(reference.probabilities().items())},
        }
        payload["chi_square"] = _chi_square(reference.probabilities(), histogram, args.draws)

    def human(p):
        yield f"tau: {p['tau']}   M = {p['M']}   draws = {p['draws']}  seed = {p['seed']}"
        for k, v in sorted(histogram.items()):
            line = f"  C = {k}: {v}  ({v / args.draws:.4f})"
            if reference is not None:
                line += f"  expected {float(reference.coefficient(k)):.4f}"
            yield line
        if reference is None:
            yield "no exact reference above the enumeration cap"
        else:
            cs = p["chi_square"]
            yield f"chi-square: {cs['statistic']:.3f} on {cs['df']} df, p = {cs['p_value']:.4f}"

    _emit(payload, args.format, human)
    return 0


def _cmd_verify(args) -> int:
    args.format = args.format or "json"
    checks = verify.run_scope(
        args.scope,
        max_m=args.max_m,
        samples=args.samples,
        seed=args.seed,
        partitions=args.threads,
        cap=args.cap,
    )
    failed = [c for c in checks if not c.ok]
    payload = {
        "scope": args.scope,
        "checks": [c.to_json() for c in checks],
        "passed": len(checks) - len(failed),
        "failed": len(failed),
        "ok": not failed,
    }

    def human(p):
        for c in checks:
            yield f"[{'PASS' if c.ok else 'FAIL'}] {c.name}  {c.detail}"
        yield f"{p['passed']} passed, {p['failed']} failed"

    _emit(payload, args.format, human)
    return 0 if not failed else 1


def _cmd_mc(args) -> int:
    args.format = args.format or "json"
    n, m, k = args.n, args.m, args.k
    if args.identity == "trace-power":
        cfg = rmt.MatrixSampleConfig(N=n, samples=args.samples, seed=args.seed, partitions=args.threads)
        report = rmt.mc_trace_power_moment(cfg, m, k)
    elif args.identity == "gamma":
        report = rmt.mc_gamma_shortcut_moment(n, m, k, samples=args.samples, seed=args.seed, partitions=args.threads)
    elif args.identity == "real-trace":
        report = rmt.mc_real_trace_law(n, m, samples=args.samples, seed=args.seed, partitions=args.threads)
    elif args.identity == "tr-g2":
        report = rmt.mc_tr_g_squared_law(n, m, samples=args.samples, seed=args.seed, partitions=args.threads)
    elif args.identity == "tr-g1g2":
        report = rmt.mc_tr_g1g2_law(n, m, samples=args.samples, seed=args.seed, partitions=args.threads)
    elif args.identity == "mixed":
        if args.m1 is None or args.m2 is None:
            raise UsageError("mixed requires --m1 and --m2")
        report = rmt.mixed_trace_vanishing(n, args.m1, args.m2, samples=args.samples, seed=args.seed, partitions=args.threads)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown identity {args.identity!r}")
    payload = report.to_json()

    def human(p):
        yield f"identity: {p['identity']}  params: " + ", ".join(
            f"{key}={p[key]}" for key in ("N", "M", "M2", "K") if key in p
        )
        yield f"estimate: {report.estimate:.8g}  std error: {report.std_error:.4g}"
        if report.target is not None:
            yield f"target: {_fraction_str(report.target)} = {float(report.target):.8g}  z: {report.z:+.3f}"
        else:
            yield "target: none available (estimate only)"
        yield f"samples: {report.samples}  seed: {report.seed}  partitions: {report.partitions}"

    _emit(payload, args.format, human)
    if report.z is not None and math.isfinite(report.z) and abs(report.z) > 5.0:
        return 1
    return 0


# -- wiring -------------------------------------------------------------------


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX + name}: {raw!r}") from None


def _add_global_options(parser: argparse.ArgumentParser, top: bool) -> None:
    # On the top-level parser the options carry the real (env-aware)
    # defaults; on subparsers they default to SUPPRESS so that a flag given
    # after the subcommand overrides one given before it, instead of the
    # subparser default clobbering the parsed global value.
    def default(name, cast, fallback):
        return _env_default(name, cast, fallback) if top else argparse.SUPPRESS

    parser.add_argument("--seed", type=int, default=default("SEED", int, 42))
    parser.add_argument("--samples", type=int, default=default("SAMPLES", int, 100_000))
    parser.add_argument("--max-m", type=int, default=default("MAX_M", int, None), dest="max_m")
    parser.add_argument("--cap", type=int, default=default("CAP", int, None))
    parser.add_argument("--threads", type=int, default=default("THREADS", int, 1))
    parser.add_argument(
        "--format",
        choices=("json", "human", "csv"),
        default=default("FORMAT", str, None),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commcycles",
        description="Cycle statistics of commutators of random permutations.",
    )
    _add_global_options(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pgf", help="closed-form or oracle PGF for a tau selector")
    p.add_argument("tau")
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_pgf)

    p = sub.add_parser("dist", help="exact enumerated distribution for a tau selector")
    p.add_argument("tau")
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("bernoulli", help="Bernoulli decomposition of a solved family")
    p.add_argument("tau")
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_bernoulli)

    p = sub.add_parser("hultman", help="table of one-cycle commutator counts")
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_hultman)

    p = sub.add_parser("sample", help="Monte-Carlo histogram of the commutator cycle count")
    p.add_argument("tau")
    p.add_argument("--draws", type=int, default=10_000)
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="run consistency suites")
    p.add_argument("--scope", choices=verify.SCOPES, default="all")
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("mc", help="one Monte-Carlo identity check")
    p.add_argument("identity", choices=("trace-power", "gamma", "real-trace", "tr-g2", "tr-g1g2", "mixed"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m1", type=int, default=None)
    p.add_argument("--m2", type=int, default=None)
    _add_global_options(p, top=False)
    p.set_defaults(func=_cmd_mc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, oracle.EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
