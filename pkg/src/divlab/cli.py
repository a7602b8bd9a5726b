"""Command-line front end: plain-text config, five subcommands, CSV
emission and the verification suites.

Exit codes: 0 success, 1 config error, 2 mathematical degeneracy,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .algebra import (
    AlgebraError,
    CurveCover,
    DegenerateCoverError,
    IntPoly,
    PolyParseError,
    critical_polynomial,
    format_poly,
    parse_cover,
    poly_discriminant,
)
from .diversity import CensusConfig, run_census
from .sieve import (
    ChebotarevSieve,
    DiversityParams,
    build_PF,
    check_density_floor,
    enumerate_MF,
)
from .witnesses import (
    LemmaViolation,
    classify_greedy,
    find_cliques,
    lemma_shift_suite,
    recheck_witness,
    rho_brute_force_suite,
    verify_property_C,
    verify_property_D,
    verify_property_E,
    witnesses_for_MF,
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    cover: Optional[str] = None
    N: Optional[int] = None
    x: Optional[float] = None
    mode: str = "paper"
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    k: Optional[int] = None
    y: Optional[float] = None
    window_lo: Optional[float] = None
    window_hi: Optional[float] = None
    tail: Optional[Fraction] = Fraction(9, 10)
    d: Optional[int] = None
    limit: Optional[int] = None
    budget: int = 1_000_000
    workers: int = 1
    seed: int = 0
    out: str = "."

    def validate(self) -> None:
        if self.mode not in ("paper", "override"):
            raise ConfigError(f"mode must be paper or override, got {self.mode!r}")
        if self.mode == "paper":
            for key in ("k", "y", "window_lo", "window_hi"):
                if getattr(self, key) is not None:
                    raise ConfigError(f"{key} is an override key; set mode = override")
        for key in ("N", "x", "epsilon", "delta", "k", "y", "limit", "budget", "workers", "d"):
            v = getattr(self, key)
            if v is not None and v <= 0:
                raise ConfigError(f"{key} must be positive, got {v}")
        if self.x is not None and self.limit is not None and self.limit < self.x:
            raise ConfigError(f"sieve limit {self.limit} is below x = {self.x}")


def _parse_tail(text: str) -> Optional[Fraction]:
    if text.lower() in ("off", "none", "0"):
        return None
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad tail exponent {text!r}")
    if not (0 < f < 1):
        raise ConfigError(f"tail exponent must lie in (0, 1), got {f}")
    return f


_INT_KEYS = ("N", "k", "d", "limit", "budget", "workers", "seed")
_FLOAT_KEYS = ("x", "epsilon", "delta", "y", "window_lo", "window_hi")


def load_config(path: str) -> RunConfig:
    """Plain `key = value` lines; '#' starts a comment."""
    cfg = RunConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not hasattr(cfg, key):
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                setattr(cfg, key, int(value))
            elif key in _FLOAT_KEYS:
                setattr(cfg, key, float(value))
            elif key == "tail":
                cfg.tail = _parse_tail(value)
            else:
                setattr(cfg, key, value)
        except ValueError as e:
            raise ConfigError(f"{path}:{lineno}: {e}")
    return cfg


def merge_flags(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Command-line flags win over config-file values."""
    updates = {}
    for key in (
        "cover", "N", "x", "mode", "epsilon", "delta", "k", "y",
        "window_lo", "window_hi", "d", "limit", "budget", "workers",
        "seed", "out",
    ):
        v = getattr(args, key, None)
        if v is not None:
            updates[key] = v
    if getattr(args, "tail", None) is not None:
        updates["tail"] = _parse_tail(args.tail)
    if "workers" not in updates and cfg.workers == 1 and os.environ.get("DIVLAB_WORKERS"):
        try:
            updates["workers"] = int(os.environ["DIVLAB_WORKERS"])
        except ValueError:
            raise ConfigError("DIVLAB_WORKERS is not an integer")
    return replace(cfg, **updates)


# ---------------------------------------------------------------------------
# shared plumbing

def _require(cfg: RunConfig, *keys: str) -> None:
    for key in keys:
        if getattr(cfg, key) is None:
            raise ConfigError(f"missing required parameter: {key}")


def _load_cover(cfg: RunConfig) -> CurveCover:
    _require(cfg, "cover")
    try:
        return parse_cover(cfg.cover)
    except PolyParseError as e:
        raise ConfigError(f"cannot parse cover: {e}")


def _build_sieve(F: IntPoly, cfg: RunConfig) -> ChebotarevSieve:
    limit = cfg.limit
    if limit is None:
        limit = max(1000, math.ceil(cfg.x)) if cfg.x else 10_000
    if cfg.x is not None and limit < cfg.x:
        raise ConfigError(f"sieve limit {limit} is below x = {cfg.x}")
    return build_PF(F, limit)


def _params(cfg: RunConfig, F: IntPoly, sieve: ChebotarevSieve) -> DiversityParams:
    _require(cfg, "x")
    d = cfg.d if cfg.d is not None else F.degree
    delta = cfg.delta if cfg.delta is not None else float(sieve.delta_hat)
    if cfg.mode == "paper":
        return DiversityParams.paper(
            x=cfg.x, delta=delta, d=d, epsilon=cfg.epsilon,
            tail_exponent=cfg.tail if cfg.tail is not None else Fraction(9, 10),
        )
    _require(cfg, "k", "y", "window_lo", "window_hi")
    return DiversityParams.override(
        x=cfg.x, d=d, k=cfg.k, y=cfg.y,
        window_lo=cfg.window_lo, window_hi=cfg.window_hi,
        tail_exponent=cfg.tail,
        delta=delta,
        epsilon=cfg.epsilon if cfg.epsilon is not None else 0.5,
    )


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _fact_str(primes) -> str:
    return "*".join(str(p) for p in primes)


# ---------------------------------------------------------------------------
# subcommands

def cmd_analyze(cfg: RunConfig) -> int:
    cover = _load_cover(cfg)
    F = critical_polynomial(cover)
    sieve = _build_sieve(F, cfg)
    d = cfg.d if cfg.d is not None else F.degree
    floor = check_density_floor(sieve, d)
    print(f"F = {format_poly(F, 'T')}")
    print(f"d = {F.degree}")
    print(f"disc(F) = {poly_discriminant(F)}")
    print(f"|P_F| = {len(sieve.primes_in_PF)} of {sieve.total_primes} primes up to {sieve.limit}")
    print(f"delta_hat = {float(sieve.delta_hat):.6f} ({sieve.delta_hat})")
    print(
        f"density floor 1/d = {floor.floor:.6f} (slack {floor.slack}): "
        f"{'pass' if floor.passed else 'FAIL'} (margin {floor.margin:+.6f})"
    )
    return 0


def cmd_sieve(cfg: RunConfig) -> int:
    cover = _load_cover(cfg)
    F = critical_polynomial(cover)
    sieve = _build_sieve(F, cfg)
    params = _params(cfg, F, sieve)
    mf = enumerate_MF(sieve, params)
    rows = [[e.m, _fact_str(e.primes), e.P, e.m1] for e in mf]
    path = os.path.join(cfg.out, "mf.csv")
    _write_csv(path, ["m", "factorization", "P", "m1"], rows)
    print(f"mode = {params.mode}")
    print(f"k+1 = {params.k + 1}, y = {params.y:.6g}, "
          f"window = [{params.window_lo:.6g}, {params.window_hi:.6g}], "
          f"tail = {params.tail_exponent}")
    print(f"|M_F(x)| = {len(mf)} -> {path}")
    return 0


def cmd_witness(cfg: RunConfig) -> int:
    cover = _load_cover(cfg)
    F = critical_polynomial(cover)
    sieve = _build_sieve(F, cfg)
    params = _params(cfg, F, sieve)
    mf = enumerate_MF(sieve, params)
    wits = witnesses_for_MF(F, mf, params)
    stats = classify_greedy(wits, params.d)
    rows = [
        [w.m, _fact_str(w.primes), w.n_m, w.shift_l, "greedy" if w.greedy else "generous"]
        for w in wits
    ]
    path = os.path.join(cfg.out, "witnesses.csv")
    _write_csv(path, ["m", "factorization", "n_m", "shift_l", "greedy"], rows)
    cliques = find_cliques(mf)
    cpath = os.path.join(cfg.out, "cliques.csv")
    _write_csv(
        cpath,
        ["P", "m1", "m2", "m3", "type"],
        [[c.P, c.m1, c.m2, c.m3, c.kind] for c in cliques],
    )
    print(f"mode = {params.mode}")
    print(f"|M_F(x)| = {len(mf)} -> {path}")
    print(f"greedy = {stats.greedy}, generous = {stats.generous}")
    if stats.total:
        print(
            f"distinct witnesses = {stats.distinct_witnesses} vs "
            f"|M_F|/(12d) = {stats.total / (12 * params.d):.3f} "
            f"(ratio {stats.witness_ratio:.3f})"
        )
    print(f"cliques = {len(cliques)} -> {cpath}")
    return 0


def cmd_diversity(cfg: RunConfig) -> int:
    cover = _load_cover(cfg)
    _require(cfg, "N")
    if cfg.N < 10:
        raise ConfigError("diversity census needs N >= 10")
    census = run_census(
        cover,
        cfg.N,
        CensusConfig(
            effort=cfg.budget,
            eta=None,
            delta=cfg.delta,
            workers=cfg.workers,
            mode=cfg.mode,
        ),
    )
    rows = [
        [
            r.n,
            r.fiber_degree,
            "" if r.irreducible is None else str(r.irreducible).lower(),
            r.fingerprint.render() if r.fingerprint is not None else "",
            str(r.new_field).lower(),
        ]
        for r in census.per_n
    ]
    path = os.path.join(cfg.out, "census.csv")
    _write_csv(path, ["n", "fiber_degree", "irreducible", "fingerprint", "new_field"], rows)
    print(f"N = {census.N}")
    print(f"distinct_lower_bound = {census.distinct_lower_bound}")
    print(f"reducible_count = {census.reducible_count}")
    print(f"eta = {census.eta:.6g}")
    print(f"N_over_logN = {census.n_over_log_n:.3f}")
    print(f"bound_value = {census.bound_value:.3f}")
    print(f"mode = {census.mode}")
    print(f"per-n rows -> {path}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    cover = _load_cover(cfg)
    F = critical_polynomial(cover)
    hard_failures = 0

    shift = lemma_shift_suite(trials=1000, seed=cfg.seed)
    ok = shift.lemma_violations == 0
    hard_failures += not ok
    print(
        f"exact-divisor shift suite: {shift.instances} instances, "
        f"{shift.skipped} skipped, {shift.lemma_violations} violations, "
        f"max shift {shift.max_shift}: {'pass' if ok else 'FAIL'}"
    )

    rho = rho_brute_force_suite(trials=200, seed=cfg.seed)
    ok = not rho.mismatches
    hard_failures += not ok
    print(
        f"root-count cross-check: {rho.instances} instances, "
        f"{len(rho.mismatches)} mismatches: {'pass' if ok else 'FAIL'}"
    )

    limit = cfg.limit if cfg.limit is not None else 10_000
    sieve = build_PF(F, limit)
    c_viol = 0
    for p in sieve.primes_in_PF[:50]:
        c_viol += len(verify_property_C(F, p).violations)
    print(f"exact-division after shift by p (first 50 primes): "
          f"{c_viol} violations: {'pass' if c_viol == 0 else 'FAIL'}")
    hard_failures += c_viol > 0

    rep_d = verify_property_D(sieve, limit=min(limit, 10_000))
    print(f"small witness per prime: {rep_d.checked} primes, "
          f"{len(rep_d.failures)} failures: {'pass' if not rep_d.failures else 'FAIL'}")
    hard_failures += bool(rep_d.failures)

    rep_e = verify_property_E(F, 100, 2000, effort=cfg.budget)
    # violations only expected at very small n; anything at n >= 100 for
    # these degrees would be a bug
    print(
        f"large-prime-divisor count (n in [100, 2000]): "
        f"{len(rep_e.violations)} above-threshold, "
        f"{len(rep_e.indeterminate)} indeterminate"
    )

    sieve_w = build_PF(F, 10_000)
    params = DiversityParams.override(
        x=10_000, d=F.degree, k=1, y=5, window_lo=50, window_hi=2000,
        tail_exponent=None,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        mf = enumerate_MF(sieve_w, params)
    wits = witnesses_for_MF(F, mf[:200])
    bad = sum(1 for w in wits if not recheck_witness(F, w))
    print(f"witness re-check: {len(wits)} witnesses, {bad} failures: "
          f"{'pass' if bad == 0 else 'FAIL'}")
    hard_failures += bad > 0

    if hard_failures:
        print(f"{hard_failures} hard failure(s)")
        return 3
    print("all suites passed")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divlab",
        description="Diversity experiments for parametric families of number fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("analyze", cmd_analyze),
        ("sieve", cmd_sieve),
        ("witness", cmd_witness),
        ("diversity", cmd_diversity),
        ("verify", cmd_verify),
    ):
        p = sub.add_parser(name)
        p.set_defaults(func=fn)
        p.add_argument("--config", metavar="PATH")
        p.add_argument("--cover", metavar="EXPR")
        p.add_argument("--N", type=int)
        p.add_argument("--x", type=float)
        p.add_argument("--mode", choices=["paper", "override"])
        p.add_argument("--epsilon", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--k", type=int)
        p.add_argument("--y", type=float)
        p.add_argument("--window-lo", dest="window_lo", type=float)
        p.add_argument("--window-hi", dest="window_hi", type=float)
        p.add_argument("--tail")
        p.add_argument("--d", type=int)
        p.add_argument("--limit", type=int)
        p.add_argument("--budget", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", metavar="DIR")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = merge_flags(cfg, args)
        cfg.validate()
        return args.func(cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except (DegenerateCoverError, AlgebraError) as e:
        print(f"degenerate input: {e}", file=sys.stderr)
        return 2
    except LemmaViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
