"""Per-specialization fiber polynomials, irreducibility, the
ramified-prime fingerprint (odd-valuation primes of the fiber
discriminant), and the census counting distinct fields against the
N/(log N)^(1-eta) benchmark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import AlgebraError, CurveCover, IntPoly, poly_discriminant
from .factorization import (
    factor_integer,
    factor_over_Z,
    is_irreducible_mod_p,
    is_prime,
)
from .sieve import prime_sieve


class DegenerateFiberError(ValueError):
    """The specialized polynomial drops degree or vanishes."""


def fiber_poly(cover: CurveCover, n: int) -> IntPoly:
    """g(n, u) with integer content removed; degree drop (vanishing
    leading coefficient) is an error, the specialization is excluded."""
    if cover.lc_u(n) == 0:
        raise DegenerateFiberError(f"leading coefficient vanishes at t = {n}")
    f = cover.at_t(n)
    return f.primitive_part()


def is_fiber_irreducible(cover: CurveCover, n: int) -> Optional[bool]:
    """Is g(n, u) irreducible over Q?  Exact: quadratics by a perfect
    square test on the discriminant, otherwise a fast mod-p certificate
    with full rational factorization as fallback.  None is reserved for
    budget-limited unknowns."""
    f = fiber_poly(cover, n)
    if f.degree <= 1:
        return True
    if f.degree == 2:
        a, b, c = f.coeffs[2], f.coeffs[1], f.coeffs[0]
        disc = b * b - 4 * a * c
        if disc < 0:
            return True
        r = math.isqrt(disc)
        return r * r != disc
    disc = poly_discriminant(f)
    if disc == 0:
        return False
    good = 0
    p = 2
    while good < 10:
        if is_prime(p) and f.lc % p != 0 and disc % p != 0:
            good += 1
            if is_irreducible_mod_p(f, p):
                return True
        p += 1
    _, factors = factor_over_Z(f)
    return len(factors) == 1 and factors[0][1] == 1


@dataclass(frozen=True)
class FieldFingerprint:
    """Isomorphism-invariant stand-in for the field defined by an
    irreducible polynomial: the primes appearing to an odd power in its
    discriminant.  Shifting the generator changes the discriminant by a
    square of the index, so parities are preserved."""

    odd_valuation_primes: tuple[int, ...]
    complete: bool

    def definitely_differs(self, other: "FieldFingerprint") -> bool:
        """True when the two fingerprints are distinguishable on their
        known primes alone."""
        if self.complete and other.complete:
            return self.odd_valuation_primes != other.odd_valuation_primes
        mine, theirs = set(self.odd_valuation_primes), set(other.odd_valuation_primes)
        return bool(mine ^ theirs)

    def render(self) -> str:
        body = ";".join(str(p) for p in self.odd_valuation_primes)
        return body + ("" if self.complete else "?")


def fingerprint(fpoly: IntPoly, trial_bound: int = 10_000, effort: int = 1_000_000) -> FieldFingerprint:
    """Odd-valuation primes of disc(fpoly).  An unfactored cofactor that
    is a perfect square cannot change any parity; otherwise the
    fingerprint is marked incomplete."""
    disc = poly_discriminant(fpoly)
    if disc == 0:
        raise AlgebraError("zero discriminant: polynomial is not separable")
    fact = factor_integer(disc, trial_bound=trial_bound, effort=effort)
    odd = tuple(sorted(p for p, e in fact.factors if e % 2 == 1))
    complete = fact.complete
    if not complete:
        root = math.isqrt(fact.cofactor)
        if root * root == fact.cofactor:
            complete = True
    return FieldFingerprint(odd_valuation_primes=odd, complete=complete)


@dataclass(frozen=True)
class EtaReport:
    epsilon: float
    eta: float
    unconditional_eta: Optional[float]  # from genus and cover degree, if given


def eta_exponent(d: int, delta: float, genus: Optional[int] = None, nu: Optional[int] = None) -> EtaReport:
    """eta = delta * epsilon / 2 with epsilon = 1/(1000 log(2d)); the
    unconditional constant 1e-6/((g+nu) log(g+nu)) is reported when the
    genus is supplied."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0, 1]")
    epsilon = 1.0 / (1000.0 * math.log(2 * d))
    eta = delta * epsilon / 2.0
    unconditional = None
    if genus is not None and nu is not None:
        s = genus + nu
        unconditional = 1e-6 / (s * math.log(s))
    return EtaReport(epsilon=epsilon, eta=eta, unconditional_eta=unconditional)


@dataclass(frozen=True)
class CensusRow:
    n: int
    fiber_degree: int
    irreducible: Optional[bool]  # None for degenerate/skipped fibers
    fingerprint: Optional[FieldFingerprint]
    new_field: bool


@dataclass(frozen=True)
class DiversityCensus:
    N: int
    per_n: tuple[CensusRow, ...]
    distinct_lower_bound: int
    reducible_count: int
    skipped: tuple[int, ...]
    eta: float
    mode: str

    @property
    def n_over_log_n(self) -> float:
        return self.N / math.log(self.N)

    @property
    def bound_value(self) -> float:
        return self.N / math.log(self.N) ** (1.0 - self.eta)


@dataclass(frozen=True)
class CensusConfig:
    trial_bound: int = 10_000
    effort: int = 1_000_000
    eta: Optional[float] = None  # computed from (d, delta) when absent
    delta: Optional[float] = None  # defaults to the measured density
    delta_sieve_limit: int = 10_000
    workers: int = 1
    mode: str = "paper"


def _census_rows(cover: CurveCover, n_lo: int, n_hi: int, config: CensusConfig) -> list[CensusRow]:
    rows: list[CensusRow] = []
    for n in range(n_lo, n_hi + 1):
        try:
            f = fiber_poly(cover, n)
        except DegenerateFiberError:
            rows.append(CensusRow(n=n, fiber_degree=-1, irreducible=None, fingerprint=None, new_field=False))
            continue
        irr = is_fiber_irreducible(cover, n)
        if irr is not True:
            rows.append(CensusRow(n=n, fiber_degree=f.degree, irreducible=irr, fingerprint=None, new_field=False))
            continue
        fp = fingerprint(f, trial_bound=config.trial_bound, effort=config.effort)
        rows.append(CensusRow(n=n, fiber_degree=f.degree, irreducible=True, fingerprint=fp, new_field=False))
    return rows


def _census_shard(args) -> list[CensusRow]:
    cover_coeffs, n_lo, n_hi, config = args
    cover = CurveCover(tuple(IntPoly(c) for c in cover_coeffs))
    return _census_rows(cover, n_lo, n_hi, config)


def run_census(cover: CurveCover, N: int, config: CensusConfig = CensusConfig()) -> DiversityCensus:
    """Walk n = 1..N: specialize, test irreducibility, fingerprint the
    irreducible fibers, and count distinct fingerprints conservatively
    (a partial fingerprint counts only when it differs on known primes
    from everything already counted)."""
    if N < 10:
        raise ValueError("census needs N >= 10")
    workers = max(1, config.workers)
    if workers == 1:
        rows = _census_rows(cover, 1, N, config)
    else:
        from concurrent.futures import ProcessPoolExecutor

        step = -(-N // workers)
        shards = [
            (tuple(f.coeffs for f in cover.coeffs_u), lo, min(lo + step - 1, N), config)
            for lo in range(1, N + 1, step)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for shard in pool.map(_census_shard, shards) for r in shard]
    rows.sort(key=lambda r: r.n)

    complete_seen: set[tuple[int, ...]] = set()
    partial_seen: list[FieldFingerprint] = []
    final: list[CensusRow] = []
    distinct = 0
    reducible = 0
    skipped = []
    for row in rows:
        if row.irreducible is None:
            skipped.append(row.n)
            final.append(row)
            continue
        if row.irreducible is False:
            reducible += 1
            final.append(row)
            continue
        fp = row.fingerprint
        assert fp is not None
        if fp.complete:
            new = fp.odd_valuation_primes not in complete_seen
            if new:
                complete_seen.add(fp.odd_valuation_primes)
        else:
            known = [
                FieldFingerprint(t, True) for t in complete_seen
            ] + partial_seen
            new = all(fp.definitely_differs(other) for other in known)
            if new:
                partial_seen.append(fp)
        if new:
            distinct += 1
        final.append(CensusRow(row.n, row.fiber_degree, True, fp, new))

    eta = config.eta
    if eta is None:
        from .algebra import critical_polynomial
        from .sieve import build_PF

        F = critical_polynomial(cover)
        delta = config.delta
        if delta is None:
            delta = float(build_PF(F, config.delta_sieve_limit).delta_hat)
        eta = eta_exponent(F.degree, delta).eta
    return DiversityCensus(
        N=N,
        per_n=tuple(final),
        distinct_lower_bound=distinct,
        reducible_count=reducible,
        skipped=tuple(skipped),
        eta=eta,
        mode=config.mode,
    )


def count_reducible_fibers(cover: CurveCover, N: int) -> int:
    """Reducible-fiber count over n = 1..N (degenerate fibers excluded)."""
    count = 0
    for n in range(1, N + 1):
        try:
            if is_fiber_irreducible(cover, n) is False:
                count += 1
        except DegenerateFiberError:
            continue
    return count


