"""Prime sieving, the set of primes where the critical polynomial has a
root (with its empirical density), and enumeration of the special
squarefree set used by the diversity experiments.
"""

from __future__ import annotations

import bisect
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import AlgebraError, IntPoly, poly_discriminant
from .factorization import factor_integer, roots_mod_p, _reduce_mod_p, _pgcd, _ppowmod, _psub


def prime_sieve(limit: int) -> list[int]:
    """All primes <= limit, by a segmented sieve of Eratosthenes."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    root = math.isqrt(limit)
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = bytearray(len(base[i * i :: i]))
    small = [i for i in range(2, root + 1) if base[i]]
    primes = list(small)
    seg_len = max(root, 1 << 16)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + seg_len - 1, limit)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in small:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                break
            seg[start - lo :: p] = bytearray(len(seg[start - lo :: p]))
        primes.extend(lo + i for i, flag in enumerate(seg) if flag)
        lo = hi + 1
    return primes


def _has_root_mod_p(f: IntPoly, p: int) -> bool:
    a = _reduce_mod_p(f, p)
    if len(a) <= 1:
        # constant (content stripped upstream): no root unless zero
        return not a
    if len(a) == 2:
        return True
    if len(a) == 3 and p > 2:
        # quadratic: root iff the discriminant is a square mod p
        disc = (a[1] * a[1] - 4 * a[2] * a[0]) % p
        return disc == 0 or pow(disc, (p - 1) // 2, p) == 1
    if p < 50:
        v = 0
        for r in range(p):
            acc = 0
            for c in reversed(a):
                acc = (acc * r + c) % p
            if acc == 0:
                return True
        return False
    xp = _ppowmod([0, 1], p, a, p)
    return len(_pgcd(a, _psub(xp, [0, 1], p), p)) > 1


@dataclass(frozen=True)
class ChebotarevSieve:
    """Primes up to `limit` where F has a root and which do not divide the
    discriminant of F, with the measured density among all primes."""

    F: IntPoly
    limit: int
    discriminant: int
    primes_in_PF: tuple[int, ...]
    total_primes: int

    @property
    def delta_hat(self) -> Fraction:
        return Fraction(len(self.primes_in_PF), self.total_primes)

    def __contains__(self, p: int) -> bool:
        i = bisect.bisect_left(self.primes_in_PF, p)
        return i < len(self.primes_in_PF) and self.primes_in_PF[i] == p


def build_PF(F: IntPoly, limit: int) -> ChebotarevSieve:
    """Filter the primes up to limit by: p does not divide disc(F) and
    F has a root mod p."""
    if F.degree < 1:
        raise AlgebraError("F must be non-constant")
    disc = poly_discriminant(F)
    if disc == 0:
        raise AlgebraError("F is not separable (zero discriminant)")
    primes = prime_sieve(limit)
    kept = tuple(p for p in primes if disc % p != 0 and _has_root_mod_p(F, p))
    return ChebotarevSieve(
        F=F, limit=limit, discriminant=disc, primes_in_PF=kept, total_primes=len(primes)
    )


@dataclass(frozen=True)
class DensityFloorReport:
    delta_hat: float
    floor: float
    slack: float
    margin: float
    passed: bool


def check_density_floor(sieve: ChebotarevSieve, d: int, slack: float = 0.05) -> DensityFloorReport:
    """Check that the measured density clears 1/d, up to finite-sample
    slack."""
    if sieve.total_primes < 100:
        raise ValueError("sieve limit too small: need at least 100 primes")
    dh = float(sieve.delta_hat)
    floor = 1.0 / d
    margin = dh - (floor - slack)
    return DensityFloorReport(
        delta_hat=dh, floor=floor, slack=slack, margin=margin, passed=margin >= 0
    )


@dataclass(frozen=True)
class DiversityParams:
    """Parameter bundle for the special squarefree set.

    In paper mode everything is derived from (x, epsilon, delta):
    kappa = log log x, k = floor(eps*delta*kappa) + 1, y = exp((log x)^(1-eps)),
    window [x/(2 kappa), x/kappa], tail cutoff x^(9/10).  Override mode sets
    k, y, the window and the tail directly and is stamped on all outputs.
    """

    x: float
    epsilon: float
    delta: float
    d: int
    kappa: float
    k: int
    y: float
    window_lo: float
    window_hi: float
    tail_exponent: Optional[Fraction]  # None switches the tail constraint off
    mode: str  # "paper" | "override"

    def __post_init__(self):
        if self.mode not in ("paper", "override"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (0 < self.epsilon <= 0.5):
            raise ValueError("epsilon must lie in (0, 1/2]")
        if self.mode == "paper":
            kappa = math.log(math.log(self.x))
            k = math.floor(self.epsilon * self.delta * kappa) + 1
            y = math.exp(math.log(self.x) ** (1 - self.epsilon))
            checks = (
                math.isclose(self.kappa, kappa),
                self.k == k,
                math.isclose(self.y, y),
                math.isclose(self.window_lo, self.x / (2 * kappa)),
                math.isclose(self.window_hi, self.x / kappa),
            )
            if not all(checks):
                raise ValueError("paper-mode fields are not consistent with (x, epsilon, delta)")

    @staticmethod
    def paper(
        x: float,
        delta: float,
        d: int,
        epsilon: Optional[float] = None,
        tail_exponent: Fraction = Fraction(9, 10),
    ) -> "DiversityParams":
        if epsilon is None:
            epsilon = default_epsilon(d)
        kappa = math.log(math.log(x))
        return DiversityParams(
            x=x,
            epsilon=epsilon,
            delta=delta,
            d=d,
            kappa=kappa,
            k=math.floor(epsilon * delta * kappa) + 1,
            y=math.exp(math.log(x) ** (1 - epsilon)),
            window_lo=x / (2 * kappa),
            window_hi=x / kappa,
            tail_exponent=tail_exponent,
            mode="paper",
        )

    @staticmethod
    def override(
        x: float,
        d: int,
        k: int,
        y: float,
        window_lo: float,
        window_hi: float,
        tail_exponent: Optional[Fraction] = None,
        delta: float = 1.0,
        epsilon: float = 0.5,
    ) -> "DiversityParams":
        return DiversityParams(
            x=x,
            epsilon=epsilon,
            delta=delta,
            d=d,
            kappa=math.log(math.log(x)) if x > math.e else 1.0,
            k=k,
            y=y,
            window_lo=window_lo,
            window_hi=window_hi,
            tail_exponent=tail_exponent,
            mode="override",
        )

    # integer window bounds, rounded outward so float noise never drops
    # a boundary element
    @property
    def lo_int(self) -> int:
        return math.floor(self.window_lo)

    @property
    def hi_int(self) -> int:
        return math.ceil(self.window_hi)

    def tail_ok(self, P: int) -> bool:
        """Exact integer test for P >= x^tail_exponent (x rounded to int)."""
        if self.tail_exponent is None:
            return True
        a, b = self.tail_exponent.numerator, self.tail_exponent.denominator
        return P**b >= round(self.x) ** a


def default_epsilon(d: int) -> float:
    """The choice 1/(1000 log(2d))."""
    return 1.0 / (1000.0 * math.log(2 * d))


@dataclass(frozen=True)
class MFElement:
    """One member m of the special squarefree set, with its factorization
    split as m = m1 * P, P the largest prime factor."""

    m: int
    primes: tuple[int, ...]

    @property
    def P(self) -> int:
        return self.primes[-1]

    @property
    def m1(self) -> int:
        return self.m // self.P


def enumerate_MF(sieve: ChebotarevSieve, params: DiversityParams) -> list[MFElement]:
    """All squarefree m composed of primes from the sieve with:
    window_lo <= m <= window_hi, omega(m) = k+1, p_min(m) >= y, and
    p_max(m) past the tail cutoff.

    Enumerates cofactors m1 as increasing k-subsets of the admissible
    small primes, then attaches each admissible large prime.
    """
    if sieve.limit < params.x:
        raise ValueError("sieve limit is below x")
    primes = sieve.primes_in_PF
    lo, hi = params.lo_int, params.hi_int
    k = params.k
    y_idx = bisect.bisect_left(primes, math.floor(params.y))
    while y_idx < len(primes) and primes[y_idx] < params.y:
        y_idx += 1
    out: list[MFElement] = []

    def attach_large(m1: int, chosen: tuple[int, ...], min_idx: int) -> None:
        lo_p = max(-(-lo // m1), (chosen[-1] + 1) if chosen else 2)
        hi_p = hi // m1
        i = bisect.bisect_left(primes, lo_p, lo=min_idx)
        while i < len(primes) and primes[i] <= hi_p:
            P = primes[i]
            if P >= params.y and params.tail_ok(P) and lo <= m1 * P <= hi:
                out.append(MFElement(m=m1 * P, primes=chosen + (P,)))
            i += 1

    def extend(m1: int, chosen: tuple[int, ...], start: int) -> None:
        if len(chosen) == k:
            attach_large(m1, chosen, start if chosen else y_idx)
            return
        for i in range(start, len(primes)):
            p = primes[i]
            # need k - len(chosen) - 1 more small primes plus a larger P
            if m1 * p > hi:
                break
            extend(m1 * p, chosen + (p,), i + 1)

    extend(1, (), y_idx)
    out.sort(key=lambda e: (e.m, e.primes))
    if not out:
        warnings.warn(
            "special squarefree set is empty for these parameters "
            f"(mode={params.mode}, k={params.k}, y={params.y:.4g}, "
            f"window=[{params.window_lo:.4g}, {params.window_hi:.4g}], "
            f"tail={params.tail_exponent})",
            stacklevel=2,
        )
    return out


def check_MF_membership(m: int, sieve: ChebotarevSieve, params: DiversityParams) -> bool:
    """Independent membership re-check: factorizes m from scratch and
    verifies every defining constraint."""
    fact = factor_integer(m)
    if not fact.complete or not fact.is_squarefree():
        return False
    primes = fact.primes
    if len(primes) != params.k + 1:
        return False
    if any(p not in sieve for p in primes):
        return False
    if primes[0] < params.y:
        return False
    if not params.tail_ok(primes[-1]):
        return False
    return params.lo_int <= m <= params.hi_int


@dataclass(frozen=True)
class MFCardinalityRow:
    x: float
    count: int
    fitted_exponent: float  # log |MF(x)| / log x, 0 when empty
    mode: str


def report_MF_cardinality(
    sieve: ChebotarevSieve, params_for_x, xs: Iterable[float]
) -> list[MFCardinalityRow]:
    """Tabulate |MF(x)| and the fitted exponent over a series of x values.
    `params_for_x` maps x to a DiversityParams."""
    rows = []
    for x in xs:
        params = params_for_x(x)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            count = len(enumerate_MF(sieve, params))
        exp = math.log(count) / math.log(x) if count else 0.0
        rows.append(MFCardinalityRow(x=x, count=count, fitted_exponent=exp, mode=params.mode))
    return rows
