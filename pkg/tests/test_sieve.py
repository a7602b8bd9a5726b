import math
import warnings
from fractions import Fraction

import pytest
import sympy

from conftest import brute_force_MF
from divlab.algebra import AlgebraError, IntPoly
from divlab.sieve import (
    DiversityParams,
    build_PF,
    check_density_floor,
    check_MF_membership,
    default_epsilon,
    enumerate_MF,
    prime_sieve,
    report_MF_cardinality,
)

T = IntPoly.of([0, 1])
T2P1 = IntPoly.of([1, 0, 1])


class TestPrimeSieve:
    def test_tiny(self):
        assert prime_sieve(10) == [2, 3, 5, 7]
        assert prime_sieve(2) == [2]

    def test_thirty(self):
        ps = prime_sieve(30)
        assert len(ps) == 10 and ps[-1] == 29

    def test_against_sympy(self):
        assert prime_sieve(10**5) == list(sympy.primerange(2, 10**5 + 1))

    def test_bad_limit(self):
        with pytest.raises(ValueError):
            prime_sieve(1)


class TestBuildPF:
    def test_gaussian_small(self, small_PF_quadratic):
        assert small_PF_quadratic.primes_in_PF == (5, 13, 17, 29)
        assert small_PF_quadratic.delta_hat == Fraction(4, 10)

    def test_identity_polynomial(self):
        sieve = build_PF(T, 30)
        assert len(sieve.primes_in_PF) == 10
        assert sieve.delta_hat == 1

    def test_gaussian_density(self):
        sieve = build_PF(T2P1, 10**5)
        assert abs(float(sieve.delta_hat) - 0.5) < 0.02

    def test_inseparable_rejected(self):
        with pytest.raises(AlgebraError):
            build_PF(IntPoly.of([1, -2, 1]), 100)

    def test_prefix_property(self):
        small = build_PF(T2P1, 500)
        big = build_PF(T2P1, 5000)
        assert big.primes_in_PF[: len(small.primes_in_PF)] == small.primes_in_PF

    def test_membership_operator(self, small_PF_quadratic):
        assert 13 in small_PF_quadratic
        assert 7 not in small_PF_quadratic

    def test_listed_primes_really_have_roots(self):
        F = IntPoly.of([0, 2, -3, 1])
        sieve = build_PF(F, 2000)
        for p in sieve.primes_in_PF:
            assert sieve.discriminant % p != 0
            assert any(F(r) % p == 0 for r in range(p))


class TestDensityFloor:
    def test_gaussian(self):
        rep = check_density_floor(build_PF(T2P1, 10**4), d=2)
        assert rep.passed and abs(rep.delta_hat - 0.5) < 0.05

    def test_identity(self):
        rep = check_density_floor(build_PF(T, 10**4), d=1)
        assert rep.passed and rep.delta_hat == 1.0

    def test_cube_root_of_two(self):
        # delta for T^3-2 measures near 1/3 over primes with a root; the
        # floor 1/3 - 0.05 must clear either way
        rep = check_density_floor(build_PF(IntPoly.of([-2, 0, 0, 1]), 10**4), d=3)
        assert rep.passed

    def test_needs_enough_primes(self):
        with pytest.raises(ValueError):
            check_density_floor(build_PF(T, 100), d=1)


class TestDiversityParams:
    def test_paper_mode_formulas(self):
        p = DiversityParams.paper(x=10**6, delta=0.5, d=2)
        assert p.kappa == pytest.approx(math.log(math.log(10**6)))
        assert p.k == math.floor(p.epsilon * 0.5 * p.kappa) + 1
        assert p.y == pytest.approx(math.exp(math.log(10**6) ** (1 - p.epsilon)))
        assert p.window_lo == pytest.approx(10**6 / (2 * p.kappa))
        assert p.mode == "paper"

    def test_paper_mode_rejects_tampering(self):
        p = DiversityParams.paper(x=10**6, delta=0.5, d=2)
        with pytest.raises(ValueError):
            DiversityParams(
                x=p.x, epsilon=p.epsilon, delta=p.delta, d=p.d, kappa=p.kappa,
                k=p.k + 3, y=p.y, window_lo=p.window_lo, window_hi=p.window_hi,
                tail_exponent=p.tail_exponent, mode="paper",
            )

    def test_epsilon_range_enforced(self):
        with pytest.raises(ValueError):
            DiversityParams.override(
                x=100, d=1, k=1, y=2, window_lo=10, window_hi=20, epsilon=0.7
            )

    def test_default_epsilon(self):
        assert default_epsilon(1) == pytest.approx(1 / (1000 * math.log(2)))
        assert default_epsilon(2) == pytest.approx(1 / (1000 * math.log(4)))

    def test_tail_test_is_exact(self):
        p = DiversityParams.override(
            x=10**4, d=1, k=1, y=2, window_lo=10, window_hi=20,
            tail_exponent=Fraction(1, 2),
        )
        assert p.tail_ok(100)      # 100^2 == 10^4
        assert not p.tail_ok(99)


class TestEnumerateMF:
    def test_override_example(self, small_PF_quadratic):
        params = DiversityParams.override(
            x=30, d=2, k=1, y=5, window_lo=50, window_hi=100, tail_exponent=None
        )
        mf = enumerate_MF(small_PF_quadratic, params)
        assert [e.m for e in mf] == [65, 85]
        assert mf[0].primes == (5, 13) and mf[0].P == 13 and mf[0].m1 == 5

    def test_single_prime_case(self):
        sieve = build_PF(T, 200)
        params = DiversityParams.override(
            x=200, d=1, k=0, y=2, window_lo=40, window_hi=60,
            tail_exponent=Fraction(1, 4),
        )
        mf = enumerate_MF(sieve, params)
        expected = [p for p in sieve.primes_in_PF
                    if 40 <= p <= 60 and p**4 >= 200]
        assert [e.m for e in mf] == expected

    def test_paper_mode_desk_scale_is_empty(self):
        sieve = build_PF(T2P1, 10**6)
        params = DiversityParams.paper(
            x=10**6, delta=float(sieve.delta_hat), d=2,
        )
        assert params.k == 1 and params.y > (10**6) ** 0.97
        with pytest.warns(UserWarning, match="empty"):
            assert enumerate_MF(sieve, params) == []

    def test_limit_must_cover_x(self, small_PF_quadratic):
        params = DiversityParams.override(
            x=10**4, d=2, k=1, y=5, window_lo=50, window_hi=100
        )
        with pytest.raises(ValueError):
            enumerate_MF(small_PF_quadratic, params)

    @pytest.mark.parametrize("F,k,y,tail", [
        (T2P1, 1, 5, None),
        (T, 1, 3, Fraction(1, 2)),
        (IntPoly.of([0, 2, -3, 1]), 2, 2, None),
    ])
    def test_agrees_with_window_scan(self, F, k, y, tail):
        x = 10**4
        sieve = build_PF(F, x)
        params = DiversityParams.override(
            x=x, d=F.degree, k=k, y=y,
            window_lo=x / 8, window_hi=x / 4, tail_exponent=tail,
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            mf = enumerate_MF(sieve, params)
        assert [e.m for e in mf] == brute_force_MF(sieve, params)

    def test_independent_membership_recheck(self):
        x = 10**4
        sieve = build_PF(T2P1, x)
        params = DiversityParams.override(
            x=x, d=2, k=1, y=5, window_lo=x / 8, window_hi=x / 4
        )
        mf = enumerate_MF(sieve, params)
        assert mf
        for e in mf:
            assert check_MF_membership(e.m, sieve, params)
        # neighbours are even, and 2 is never in P_F for T^2+1
        for e in mf:
            assert not check_MF_membership(e.m + 1, sieve, params)
        assert not check_MF_membership(4, sieve, params)


class TestCardinalityReport:
    def test_monotone_in_x(self):
        sieve = build_PF(T, 10**5)

        def params_for(x):
            kappa = math.log(math.log(x))
            return DiversityParams.override(
                x=x, d=1, k=1, y=2,
                window_lo=x / (2 * kappa), window_hi=x / kappa,
                tail_exponent=Fraction(1, 2),
            )

        rows = report_MF_cardinality(sieve, params_for, [10**3, 10**4, 10**5])
        counts = [r.count for r in rows]
        assert counts == sorted(counts)
        assert rows[0].mode == "override"
        for r in rows:
            if r.count:
                assert r.fitted_exponent == pytest.approx(
                    math.log(r.count) / math.log(r.x)
                )
