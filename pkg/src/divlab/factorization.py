"""Factorization kernels: polynomial factorization over GF(p) (distinct
degree + equal degree splitting), integer polynomial factorization over Z
(Hensel lifting with subset recombination), and integer factorization
(trial division + Brent-cycle Pollard rho with deterministic Miller-Rabin
certificates).

All randomized searches run on fixed seeds, so outputs are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .algebra import AlgebraError, IntPoly, poly_gcd, poly_discriminant

# Deterministic Miller-Rabin: this base set is a primality certificate for
# every integer below 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over GF(p); little-endian int lists

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [c % p for c in a]
    _trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(r) - len(b) + 1)
    for i in range(len(r) - len(b), -1, -1):
        c = (r[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % p
    return _trim(q), _trim(r)


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    return _pdivmod(a, b, p)[1]


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    a = _pmod(a, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, a, p), mod, p)
        a = _pmod(_pmul(a, a, p), mod, p)
        e >>= 1
    return out


def _pderiv(a: list[int], p: int) -> list[int]:
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def _reduce_mod_p(f: IntPoly, p: int) -> list[int]:
    return _trim([c % p for c in f.coeffs])


# ---------------------------------------------------------------------------
# factorization over GF(p)

@dataclass(frozen=True)
class ModPolyFactorization:
    """Factorization of a polynomial mod p into monic irreducibles."""

    p: int
    unit: int  # leading coefficient of the input mod p
    factors: tuple[tuple[tuple[int, ...], int], ...]  # (monic coeffs, multiplicity)

    def product(self) -> list[int]:
        out = [self.unit]
        for fac, mult in self.factors:
            for _ in range(mult):
                out = _pmul(out, list(fac), self.p)
        return out


def roots_mod_p(f: IntPoly, p: int) -> list[int]:
    """All residues r in [0, p) with f(r) = 0 mod p, each listed once."""
    a = _reduce_mod_p(f, p)
    if not a:
        raise AlgebraError(f"polynomial vanishes identically mod {p}")
    if len(a) == 1:
        return []
    if p < 50:
        return [r for r in range(p) if _eval_mod(a, r, p) == 0]
    xp = _ppowmod([0, 1], p, a, p)
    g = _pgcd(a, _psub(xp, [0, 1], p), p)
    if len(g) <= 1:
        return []
    return sorted(_split_roots(g, p, random.Random(0x5EED ^ p)))


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def _eval_mod(a: list[int], r: int, p: int) -> int:
    v = 0
    for c in reversed(a):
        v = (v * r + c) % p
    return v


def _split_roots(g: list[int], p: int, rng: random.Random) -> list[int]:
    # g splits into distinct linear factors mod p
    if len(g) == 2:
        return [(-g[0] * pow(g[1], -1, p)) % p]
    if g[0] == 0:
        rest = _trim(g[1:])
        return [0] + (_split_roots(rest, p, rng) if len(rest) > 1 else [])
    while True:
        b = rng.randrange(p)
        h = _ppowmod([b, 1], (p - 1) // 2, g, p)
        d = _pgcd(g, _psub(h, [1], p), p)
        if 1 < len(d) < len(g):
            other, rem = _pdivmod(g, d, p)
            assert not rem
            return _split_roots(d, p, rng) + _split_roots(other, p, rng)


def factor_mod_p(f: IntPoly, p: int) -> ModPolyFactorization:
    """Complete factorization mod p into monic irreducibles with
    multiplicities (squarefree split, then distinct-degree, then
    equal-degree splitting)."""
    a = _reduce_mod_p(f, p)
    if not a:
        raise AlgebraError(f"polynomial vanishes identically mod {p}")
    unit = a[-1]
    inv = pow(unit, -1, p)
    monic = [(c * inv) % p for c in a]
    rng = random.Random(0xFAC7 ^ p)
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree_mod_p(monic, p):
        for irr in _factor_squarefree_mod_p(part, p, rng):
            key = tuple(irr)
            found[key] = found.get(key, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return ModPolyFactorization(p=p, unit=unit, factors=factors)


def _squarefree_mod_p(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of a monic polynomial mod p:
    list of (monic squarefree part, multiplicity)."""
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    df = _pderiv(f, p)
    if not df:
        # f = g(x^p) = g(x)^p over GF(p)
        g = [f[i] for i in range(0, len(f), p)]
        for part, mult in _squarefree_mod_p(g, p):
            out.append((part, mult * p))
        return out
    c = _pgcd(f, df, p)
    w, _ = _pdivmod(f, c, p)
    i = 1
    while len(w) > 1:
        y = _pgcd(w, c, p)
        z, _ = _pdivmod(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        w = y
        c, _ = _pdivmod(c, y, p)
        i += 1
    if len(c) > 1:
        # the leftover is a p-th power: c(x) = c1(x^p) = c1(x)^p
        c1 = [c[i] for i in range(0, len(c), p)]
        for part, mult in _squarefree_mod_p(c1, p):
            out.append((part, mult * p))
    return out


def _factor_squarefree_mod_p(f: list[int], p: int, rng: random.Random) -> list[list[int]]:
    """Factor a monic squarefree polynomial mod p into monic irreducibles."""
    out: list[list[int]] = []
    # distinct-degree
    xq = [0, 1]
    rest = list(f)
    d = 0
    stages: list[tuple[list[int], int]] = []
    while len(rest) - 1 > 2 * (d + 1) - 1 and len(rest) > 1:
        d += 1
        xq = _ppowmod(xq, p, rest, p)
        g = _pgcd(rest, _psub(xq, [0, 1], p), p)
        if len(g) > 1:
            stages.append((g, d))
            rest, _ = _pdivmod(rest, g, p)
            xq = _pmod(xq, rest, p)
    if len(rest) > 1:
        stages.append((rest, len(rest) - 1))
    for g, deg in stages:
        out.extend(_equal_degree_split(g, deg, p, rng))
    return out


def _equal_degree_split(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus: split monic squarefree f whose irreducible
    factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        b = [rng.randrange(p) for _ in range(n - 1)] + [1]
        if p == 2:
            # trace map T + T^2 + ... + T^(2^(d-1))
            h = list(b)
            acc = list(b)
            for _ in range(d - 1):
                acc = _pmod(_pmul(acc, acc, p), f, p)
                h = _padd(h, acc, p)
        else:
            h = _psub(_ppowmod(b, (p**d - 1) // 2, f, p), [1], p)
        g = _pgcd(f, h, p)
        if 1 < len(g) < len(f):
            other, _ = _pdivmod(f, g, p)
            return _equal_degree_split(g, d, p, rng) + _equal_degree_split(other, d, p, rng)


def _padd(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return _trim(out)


def is_irreducible_mod_p(f: IntPoly, p: int) -> bool:
    """True iff f mod p is irreducible of full degree (no drop, squarefree)."""
    a = _reduce_mod_p(f, p)
    if len(a) != len(f.coeffs) or len(a) <= 1:
        return False
    n = len(a) - 1
    if n == 1:
        return True
    df = _pderiv(a, p)
    if not df or len(_pgcd(a, df, p)) > 1:
        return False
    # Rabin: x^(p^n) = x mod f, and gcd(x^(p^(n/q)) - x, f) = 1 for q | n
    xq = [0, 1]
    powers = {}
    for i in range(1, n + 1):
        xq = _ppowmod(xq, p, a, p)
        powers[i] = xq
    if _psub(powers[n], [0, 1], p):
        return False
    for q in _prime_divisors_small(n):
        if len(_pgcd(a, _psub(powers[n // q], [0, 1], p), p)) != 1:
            return False
    return True


def _prime_divisors_small(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# factorization over Z

def factor_over_Z(f: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """Complete factorization over Z: returns (content with sign, list of
    (primitive irreducible with positive leading coefficient, multiplicity)).
    """
    if f.is_zero:
        raise AlgebraError("cannot factor the zero polynomial")
    content = f.content()
    if f.lc < 0:
        content = -content
    prim = IntPoly.of([c // content for c in f.coeffs])
    out: list[tuple[IntPoly, int]] = []
    for part, mult in _yun_squarefree(prim):
        for irr in _factor_squarefree_Z(part):
            out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return content, out


def _yun_squarefree(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's squarefree decomposition of a primitive polynomial over Z."""
    if f.degree < 1:
        return []
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return [(f, 1)]
    out: list[tuple[IntPoly, int]] = []
    w = f.exact_div(g)
    y = f.derivative().exact_div(g)
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        h = poly_gcd(w, z)
        if h.degree > 0:
            out.append((h, i))
        w = w.exact_div(h)
        y = z.exact_div(h) if not z.is_zero else z
        z = y - w.derivative()
        i += 1
    return out


def _factor_squarefree_Z(f: IntPoly) -> list[IntPoly]:
    """Factor a primitive squarefree polynomial over Z into primitive
    irreducibles (Zassenhaus: good prime, Hensel lift past the Mignotte
    bound, subset recombination)."""
    if f.degree <= 1:
        return [f.primitive_part()]
    lc = f.lc
    # monicize: fm(x) = lc^(d-1) f(x/lc)
    d = f.degree
    fm = IntPoly.of([c * lc ** (d - 1 - i) for i, c in enumerate(f.coeffs)])
    monic_factors = _factor_monic_squarefree_Z(fm)
    out = []
    for g in monic_factors:
        # pull back through x -> lc*x
        back = IntPoly.of([c * lc**i for i, c in enumerate(g.coeffs)])
        out.append(back.primitive_part())
    return sorted(out, key=lambda h: (h.degree, h.coeffs))


def _good_prime(f: IntPoly) -> int:
    """Smallest prime p >= 3 with p coprime to lc(f) and f squarefree mod p."""
    p = 3
    while True:
        if is_prime(p) and f.lc % p != 0:
            a = _reduce_mod_p(f, p)
            df = _pderiv(a, p)
            if df and len(_pgcd(a, df, p)) == 1:
                return p
        p += 2


def _factor_monic_squarefree_Z(f: IntPoly) -> list[IntPoly]:
    p = _good_prime(f)
    modfac = factor_mod_p(f, p)
    locals_ = [list(fac) for fac, _ in modfac.factors]
    if len(locals_) == 1:
        return [f]
    # Mignotte-style bound on factor coefficients
    norm = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    bound = 2 ** (f.degree + 1) * norm
    a = 1
    q = p
    while q <= 2 * bound:
        q *= p
        a += 1
    lifted = _hensel_lift_tree(f, locals_, p, q)
    return _recombine(f, lifted, q)


def _centered(c: int, q: int) -> int:
    c %= q
    return c - q if c > q // 2 else c


def _qmul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def _qdivmod_monic(a: list[int], b: list[int], q: int) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial with coefficients mod q."""
    assert b and b[-1] == 1
    r = [c % q for c in a]
    _trim(r)
    qt = [0] * max(0, len(r) - len(b) + 1)
    for i in range(len(r) - len(b), -1, -1):
        c = r[i + len(b) - 1] % q
        qt[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % q
    return _trim(qt), _trim(r)


def _hensel_step(fc, g, h, s, t, m):
    """One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
    with g, h monic, to the same relations mod m^2."""
    m2 = m * m
    e = _psub_q(fc, _qmul(g, h, m2), m2)
    qq, r = _qdivmod_monic(_qmul(s, e, m2), h, m2)
    gstar = _trim([(x + y) % m2 for x, y in _zip_pad(g, _padd_q(_qmul(t, e, m2), _qmul(qq, g, m2), m2))])
    hstar = _trim([(x + y) % m2 for x, y in _zip_pad(h, r)])
    b = _psub_q(_padd_q(_qmul(s, gstar, m2), _qmul(t, hstar, m2), m2), [1], m2)
    cc, dd = _qdivmod_monic(_qmul(s, b, m2), hstar, m2)
    sstar = _psub_q(s, dd, m2)
    tstar = _psub_q(t, _padd_q(_qmul(t, b, m2), _qmul(cc, gstar, m2), m2), m2)
    return gstar, hstar, sstar, tstar


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _padd_q(a, b, q):
    return _trim([(x + y) % q for x, y in _zip_pad(list(a), list(b))])


def _psub_q(a, b, q):
    return _trim([(x - y) % q for x, y in _zip_pad(list(a), list(b))])


def _hensel_lift_tree(f: IntPoly, facs: list[list[int]], p: int, q: int) -> list[list[int]]:
    """Lift the mod-p factorization of a monic f to mod q = p^a."""
    fc = [c % q for c in f.coeffs]

    def lift(target: list[int], parts: list[list[int]]) -> list[list[int]]:
        if len(parts) == 1:
            return [target]
        half = len(parts) // 2
        g = [1]
        for fac in parts[:half]:
            g = _pmul(g, fac, p)
        h = [1]
        for fac in parts[half:]:
            h = _pmul(h, fac, p)
        s, t = _bezout_mod_p(g, h, p)
        m = p
        while m < q:
            g, h, s, t = _hensel_step(target, g, h, s, t, m)
            m = m * m
            g = [c % q for c in g] if m >= q else g
            h = [c % q for c in h] if m >= q else h
        g = _trim([c % q for c in g])
        h = _trim([c % q for c in h])
        return lift(g, parts[:half]) + lift(h, parts[half:])

    return lift(fc, facs)


def _bezout_mod_p(g: list[int], h: list[int], p: int) -> tuple[list[int], list[int]]:
    """s, t with s*g + t*h = 1 mod p for coprime g, h."""
    r0, r1 = list(g), list(h)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qt, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(qt, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(qt, t1, p), p)
    assert len(r0) == 1
    inv = pow(r0[0], -1, p)
    return [(c * inv) % p for c in s0], [(c * inv) % p for c in t0]


def _recombine(f: IntPoly, lifted: list[list[int]], q: int) -> list[IntPoly]:
    """Zassenhaus subset recombination of Hensel-lifted monic factors."""
    import itertools

    remaining = list(range(len(lifted)))
    current = f
    out: list[IntPoly] = []
    size = 1
    while 2 * size <= len(remaining):
        found = True
        while found:
            found = False
            for combo in itertools.combinations(remaining, size):
                prod = [1]
                for i in combo:
                    prod = _qmul(prod, lifted[i], q)
                cand = IntPoly.of([_centered(c, q) for c in prod])
                try:
                    quotient = current.exact_div(cand)
                except AlgebraError:
                    continue
                out.append(cand)
                current = quotient
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
            if 2 * size > len(remaining):
                break
        size += 1
    if current.degree > 0:
        out.append(current)
    return out


# ---------------------------------------------------------------------------
# integer factorization

@dataclass(frozen=True)
class IntFactorization:
    """Possibly-partial factorization value = sign * prod(p^e) * cofactor.
    Every listed p is a certified prime; cofactor == 1 means complete."""

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def omega(self) -> int:
        if not self.complete:
            raise AlgebraError("omega of an incomplete factorization")
        return len(self.factors)

    def is_squarefree(self) -> bool:
        if not self.complete:
            raise AlgebraError("squarefree test on an incomplete factorization")
        return all(e == 1 for _, e in self.factors)

    def reassemble(self) -> int:
        v = self.sign * self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3e24; raises beyond that range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise AlgebraError(f"{n} exceeds the deterministic Miller-Rabin range")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, effort: int) -> int:
    """Brent's cycle variant of Pollard rho; returns a nontrivial factor
    or 0 if the iteration budget runs out.  Deterministic: the polynomial
    increment steps through c = 1, 2, 3, ..."""
    if n % 2 == 0:
        return 2
    spent = 0
    for c in range(1, 1000):
        y, r, qacc = 2, 1, 1
        g, ys = 1, y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    qacc = qacc * abs(x - y) % n
                g = math.gcd(qacc, n)
                k += m
            r *= 2
            spent += r
            if spent > effort:
                return 0
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return 0


def factor_integer(nval: int, trial_bound: int = 10_000, effort: int = 1_000_000) -> IntFactorization:
    """Factor a nonzero integer: trial division to trial_bound, then
    Pollard rho (Brent) within the iteration budget.  The unsplit part
    lands in cofactor."""
    if nval == 0:
        raise AlgebraError("cannot factor zero")
    sign = -1 if nval < 0 else 1
    n = abs(nval)
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while d <= trial_bound and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += wheel[wi]
        wi = (wi + 1) % 8
    cofactor = 1
    stack = [n] if n > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if v >= _MR_LIMIT:
            # no primality certificate available up there
            cofactor *= v
            continue
        if is_prime(v):
            found[v] = found.get(v, 0) + 1
            continue
        root = math.isqrt(v)
        if root * root == v:
            stack.extend([root, root])
            continue
        g = _brent_rho(v, effort)
        if g in (0, 1, v):
            cofactor *= v
        else:
            stack.extend([g, v // g])
    factors = tuple(sorted(found.items()))
    return IntFactorization(value=nval, sign=sign, factors=factors, cofactor=cofactor)
