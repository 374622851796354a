"""Small integer helpers: factoring, orders, p-parts.

Everything here runs on numbers the size of q^2 - 1 or ell^d - 1 for
q <= 2^16 and d <= 12, so plain trial division is plenty.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 as a sorted tuple of (p, exponent)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    step = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorint(n)]


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorint(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorint(n) == ((n, 1),)


def valuation(n: int, p: int) -> int:
    """Largest e with p^e | n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def p_part(n: int, p: int) -> int:
    return p ** valuation(n, p)


def p_prime_part(n: int, p: int) -> int:
    return n // p_part(n, p)


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorint(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def units_mod(n: int) -> list[int]:
    """All k in [1, n) coprime to n (k = 1 listed first); [1] for n = 1."""
    if n == 1:
        return [1]
    from math import gcd

    return [k for k in range(1, n) if gcd(k, n) == 1]


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n, for gcd(a, n) = 1."""
    from math import gcd

    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    order = euler_phi(n)
    for p in prime_divisors(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def cyclotomic_value(t: int, x: int) -> int:
    """Value of the t-th cyclotomic polynomial at the integer x."""
    num = x**t - 1
    for s in divisors(t):
        if s < t:
            num //= cyclotomic_value(s, x)
    return num


def factor_prime_power_minus_one(ell: int, d: int) -> list[int]:
    """Prime divisors of ell^d - 1, via the cyclotomic-polynomial split.

    Each factor Phi_t(ell) is small enough for trial division even when
    ell^d - 1 itself is not.
    """
    primes: set[int] = set()
    for t in divisors(d):
        primes.update(prime_divisors(cyclotomic_value(t, ell)))
    return sorted(primes)


def smallest_primitive_root(p: int) -> int:
    """Least primitive root modulo an odd prime p (returns 1 for p = 2)."""
    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise ValueError(f"{p} is not prime")


def prime_congruent_one(modulus: int, avoid: tuple[int, ...] = ()) -> int:
    """Smallest prime p = k*modulus + 1 not in `avoid`."""
    k = 1
    while True:
        p = k * modulus + 1
        if p > 2 and is_prime(p) and p not in avoid:
            return p
        k += 1
