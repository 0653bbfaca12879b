"""Small exact number-theory helpers shared across modules."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Moebius function by trial division (n is always small here)."""
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def irreducible_count(q: int, n: int) -> int:
    """Number of monic irreducible polynomials of degree n over F_q.

    Exact big-integer Moebius sum (1/n) * sum_{d|n} mu(d) q^(n/d).
    """
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    total = sum(mobius(d) * q ** (n // d) for d in divisors(n))
    assert total % n == 0
    return total // n


def prime_power_base(q: int) -> int | None:
    """Return the prime p if q = p^e for some e >= 1, else None."""
    if q < 2:
        return None
    m, p = q, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 1
    return m  # q itself is prime


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if sieve[i]]
