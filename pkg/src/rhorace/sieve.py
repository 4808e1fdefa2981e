"""Sieve of Eratosthenes and the small-prime trial division pre-pass.

The sieve is a machine-range tool: it feeds the pre-pass that strips easy
factors before any rho work starts, so the racers only ever see inputs with
no small prime divisors.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_LIMIT = 10**6
MEMORY_CAP = 10**8  # one flag byte per candidate


@dataclass
class PrimeTable:
    """Ascending primes <= limit.  Treat as immutable; safe to share."""

    limit: int
    primes: list[int]

    def __contains__(self, n: int) -> bool:
        from bisect import bisect_left

        i = bisect_left(self.primes, n)
        return i < len(self.primes) and self.primes[i] == n


def sieve(limit: int, memory_cap: int = MEMORY_CAP) -> PrimeTable:
    """All primes <= limit, marking composites from p*p upward in steps of p.

    The outer loop stops once p*p exceeds the limit: any composite <= limit
    has a prime divisor at most sqrt(limit).
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit > memory_cap:
        raise ValueError(f"sieve limit {limit} exceeds memory cap {memory_cap}")
    if limit < 2:
        return PrimeTable(limit, [])
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        p += 1
    return PrimeTable(limit, [i for i in range(limit + 1) if flags[i]])


def trial_divide(n: int, table: PrimeTable) -> tuple[dict[int, int], int]:
    """Peel every prime factor <= table.limit off n.

    Returns (factors, cofactor) with n == product(p**k) * cofactor and the
    cofactor guaranteed free of prime divisors <= table.limit.  The scan
    stops early once p*p exceeds the remaining cofactor: at that point the
    cofactor is either 1 or prime, and if it still fits under the table
    limit it is emitted as a factor instead of returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    factors: dict[int, int] = {}
    m = n
    for p in table.primes:
        if p * p > m:
            break
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            factors[p] = k
    if 1 < m <= table.limit:
        # No prime <= sqrt(m) divides m, so m is prime and under the limit.
        factors[m] = 1
        m = 1
    return factors, m
