"""Elementary multiplicative number theory shared by the whole package.

Everything here is exact integer/rational arithmetic.  Factorization uses
a smallest-prime-factor sieve for small inputs and trial division above
the sieve limit; all desk-scale inputs are tiny, the sieve just keeps
scan loops cheap.
"""
from __future__ import annotations

import math
from fractions import Fraction

DEFAULT_SIEVE_LIMIT = 10**6


class FactorTable:
    """Smallest-prime-factor table for 2..limit.

    Immutable after construction and safe to share.  Inputs above
    ``limit`` fall back to trial division.
    """

    __slots__ = ("limit", "spf")

    def __init__(self, limit: int = DEFAULT_SIEVE_LIMIT):
        if limit < 2:
            raise ValueError("sieve limit must be at least 2")
        spf = list(range(limit + 1))
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == p:
                for c in range(p * p, limit + 1, p):
                    if spf[c] == c:
                        spf[c] = p
        self.limit = limit
        self.spf = spf  # treat as read-only; spf[m] is the least prime factor of m

    def smallest_prime_factor(self, n: int) -> int:
        if n < 2:
            raise ValueError(f"smallest prime factor undefined for {n}")
        if n <= self.limit:
            return self.spf[n]
        if n % 2 == 0:
            return 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                return f
            f += 2
        return n

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization as (prime, exponent) pairs, primes ascending."""
        if n < 1:
            raise ValueError(f"cannot factorize {n}; argument must be a positive integer")
        out = []
        while n > 1:
            p = self.smallest_prime_factor(n)
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


_shared: FactorTable | None = None


def shared_table() -> FactorTable:
    """The lazily built module-wide factor table."""
    global _shared
    if _shared is None:
        _shared = FactorTable()
    return _shared


def smallest_prime_factor(n: int) -> int:
    return shared_table().smallest_prime_factor(n)


def factorize(n: int) -> list[tuple[int, int]]:
    return shared_table().factorize(n)


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending; rejects n < 1."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def moebius(n: int) -> int:
    """Möbius function: 0 on non-squarefree n, else (-1)^(number of prime factors)."""
    result = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def jordan_totient(k: int, n: int) -> int:
    """k-th Jordan totient of n, cross-checked between its two classic forms.

    Computes both the Möbius sum over divisors and the exact-rational
    product n^k * prod(1 - p^-k) and insists they agree; a mismatch would
    be an internal defect, so it raises rather than returning either value.
    """
    if k < 0:
        raise ValueError(f"jordan_totient order must be nonnegative, got {k}")
    total = sum(moebius(n // m) * m**k for m in divisors(n))
    product = Fraction(n**k)
    for p, _ in factorize(n):
        product *= 1 - Fraction(1, p**k)
    if product.denominator != 1 or product != total:
        raise AssertionError(
            f"Jordan totient self-check failed for k={k}, n={n}: sum={total}, product={product}"
        )
    return total


def euler_phi(n: int) -> int:
    """Euler totient; by definition here the first Jordan totient."""
    return jordan_totient(1, n)


def falling_factorial(m: int, k: int) -> int:
    """m(m-1)...(m-k+1); empty product 1 when k = 0, zero when k > m."""
    if m < 0 or k < 0:
        raise ValueError(f"falling_factorial needs nonnegative arguments, got ({m}, {k})")
    return math.perm(m, k)


def lcm_divisor_pairs(n: int) -> list[tuple[int, int, int]]:
    """All (i, j, gcd(i, j)) with lcm(i, j) = n, ordered by (i, j)."""
    divs = divisors(n)
    return [(i, j, math.gcd(i, j)) for i in divs for j in divs if math.lcm(i, j) == n]
