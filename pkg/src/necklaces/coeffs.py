"""Exact series coefficients behind the normalized-derivative monotonicity.

Under the substitution x = e^t, the bracket polynomial of order k turns
into an exponential series whose r-th coefficient (scaled by r!) is the
Möbius-weighted falling-factorial moment computed here.  The gap between
consecutive moments controls whether the normalized bracket grows, and
the positivity scan checks the four structural statements about these
quantities exhaustively at desk scale.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .numtheory import (
    divisors,
    euler_phi,
    falling_factorial,
    jordan_totient,
    lcm_divisor_pairs,
    moebius,
    smallest_prime_factor,
)
from .reports import ReportBuilder, ScanReport


@lru_cache(maxsize=None)
def falling_moment(n: int, k: int, r: int) -> Fraction:
    """(1/n) * sum(mu(n/m) * (m)_k * m^r over m | n); zero whenever k > n.

    Generally non-integral (at k = 0, r = 1 it is phi(n)/n), so the value
    is an exact rational.  Cached on (n, k, r): the scans dominate runtime
    otherwise.
    """
    if n < 1 or k < 0 or r < 0:
        raise ValueError(f"need n >= 1 and k, r >= 0, got ({n}, {k}, {r})")
    total = sum(moebius(n // m) * falling_factorial(m, k) * m**r for m in divisors(n))
    return Fraction(total, n)


def moment_gap(n: int, k: int, r: int) -> Fraction:
    """falling_moment(n, k, r+1) - n * falling_moment(n, k, r).

    Strictly positive exactly when k <= n/p (p the smallest prime of n),
    zero for k above that threshold; the positivity scan enforces this.
    """
    return falling_moment(n, k, r + 1) - n * falling_moment(n, k, r)


def jordan_gap(n: int, k: int) -> int:
    """J_{k+1}(n) - n*J_k(n): the order-zero series coefficient at index k.

    At k = 0 this is phi(n).  Positivity for all k is what makes the
    normalized family grow, and is asserted by the scans, not here.
    """
    if n < 2 or k < 0:
        raise ValueError(f"need n >= 2 and k >= 0, got ({n}, {k})")
    return jordan_totient(k + 1, n) - n * jordan_totient(k, n)


def verify_moment_recursion(n: int, k: int, r: int, s: int) -> bool:
    """Check the lcm-pair expansion that moves the moment from r to r + s.

    The weights are Jordan totient values J_s(j)/j; s = 0 degenerates to
    the identity because J_0(j) vanishes for j >= 2.
    """
    if n < 1 or min(k, r, s) < 0:
        raise ValueError(f"need n >= 1 and k, r, s >= 0, got ({n}, {k}, {r}, {s})")
    lhs = falling_moment(n, k, r + s)
    rhs = sum(
        Fraction(g * jordan_totient(s, j), j) * falling_moment(i, k, r)
        for i, j, g in lcm_divisor_pairs(n)
    )
    return lhs == rhs


def moment_gap_via_pairs(n: int, k: int, r: int) -> Fraction:
    """Alternative route to the gap: lcm pairs with i < n, weighted by phi(j)/j."""
    return sum(
        Fraction(g * euler_phi(j), j) * falling_moment(i, k, r)
        for i, j, g in lcm_divisor_pairs(n)
        if i < n
    )


def positivity_scan(n_max: int, k_max: int, r_max: int) -> ScanReport:
    """Exhaustive vanishing/positivity check of the moments and their gaps.

    For every cell (n <= n_max, k <= k_max, r <= r_max):
      - the moment vanishes when n < k and is nonnegative when n >= k;
      - the gap is nonnegative everywhere;
      - for n >= 2 the gap is strictly positive iff k <= n/p and zero
        iff k > n/p, with p the smallest prime factor of n.
    n = 1 has no smallest prime, so only the first three checks apply.
    Every violation is recorded.
    """
    if min(n_max, k_max, r_max) < 1:
        raise ValueError("scan bounds must be positive")
    b = ReportBuilder(
        "moment-positivity", f"n <= {n_max}, k <= {k_max}, r <= {r_max}"
    )
    for n in range(1, n_max + 1):
        p = smallest_prime_factor(n) if n >= 2 else None
        for k in range(k_max + 1):
            for r in range(r_max + 1):
                cell = f"n={n}, k={k}, r={r}"
                a = falling_moment(n, k, r)
                if n < k:
                    b.check(a == 0, cell, "moment == 0 when n < k", str(a))
                else:
                    b.check(a >= 0, cell, "moment >= 0 when n >= k", str(a))
                c = moment_gap(n, k, r)
                b.check(c >= 0, cell, "gap >= 0", str(c))
                if p is not None:
                    if k * p <= n:
                        b.check(c > 0, cell, "gap > 0 when k <= n/p", str(c))
                    else:
                        b.check(c == 0, cell, "gap == 0 when k > n/p", str(c))
    return b.build()


def jordan_gap_scan(n_max: int, k_max: int) -> ScanReport:
    """Strict positivity of J_{k+1}(n) - n*J_k(n) for 2 <= n <= n_max, k <= k_max."""
    b = ReportBuilder("jordan-gap-positivity", f"2 <= n <= {n_max}, 0 <= k <= {k_max}")
    for n in range(2, n_max + 1):
        for k in range(k_max + 1):
            g = jordan_gap(n, k)
            b.check(g > 0, f"n={n}, k={k}", "J_{k+1}(n) - n*J_k(n) > 0", str(g))
    return b.build()
