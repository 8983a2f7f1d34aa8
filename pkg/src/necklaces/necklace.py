"""The necklace polynomial family and its companions.

The degree-n member is the Möbius-weighted divisor sum
``(1/n) * sum(mu(d) * x^(n/d) for d | n)``.  Alongside it this module
builds the theta image (x*d/dx), the bracket variants x^k*f^(k), the
sub-leading error part, the log-convexity gap of three consecutive
members, and the growth certificate used by the monotonicity scans.

Integer evaluation never rounds: the divisor sum is checked for
divisibility by n before dividing, since a failure there would falsify
the counting interpretation of these polynomials.
"""
from __future__ import annotations

from fractions import Fraction

from .exactpoly import Poly
from .numtheory import (
    divisors,
    euler_phi,
    falling_factorial,
    lcm_divisor_pairs,
    moebius,
    smallest_prime_factor,
)
from .reports import ReportBuilder, ScanReport


def necklace_eval_int(n: int, x: int) -> int:
    """Exact value at an integer argument, via the integer divisor sum."""
    if n < 1:
        raise ValueError(f"necklace index must be positive, got {n}")
    total = sum(moebius(d) * x ** (n // d) for d in divisors(n))
    q, r = divmod(total, n)
    if r:
        raise AssertionError(f"divisor sum {total} at n={n}, x={x} is not divisible by {n}")
    return q


def necklace_eval_recursive(n: int, x) -> Fraction:
    """Evaluate by peeling the smallest prime factor down to the linear base case.

    With p the smallest prime of n and d = n/p, the value is
    f_d(x^p)/p when p divides d and (f_d(x^p) - f_d(x))/p otherwise.
    """
    if n < 1:
        raise ValueError(f"necklace index must be positive, got {n}")
    x = Fraction(x)
    if n == 1:
        return x
    p = smallest_prime_factor(n)
    d = n // p
    if d % p == 0:
        return necklace_eval_recursive(d, x**p) / p
    return (necklace_eval_recursive(d, x**p) - necklace_eval_recursive(d, x)) / p


class NecklaceFamily:
    """Grow-on-demand cache of the family; entries are immutable once built.

    Verification scans share one family so that e.g. log-convexity scans,
    which touch three consecutive indices repeatedly, reuse the cache.
    """

    def __init__(self, max_index: int = 0):
        self._polys: dict[int, Poly] = {}
        self._deltas: dict[int, Poly] = {}
        self.grow(max_index)

    def grow(self, max_index: int) -> "NecklaceFamily":
        for n in range(1, max_index + 1):
            self.poly(n)
        return self

    @property
    def max_index(self) -> int:
        return max(self._polys, default=0)

    def poly(self, n: int) -> Poly:
        """The degree-n member, cached."""
        got = self._polys.get(n)
        if got is None:
            if n < 1:
                raise ValueError(f"necklace index must be positive, got {n}")
            terms = {}
            for d in divisors(n):
                mu = moebius(d)
                if mu:
                    terms[n // d] = Fraction(mu, n)
            got = Poly.from_terms(terms)
            if got.degree != n or got.coefficient(n) != Fraction(1, n):
                raise AssertionError(f"malformed family member at n={n}: {got!r}")
            self._polys[n] = got
        return got

    def eval_exact(self, n: int, x) -> Fraction:
        return self.poly(n)(x)

    def theta_poly(self, n: int) -> Poly:
        """x*d/dx of the degree-n member; its value at 1 must be phi(n)/n."""
        out = self.poly(n).theta()
        if out(1) != Fraction(euler_phi(n), n):
            raise AssertionError(f"theta image at n={n} fails the value-at-1 identity")
        return out

    def bracket_poly(self, n: int, k: int) -> Poly:
        """x^k times the k-th derivative; identically zero for k > n."""
        if k < 0:
            raise ValueError("bracket order must be nonnegative")
        if k == 0:
            return self.poly(n)
        return self.poly(n).derivative(k) * Poly.monomial(k)

    def error_poly(self, n: int) -> Poly:
        """Sub-leading part of the divisor sum: n*M - x^n, degree at most n//2."""
        terms = {}
        for d in divisors(n):
            if d >= 2:
                mu = moebius(d)
                if mu:
                    terms[n // d] = mu
        out = Poly.from_terms(terms)
        if out != self.poly(n) * n - Poly.monomial(n):
            raise AssertionError(f"error part at n={n} disagrees with n*M_n - x^n")
        if out.degree > n // 2:
            raise AssertionError(f"error part at n={n} has degree {out.degree} > {n // 2}")
        return out

    def delta_poly(self, n: int) -> Poly:
        """Log-convexity gap M_{n-1}*M_{n+1} - M_n^2; positive iff log-convex at n."""
        if n < 2:
            raise ValueError(f"log-convexity gap needs n >= 2, got {n}")
        got = self._deltas.get(n)
        if got is None:
            mid = self.poly(n)
            got = self.poly(n - 1) * self.poly(n + 1) - mid * mid
            self._deltas[n] = got
        return got

    def delta_eval(self, n: int, x) -> Fraction:
        """Pointwise log-convexity gap via cached members (cheaper than the product)."""
        if n < 2:
            raise ValueError(f"log-convexity gap needs n >= 2, got {n}")
        return self.eval_exact(n - 1, x) * self.eval_exact(n + 1, x) - self.eval_exact(n, x) ** 2

    def growth_poly(self, n: int) -> Poly:
        """Certificate polynomial sum(mu(n/m)*(m-n)*x^m over m | n).

        Equals n*theta(M) - n^2*M, i.e. n*x^(n+1) times the derivative of
        M/x^n; strict positivity on (1, inf) certifies that the normalized
        member grows there.  The identity is asserted on construction.
        """
        terms = {}
        for m in divisors(n):
            mu = moebius(n // m)
            if mu and m != n:
                terms[m] = mu * (m - n)
        out = Poly.from_terms(terms)
        if out != self.theta_poly(n) * n - self.poly(n) * (n * n):
            raise AssertionError(f"growth certificate at n={n} disagrees with its derivative form")
        return out

    def verify_product_rule(self, n: int) -> ScanReport:
        """Check the two-variable expansion of M(x*y) over lcm pairs.

        Grid evaluation on (n+1) x (n+1) distinct integer abscissae is a
        complete identity check for bidegree at most (n, n); the report
        carries the first failing pair if any.
        """
        if n < 1:
            raise ValueError(f"necklace index must be positive, got {n}")
        pairs = lcm_divisor_pairs(n)
        xs = range(1, n + 2)
        ys = range(n + 2, 2 * n + 3)
        divs = divisors(n)
        at_x = {i: {x: necklace_eval_int(i, x) for x in xs} for i in divs}
        at_y = {j: {y: necklace_eval_int(j, y) for y in ys} for j in divs}
        b = ReportBuilder("product-rule", f"n={n}, grid x in [1,{n + 1}], y in [{n + 2},{2 * n + 2}]")
        for x in xs:
            for y in ys:
                lhs = necklace_eval_int(n, x * y)
                rhs = sum(g * at_x[i][x] * at_y[j][y] for i, j, g in pairs)
                if not b.check(
                    lhs == rhs,
                    f"n={n}, x={x}, y={y}",
                    "M_n(x*y) == sum(gcd(i,j)*M_i(x)*M_j(y) over lcm(i,j)=n)",
                    f"{lhs} != {rhs}",
                ):
                    return b.build()
        return b.build()

    def verify_bracket_product_rule(self, n: int, k: int) -> ScanReport:
        """Same grid check for the bracket variant x^k*f^(k) in the first slot."""
        if n < 1 or k < 0:
            raise ValueError(f"need n >= 1 and k >= 0, got ({n}, {k})")
        pairs = lcm_divisor_pairs(n)
        xs = range(1, n + 2)
        ys = range(n + 2, 2 * n + 3)
        divs = divisors(n)
        br = {i: self.bracket_poly(i, k) for i in divs}
        at_x = {i: {x: br[i](x) for x in xs} for i in divs}
        at_y = {j: {y: necklace_eval_int(j, y) for y in ys} for j in divs}
        b = ReportBuilder(
            "bracket-product-rule", f"n={n}, k={k}, grid x in [1,{n + 1}], y in [{n + 2},{2 * n + 2}]"
        )
        bn = br[n]
        for x in xs:
            for y in ys:
                lhs = bn(x * y)
                rhs = sum(g * at_x[i][x] * at_y[j][y] for i, j, g in pairs)
                if not b.check(
                    lhs == rhs,
                    f"n={n}, k={k}, x={x}, y={y}",
                    "bracket_n(x*y) == sum(gcd(i,j)*bracket_i(x)*M_j(y) over lcm(i,j)=n)",
                    f"{lhs} != {rhs}",
                ):
                    return b.build()
        return b.build()

    def verify_moebius_inversion(self, n: int, x) -> bool:
        """True iff sum(d * M_d(x) for d | n) equals x^n exactly."""
        x = Fraction(x)
        return sum(d * self.eval_exact(d, x) for d in divisors(n)) == x**n


def geometric_gap_poly(n: int) -> Poly:
    """The polynomial 1 + (x-2)*(1 + x + ... + x^(n-1)).

    This is x^n minus the full geometric tail below it; the closed form
    is asserted via (x-1)*(x^n - g) == x^n - 1.  Its value at 2 is 1 for
    every n, which anchors the shift-monotonicity argument.
    """
    if n < 1:
        raise ValueError(f"index must be positive, got {n}")
    g = Poly([1]) + Poly([-2, 1]) * Poly([1] * n)
    if Poly([-1, 1]) * (Poly.monomial(n) - g) != Poly.monomial(n) - Poly([1]):
        raise AssertionError(f"geometric gap at n={n} fails its closed-form identity")
    return g


# The factored forms of the log-convexity gaps for n = 2..7, kept as
# (scale, ((factor coefficients, multiplicity), ...)).  Note the
# multiplicity 2 on (x - 1) at n = 3: deg(delta_3) = 6 forces it.
_DELTA_FACTORED: dict[int, tuple[Fraction, tuple[tuple[tuple[int, ...], int], ...]]] = {
    2: (Fraction(1, 12), (((0, 0, 1), 1), ((-1, 1), 1), ((7, 1), 1))),
    3: (Fraction(1, 72), (((0, 0, 1), 1), ((-1, 1), 2), ((1, 1), 1), ((-8, 1), 1))),
    4: (Fraction(1, 240), (((0, 0, 1), 1), ((-1, 1), 2), ((1, 1), 2), ((16, 0, 1), 1))),
    5: (
        Fraction(1, 600),
        (((0, 0, 1), 1), ((-1, 1), 2), ((1, 1), 2), ((-24, -25, -23, 0, 1), 1)),
    ),
    6: (
        Fraction(1, 1260),
        (((0, 0, 1), 1), ((-1, 1), 2), ((1, 1), 2), ((1, 70, 37, 70, 2, 0, 1), 1)),
    ),
    7: (
        Fraction(1, 2352),
        (((0, 0, 1), 1), ((-1, 1), 2), ((1, 1), 2), ((-48, 0, -96, -49, -95, -49, 2, 0, 1), 1)),
    ),
}


def delta_factored(n: int) -> Poly:
    """The known factored form of the log-convexity gap, expanded; n in 2..7."""
    if n not in _DELTA_FACTORED:
        raise ValueError(f"no recorded factorization for n={n} (have 2..7)")
    scale, factors = _DELTA_FACTORED[n]
    out = Poly([scale])
    for coeffs, mult in factors:
        out = out * Poly(coeffs) ** mult
    return out


_shared_family = NecklaceFamily()


def shared_family() -> NecklaceFamily:
    return _shared_family


def necklace_poly(n: int) -> Poly:
    return _shared_family.poly(n)


def necklace_eval_exact(n: int, x) -> Fraction:
    return _shared_family.eval_exact(n, x)


def theta_poly(n: int) -> Poly:
    return _shared_family.theta_poly(n)


def bracket_poly(n: int, k: int) -> Poly:
    return _shared_family.bracket_poly(n, k)


def error_poly(n: int) -> Poly:
    return _shared_family.error_poly(n)


def delta_poly(n: int) -> Poly:
    return _shared_family.delta_poly(n)


def growth_poly(n: int) -> Poly:
    return _shared_family.growth_poly(n)


def verify_product_rule(n: int) -> ScanReport:
    return _shared_family.verify_product_rule(n)


def verify_bracket_product_rule(n: int, k: int) -> ScanReport:
    return _shared_family.verify_bracket_product_rule(n, k)


def verify_moebius_inversion(n: int, x) -> bool:
    return _shared_family.verify_moebius_inversion(n, x)
