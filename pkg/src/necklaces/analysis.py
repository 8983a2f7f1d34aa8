"""Theorem-verification scans over exact rational grids.

A finite grid cannot prove a statement about a real interval, so where
the underlying argument supplies a polynomial certificate (the growth
certificate for the normalized family, the monomial shape of high-order
brackets), the scans check the certificate exactly; grid comparisons are
the sampling harness around it.  Every scan is deterministic, including
witness order, and reports exact rationals only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import Poly
from .necklace import NecklaceFamily, delta_factored, shared_family
from .numtheory import falling_factorial, smallest_prime_factor
from .reports import ReportBuilder, ScanReport


@dataclass(frozen=True)
class RationalGrid:
    """Arithmetic progression of exact rationals plus ad-hoc extra points."""

    start: Fraction
    end: Fraction
    step: Fraction
    extra_points: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "end", Fraction(self.end))
        object.__setattr__(self, "step", Fraction(self.step))
        object.__setattr__(self, "extra_points", tuple(Fraction(p) for p in self.extra_points))
        if self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.start > self.end:
            raise ValueError(f"empty grid: start {self.start} > end {self.end}")

    def points(self) -> list[Fraction]:
        """start, start+step, ... capped at end, union extras; ascending, deduplicated."""
        pts = set(self.extra_points)
        x = self.start
        while x <= self.end:
            pts.add(x)
            x += self.step
        return sorted(pts)

    def describe(self) -> str:
        extras = f" + {len(self.extra_points)} extra" if self.extra_points else ""
        return f"[{self.start}, {self.end}] step {self.step}{extras}"


def default_grid() -> RationalGrid:
    """Step 1/16 on [1, 10] with probes hugging the thresholds at 1 and 8."""
    return RationalGrid(
        Fraction(1),
        Fraction(10),
        Fraction(1, 16),
        (
            Fraction(1) + Fraction(1, 1024),
            Fraction(8) - Fraction(1, 1024),
            Fraction(8),
            Fraction(8) + Fraction(1, 1024),
        ),
    )


class ProbeExhausted(Exception):
    """A probe ran out of depth without finding its witness: a falsification candidate."""

    def __init__(self, message: str, deepest: Fraction):
        super().__init__(message)
        self.deepest = deepest


def scan_positive(n_range: tuple[int, int], grid: RationalGrid, family: NecklaceFamily | None = None) -> ScanReport:
    """Strict positivity of the family on grid points above 1.

    The value at 1 vanishes for n >= 2, so points <= 1 are excluded from
    the strict claim.
    """
    family = family or shared_family()
    pts = [x for x in grid.points() if x > 1]
    lo, hi = n_range
    b = ReportBuilder("positive", f"n in [{lo}, {hi}], grid {grid.describe()} restricted to x > 1")
    for n in range(lo, hi + 1):
        for x in pts:
            v = family.eval_exact(n, x)
            b.check(v > 0, f"n={n}, x={x}", "M_n(x) > 0 for x > 1", str(v))
    return b.build()


def scan_normalized_increasing(
    n_range: tuple[int, int], grid: RationalGrid, family: NecklaceFamily | None = None
) -> ScanReport:
    """Growth of M_n(x)/x^n across the grid plus its polynomial certificate.

    Two required sub-checks per n: (a) the normalized values strictly
    increase over consecutive grid points (non-strict where the left
    point is exactly 1), and (b) the growth certificate polynomial is
    strictly positive at every grid point above 1.  Since (b) certifies
    a positive derivative on (1, inf), (b) passing while (a) fails is an
    internal contradiction and is flagged as such.
    """
    family = family or shared_family()
    if grid.start < 1:
        raise ValueError("normalized-growth scan needs grid.start >= 1")
    pts = [x for x in grid.points() if x >= 1]
    lo, hi = n_range
    b = ReportBuilder("normalized-increasing", f"n in [{lo}, {hi}], grid {grid.describe()}")
    for n in range(lo, hi + 1):
        vals = [family.eval_exact(n, x) / x**n for x in pts]
        a_ok = True
        for (x1, v1), (x2, v2) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
            if x1 == 1:
                ok = b.check(v2 >= v1, f"n={n}, pair ({x1}, {x2})", "ratio non-decreasing from x=1", f"{v1} !<= {v2}")
            else:
                ok = b.check(v2 > v1, f"n={n}, pair ({x1}, {x2})", "M_n/x^n strictly increasing", f"{v1} !< {v2}")
            a_ok = a_ok and ok
        cert = family.growth_poly(n)
        cert_ok = True
        for x in pts:
            if x > 1:
                v = cert(x)
                cert_ok = b.check(v > 0, f"n={n}, x={x}", "growth certificate > 0 for x > 1", str(v)) and cert_ok
        if cert_ok and not a_ok:
            b.check(
                False,
                f"n={n}",
                "certificate positive implies grid growth",
                "internal contradiction: certificate passed but grid comparison failed",
            )
    return b.build()


def scan_bracket_normalized(
    n: int, k: int, grid: RationalGrid, family: NecklaceFamily | None = None
) -> ScanReport:
    """Constant-vs-growing dichotomy of the normalized bracket of order k.

    With p the smallest prime of n: for k > n/p the bracket divided by
    x^n is the constant (n)_k / n, checked as an exact monomial identity;
    for k <= n/p it strictly increases across grid points above 1.  The
    derivative form f^(k)(x)/x^(n-k) is evaluated independently and must
    agree with the bracket route at every point.
    """
    family = family or shared_family()
    if n < 2 or k < 0:
        raise ValueError(f"need n >= 2 and k >= 0, got ({n}, {k})")
    if grid.start < 1:
        raise ValueError("bracket scan needs grid.start >= 1")
    p = smallest_prime_factor(n)
    br = family.bracket_poly(n, k)
    b = ReportBuilder(
        "bracket-normalized",
        f"n={n}, k={k}, smallest prime {p}, grid {grid.describe()}",
    )
    if k * p > n:
        expected = Poly.monomial(n, Fraction(falling_factorial(n, k), n))
        b.check(
            br == expected,
            f"n={n}, k={k}",
            "bracket is the monomial ((n)_k/n) * x^n when k > n/p",
            br.to_string(),
        )
        return b.build()
    der = family.poly(n).derivative(k)
    pts = [x for x in grid.points() if x >= 1]
    prev = None
    for x in pts:
        v = br(x) / x**n
        alt = der(x) / x ** (n - k)
        b.check(alt == v, f"n={n}, k={k}, x={x}", "derivative route equals bracket route", f"{alt} != {v}")
        if prev is not None:
            x1, v1 = prev
            if x1 == 1:
                b.check(v >= v1, f"n={n}, k={k}, pair ({x1}, {x})", "normalized bracket non-decreasing from x=1", f"{v1} !<= {v}")
            else:
                b.check(v > v1, f"n={n}, k={k}, pair ({x1}, {x})", "normalized bracket strictly increasing", f"{v1} !< {v}")
        prev = (x, v)
    return b.build()


def scan_derivative_positive(
    n_range: tuple[int, int],
    k_range: tuple[int, int],
    grid: RationalGrid,
    family: NecklaceFamily | None = None,
) -> ScanReport:
    """Strict positivity of derivatives of order 1..n on grid points >= 1."""
    family = family or shared_family()
    if grid.start < 1:
        raise ValueError("derivative scan needs grid.start >= 1")
    pts = [x for x in grid.points() if x >= 1]
    n_lo, n_hi = n_range
    k_lo, k_hi = k_range
    b = ReportBuilder(
        "derivative-positive",
        f"n in [{n_lo}, {n_hi}], k in [{max(1, k_lo)}, min(n, {k_hi})], grid {grid.describe()}",
    )
    for n in range(n_lo, n_hi + 1):
        for k in range(max(1, k_lo), min(n, k_hi) + 1):
            der = family.poly(n).derivative(k)
            for x in pts:
                v = der(x)
                b.check(v > 0, f"n={n}, k={k}, x={x}", "k-th derivative > 0 on [1, inf)", str(v))
    return b.build()


def _dominant_poly_increasing(b: ReportBuilder, label: str, f: Poly, pts: list[Fraction]) -> None:
    """Check f and all its proper derivatives strictly increase across the grid."""
    order = 0
    g = f
    while g.degree >= 1:
        prev = None
        for x in pts:
            v = g(x)
            if prev is not None:
                x1, v1 = prev
                b.check(
                    v > v1,
                    f"{label}, order {order}, pair ({x1}, {x})",
                    "dominant-leading-coefficient polynomial increasing on [2, inf)",
                    f"{v1} !< {v}",
                )
            prev = (x, v)
        g = g.derivative()
        order += 1


def scan_shift_and_dominant(
    grid: RationalGrid,
    n_max: int = 40,
    trials: int = 20,
    seed: int = 20260810,
    family: NecklaceFamily | None = None,
) -> ScanReport:
    """Shift growth of the family plus the dominant-coefficient criterion.

    (a) M_n(x+1) >= M_n(x) at every grid point for n <= n_max.
    (b) Polynomials with positive leading coefficient dominating every
        other coefficient in absolute value increase on [2, inf), along
        with all their proper derivatives; checked on the extreme case
        x^n - x^(n-1) - ... - 1 and on seeded random draws.
    """
    family = family or shared_family()
    pts = grid.points()
    if pts[0] < 2:
        raise ValueError("shift/dominant scan needs every grid point >= 2")
    b = ReportBuilder(
        "shift-and-dominant",
        f"n <= {n_max}, grid {grid.describe()}, {trials} random dominant polynomials (seed {seed})",
    )
    for n in range(1, n_max + 1):
        for x in pts:
            lhs = family.eval_exact(n, x + 1)
            rhs = family.eval_exact(n, x)
            b.check(lhs >= rhs, f"n={n}, x={x}", "M_n(x+1) >= M_n(x) for x >= 2", f"{lhs} !>= {rhs}")
    for n in (2, 3, 5, 8, 13):
        worst = Poly([-1] * n + [1])
        _dominant_poly_increasing(b, f"extreme degree {n}", worst, pts)
    rng = random.Random(seed)
    denom = 16
    for t in range(trials):
        n = rng.randint(2, 12)
        lead = Fraction(rng.randint(1, 4 * denom), denom)
        coeffs = [Fraction(rng.randint(-denom, denom), denom) * lead for _ in range(n)]
        f = Poly(coeffs + [lead])
        _dominant_poly_increasing(b, f"random trial {t} degree {n}", f, pts)
    return b.build()


def classify_degree_monotonicity(x, n_max: int, family: NecklaceFamily | None = None) -> ScanReport:
    """Strict growth in the degree, with its known exception set.

    For fixed x >= 2 the values must strictly increase in n except at
    n = 1 when 2 <= x <= 3, where the step is non-increasing with
    equality exactly at x = 3.  Deviations in either direction (missing
    growth, or an exception that fails to occur) are violations.
    """
    family = family or shared_family()
    x = Fraction(x)
    if x < 2:
        raise ValueError(f"degree-monotonicity classification needs x >= 2, got {x}")
    b = ReportBuilder("degree-monotone", f"x={x}, n in [1, {n_max}]; exception expected only at n=1 for 2 <= x <= 3")
    vals = [family.eval_exact(n, x) for n in range(1, n_max + 2)]
    for n in range(1, n_max + 1):
        cur, nxt = vals[n - 1], vals[n]
        if n == 1 and 2 <= x <= 3:
            if x == 3:
                b.check(nxt == cur, f"n=1, x={x}", "equality at the exception boundary x=3", f"{nxt} != {cur}")
            else:
                b.check(nxt < cur, f"n=1, x={x}", "strict drop inside the exception strip 2 <= x < 3", f"{nxt} !< {cur}")
        else:
            b.check(nxt > cur, f"n={n}, x={x}", "M_(n+1)(x) > M_n(x)", f"{nxt} !> {cur}")
    return b.build()


_RATIO_TOLERANCE_NOTE = (
    "tolerance x/(n+1) + 8*x^(1-n/2), derived from the error-part bound "
    "|E_n(x)| <= 2*x^floor(n/2): with a = E_(n+1)/x^(n+1) and b = E_n/x^n, "
    "ratio - x = -x/(n+1) + x*(n/(n+1))*(a-b)/(1+b), and |a|, |b| <= 2*x^(-n/2) <= 1/2 "
    "for x >= 2, n >= 4, so |ratio - x| <= x/(n+1) + 8*x^(1-n/2)"
)


def ratio_limit_check(x, n_max: int, family: NecklaceFamily | None = None) -> ScanReport:
    """Consecutive-value ratios approach x, at an explicitly derived rate.

    Exact rational comparison throughout: the residual against the
    x/(n+1) term is squared to compare with 64*x^2/x^n, avoiding square
    roots at odd n.
    """
    family = family or shared_family()
    x = Fraction(x)
    if x < 2:
        raise ValueError(f"ratio bound derivation needs x >= 2, got {x}")
    if n_max < 8:
        raise ValueError(f"ratio scan needs n_max >= 8, got {n_max}")
    b = ReportBuilder("ratio-limit", f"x={x}, n in [4, {n_max}]; {_RATIO_TOLERANCE_NOTE}")
    for n in range(4, n_max + 1):
        cur = family.eval_exact(n, x)
        nxt = family.eval_exact(n + 1, x)
        if not b.check(cur > 0, f"n={n}, x={x}", "M_n(x) > 0", str(cur)):
            continue
        deviation = abs(nxt / cur - x)
        residual = deviation - x / (n + 1)
        ok = residual <= 0 or residual**2 <= 64 * x**2 / x**n
        b.check(
            ok,
            f"n={n}, x={x}",
            "|ratio - x| <= x/(n+1) + 8*x^(1-n/2)",
            f"deviation {deviation}",
        )
    return b.build()


def scan_log_convexity(
    x_grid: RationalGrid, n_max: int, family: NecklaceFamily | None = None
) -> ScanReport:
    """Least strict-log-convexity threshold per grid point, with sharpness anchors.

    For each grid x, finds the least N <= n_max such that the gap
    M_(n-1)*M_(n+1) - M_n^2 is strictly positive at x for all
    N <= n <= n_max (reported, never fabricated, if none exists).  Grid
    points above 8 must give N = 2.  The anchors delta_3(8) = 0 and
    delta_3(x) < 0 for grid points in (1, 8) pin x = 8 as the strict
    infimum for uniform log-convexity from n = 2.
    """
    family = family or shared_family()
    pts = x_grid.points()
    if pts[0] < 2:
        raise ValueError("log-convexity scan needs every grid point >= 2")
    b = ReportBuilder("log-convexity", f"x grid {x_grid.describe()}, n in [2, {n_max}]")
    b.check(
        family.delta_eval(3, 8) == 0,
        "n=3, x=8",
        "gap at n=3 vanishes exactly at x=8 (sharpness anchor)",
        str(family.delta_eval(3, 8)),
    )
    thresholds = []
    for x in pts:
        gaps = {n: family.delta_eval(n, x) for n in range(2, n_max + 1)}
        threshold = n_max + 1
        for n in range(n_max, 1, -1):
            if gaps[n] > 0:
                threshold = n
            else:
                break
        found = threshold <= n_max
        if not found:
            b.check(False, f"x={x}", f"some N <= {n_max} with gaps positive from N on", "no threshold found")
        thresholds.append((x, threshold if found else None))
        if x > 8:
            b.check(
                threshold == 2,
                f"x={x}",
                "strictly log-convex from n=2 for x > 8",
                f"least threshold {threshold if found else 'none'}",
            )
        if x < 8:
            b.check(gaps[3] < 0, f"x={x}", "gap at n=3 negative below x=8", str(gaps[3]))
    b.note("thresholds " + ", ".join(f"{x}->{t if t is not None else '?'}" for x, t in thresholds))
    return b.build()


def negative_dip_probe(n: int, family: NecklaceFamily | None = None, max_exponent: int = 40) -> Fraction:
    """A rational witness 0 < x < 1 with a strictly negative value at degree n.

    Probes x = 1 - 2^-j for j = 3, 4, ...; existence is guaranteed by the
    vanishing value and positive derivative at x = 1, so exhausting the
    cap signals a falsification candidate and raises.
    """
    family = family or shared_family()
    if n < 2:
        raise ValueError(f"the dip below zero needs n >= 2, got {n}")
    deepest = Fraction(0)
    for j in range(3, max_exponent + 1):
        x = 1 - Fraction(1, 2**j)
        deepest = x
        if family.eval_exact(n, x) < 0:
            return x
    raise ProbeExhausted(
        f"no negative value found for n={n} probing up to x={deepest}", deepest=deepest
    )


def negative_dip_scan(n_range: tuple[int, int], family: NecklaceFamily | None = None) -> ScanReport:
    """Wrap the dip probe over a range of degrees into one report."""
    family = family or shared_family()
    lo, hi = n_range
    b = ReportBuilder("negative-dip", f"n in [{lo}, {hi}], probes x = 1 - 2^-j, j >= 3")
    for n in range(lo, hi + 1):
        try:
            x = negative_dip_probe(n, family)
        except ProbeExhausted as exc:
            b.check(False, f"n={n}", "witness x in (0,1) with M_n(x) < 0", f"none up to {exc.deepest}")
            continue
        v = family.eval_exact(n, x)
        b.check(0 < x < 1 and v < 0, f"n={n}", "witness x in (0,1) with M_n(x) < 0", f"x={x}, value {v}")
    return b.build()


def scan_bounds(
    n_range: tuple[int, int], grid: RationalGrid, family: NecklaceFamily | None = None
) -> ScanReport:
    """Sandwich bounds and error-part size on a grid with x >= 2.

    For n >= 2 and grid x: (x^n - 2*x^floor(n/2))/n < M_n(x) <= x^n/n with
    the upper bound strict, and the error part satisfies deg <= floor(n/2)
    and |E_n(x)| <= 2*x^floor(n/2) (the conservative, n-free form).
    """
    family = family or shared_family()
    pts = grid.points()
    if pts[0] < 2:
        raise ValueError("bounds scan needs every grid point >= 2")
    lo, hi = n_range
    if lo < 2:
        raise ValueError("bounds scan needs n >= 2")
    b = ReportBuilder("bounds", f"n in [{lo}, {hi}], grid {grid.describe()}")
    for n in range(lo, hi + 1):
        err = family.error_poly(n)
        b.check(
            err.degree <= n // 2,
            f"n={n}",
            "error part degree <= floor(n/2)",
            str(err.degree),
        )
        for x in pts:
            v = family.eval_exact(n, x)
            upper = Fraction(x**n, n)
            lower = Fraction(x**n - 2 * x ** (n // 2), n)
            b.check(lower < v, f"n={n}, x={x}", "(x^n - 2x^floor(n/2))/n < M_n(x)", f"{lower} !< {v}")
            b.check(v < upper, f"n={n}, x={x}", "M_n(x) < x^n/n for x >= 2", f"{v} !< {upper}")
            e = err(x)
            b.check(
                abs(e) <= 2 * x ** (n // 2),
                f"n={n}, x={x}",
                "|E_n(x)| <= 2*x^floor(n/2)",
                str(e),
            )
    return b.build()


def verify_delta_factorizations(family: NecklaceFamily | None = None) -> ScanReport:
    """Expand the recorded factored gaps for n = 2..7 and compare exactly.

    Also pins the sharpness anchors: the n=3 gap vanishes at x=8 and is
    negative at x=7.
    """
    family = family or shared_family()
    b = ReportBuilder("delta-factorizations", "n in [2, 7], coefficient-for-coefficient")
    for n in range(2, 8):
        expanded = delta_factored(n)
        actual = family.delta_poly(n)
        b.check(
            actual == expanded,
            f"n={n}",
            "factored form expands to the exact gap polynomial",
            f"{actual!r} != {expanded!r}",
        )
    at8 = family.delta_eval(3, 8)
    b.check(at8 == 0, "n=3, x=8", "gap root at x=8", str(at8))
    at7 = family.delta_eval(3, 7)
    b.check(at7 < 0, "n=3, x=7", "gap negative at x=7", str(at7))
    return b.build()
