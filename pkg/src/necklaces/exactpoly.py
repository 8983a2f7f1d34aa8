"""Dense univariate polynomials over exact rationals.

Coefficients are ``fractions.Fraction`` end to end; there is no floating
point anywhere in the core, so exact equalities (roots, cancellations)
are decidable.  Dense storage keeps one representation for both the
sparse divisor-sum polynomials and their dense products.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer literal; decimal input is rejected."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ValueError(f"not an exact rational (use p/q or an integer): {token!r}")
    return Fraction(token)


def _no_floats(value):
    # floats would silently poison exactness; refuse them at the boundary
    if isinstance(value, float):
        raise TypeError(f"exact arithmetic only: got float {value!r}")
    return value


class Poly:
    """Immutable dense polynomial; index i holds the x^i coefficient.

    The stored tuple never has trailing zeros, so the zero polynomial is
    the empty tuple and ``degree`` is -1 for it.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(_no_floats(c)) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "Poly":
        if exponent < 0:
            raise ValueError("monomial exponent must be nonnegative")
        c = Fraction(coefficient)
        if not c:
            return cls()
        return cls([0] * exponent + [c])

    @classmethod
    def from_terms(cls, terms: dict) -> "Poly":
        """Build from an {exponent: coefficient} mapping."""
        if not terms:
            return cls()
        cs = [Fraction(0)] * (max(terms) + 1)
        for e, c in terms.items():
            cs[e] = Fraction(c)
        return cls(cs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self._coeffs):
            return self._coeffs[exponent]
        return Fraction(0)

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (exponent, coefficient) pairs, ascending exponent."""
        return [(e, c) for e, c in enumerate(self._coeffs) if c]

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._coeffs])

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly()
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self._coeffs):
                if not a:
                    continue
                for j, b in enumerate(other._coeffs):
                    if b:
                        out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly([1])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Exact evaluation; skips zero coefficients (Horner over exponent gaps)."""
        _no_floats(x)
        nz = self.terms()
        if not nz:
            return Fraction(0)
        acc = Fraction(0)
        prev = None
        for e, c in reversed(nz):
            acc = c if prev is None else acc * x ** (prev - e) + c
            prev = e
        return acc * x**prev if prev else acc

    def derivative(self, order: int = 1) -> "Poly":
        """Formal derivative of the given order."""
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        if order == 0:
            return self
        if self.degree < order:
            return Poly()
        return Poly(
            [self._coeffs[i + order] * math.perm(i + order, order) for i in range(self.degree - order + 1)]
        )

    def theta(self) -> "Poly":
        """Apply x*d/dx: the x^k coefficient maps to k times itself."""
        return Poly([k * c for k, c in enumerate(self._coeffs)])

    def substitute_power(self, power: int) -> "Poly":
        """Return self evaluated at x^power (exponent i maps to i*power)."""
        if power < 1:
            raise ValueError("substitution power must be positive")
        if power == 1 or self.is_zero:
            return self
        cs = [Fraction(0)] * (self.degree * power + 1)
        for e, c in self.terms():
            cs[e * power] = c
        return Poly(cs)

    def to_string(self, var: str = "x") -> str:
        """Human-readable form, highest degree first."""
        if self.is_zero:
            return "0"
        parts = []
        for e, c in reversed(self.terms()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                xe = var if e == 1 else f"{var}^{e}"
                body = xe if mag == 1 else f"{mag}*{xe}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly[{self.to_string()}]"


X = Poly((0, 1))
ONE = Poly((1,))
