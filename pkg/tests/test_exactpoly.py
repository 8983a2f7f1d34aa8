"""Polynomial substrate: exact ring arithmetic and the operators on it."""
import random
from fractions import Fraction

import pytest

from necklaces.exactpoly import ONE, Poly, X, parse_rational


def random_rational(rng, span=40, max_den=12):
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_poly(rng, max_degree=8):
    degree = rng.randint(0, max_degree)
    return Poly([random_rational(rng) for _ in range(degree + 1)])


class TestConstruction:
    def test_trailing_zeros_stripped(self):
        assert Poly([1, 2, 0, 0]).coefficients == (1, 2)

    def test_zero_polynomial(self):
        z = Poly([0, 0])
        assert z.is_zero and z.degree == -1 and not z

    def test_from_terms(self):
        p = Poly.from_terms({3: Fraction(1, 2), 0: -1})
        assert p.coefficients == (-1, 0, 0, Fraction(1, 2))

    def test_monomial(self):
        assert Poly.monomial(3) == Poly([0, 0, 0, 1])
        assert Poly.monomial(2, 0).is_zero

    def test_degree_is_length_minus_one(self):
        assert Poly([5]).degree == 0
        assert X.degree == 1


class TestArithmetic:
    def test_add_cancels(self):
        assert Poly([0, -1, 1]) + X == Poly([0, 0, 1])

    def test_additive_identity(self):
        f = Poly([3, 0, 7])
        assert Poly() + f == f

    def test_cancellation_renormalizes(self):
        f = Poly.monomial(3)
        assert (f + (-f)).is_zero

    def test_product_of_linear_factors(self):
        assert Poly([-1, 1]) * Poly([1, 1]) == Poly([-1, 0, 1])

    def test_multiplicative_identity(self):
        f = Poly([Fraction(2, 3), 0, 5])
        assert f * ONE == f

    def test_half_square(self):
        # ((x^2 - x)/2)^2 = (x^4 - 2x^3 + x^2)/4, by hand expansion
        f = Poly([0, Fraction(-1, 2), Fraction(1, 2)])
        assert f * f == Poly([0, 0, Fraction(1, 4), Fraction(-1, 2), Fraction(1, 4)])

    def test_degree_additivity(self):
        rng = random.Random(11)
        for _ in range(50):
            f, g = random_poly(rng), random_poly(rng)
            if f.is_zero or g.is_zero:
                continue
            assert (f * g).degree == f.degree + g.degree

    def test_pow(self):
        assert (X + ONE) ** 2 == Poly([1, 2, 1])
        assert (X**0) == ONE

    def test_ring_homomorphism_under_evaluation(self):
        rng = random.Random(7)
        for _ in range(60):
            f, g = random_poly(rng), random_poly(rng)
            x = random_rational(rng)
            assert (f * g)(x) == f(x) * g(x)
            assert (f + g)(x) == f(x) + g(x)


class TestEvaluation:
    def test_root(self):
        assert Poly([-1, 0, 1])(1) == 0

    def test_identity_polynomial(self):
        assert X(Fraction(7, 2)) == Fraction(7, 2)

    def test_cubic_over_three(self):
        f = Poly([0, Fraction(-1, 3), 0, Fraction(1, 3)])  # (x^3 - x)/3
        assert f(2) == 2

    def test_matches_naive_horner(self):
        rng = random.Random(3)
        for _ in range(40):
            f = random_poly(rng)
            x = random_rational(rng)
            naive = Fraction(0)
            for c in reversed(f.coefficients):
                naive = naive * x + c
            assert f(x) == naive


class TestOperators:
    def test_derivative_of_constant(self):
        assert Poly([5]).derivative().is_zero

    def test_derivative_basic(self):
        assert Poly([0, -1, 1]).derivative() == Poly([-1, 2])

    def test_derivative_term_by_term(self):
        # (x^4 - x^2)/4 -> x^3 - x/2
        f = Poly([0, 0, Fraction(-1, 4), 0, Fraction(1, 4)])
        assert f.derivative() == Poly([0, Fraction(-1, 2), 0, 1])

    def test_higher_derivative_matches_iteration(self):
        rng = random.Random(5)
        for _ in range(30):
            f = random_poly(rng)
            it = f
            for order in range(4):
                assert f.derivative(order) == it
                it = it.derivative()

    def test_theta_fixes_x(self):
        assert X.theta() == X

    def test_theta_kills_constants(self):
        assert Poly([9]).theta().is_zero

    def test_theta_on_half_difference(self):
        # (x^2 - x)/2 -> x^2 - x/2
        f = Poly([0, Fraction(-1, 2), Fraction(1, 2)])
        assert f.theta() == Poly([0, Fraction(-1, 2), 1])

    def test_theta_equals_x_times_derivative(self):
        rng = random.Random(13)
        for _ in range(30):
            f = random_poly(rng, max_degree=20)
            assert f.theta() == X * f.derivative()

    def test_substitute_power_basic(self):
        assert X.substitute_power(3) == Poly.monomial(3)
        assert Poly([0, -1, 1]).substitute_power(2) == Poly([0, 0, -1, 0, 1])

    def test_substitute_power_on_half_difference(self):
        # (x^2 - x)/2 at x^3 -> (x^6 - x^3)/2
        f = Poly([0, Fraction(-1, 2), Fraction(1, 2)])
        assert f.substitute_power(3) == Poly.from_terms({6: Fraction(1, 2), 3: Fraction(-1, 2)})

    def test_substitute_power_identity(self):
        rng = random.Random(17)
        for _ in range(20):
            f = random_poly(rng)
            assert f.substitute_power(1) == f

    def test_substitute_power_agrees_with_evaluation(self):
        rng = random.Random(19)
        for _ in range(20):
            f = random_poly(rng)
            x = random_rational(rng)
            assert f.substitute_power(2)(x) == f(x**2)


class TestRationalBasics:
    def test_field_axioms_on_random_triples(self):
        rng = random.Random(23)
        for _ in range(200):
            a, b, c = (random_rational(rng) for _ in range(3))
            assert a + b == b + a and a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_fractions_stay_reduced(self):
        v = Fraction(6, 4)
        assert v.numerator == 3 and v.denominator == 2
        assert Fraction(3, -2).denominator == 2


class TestFloatRejection:
    def test_constructor_refuses_floats(self):
        with pytest.raises(TypeError):
            Poly([0.5])

    def test_evaluation_refuses_floats(self):
        with pytest.raises(TypeError):
            Poly([1, 1])(0.5)


class TestParseRational:
    def test_accepts_fraction_and_integer(self):
        assert parse_rational("5/2") == Fraction(5, 2)
        assert parse_rational("-7") == -7
        assert parse_rational(" 3/9 ") == Fraction(1, 3)

    @pytest.mark.parametrize("bad", ["2.5", "1e3", "x", "3/", "/4", "1/2/3", ""])
    def test_rejects_inexact_or_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestToString:
    def test_readable_output(self):
        f = Poly([Fraction(1, 6), Fraction(-1, 6), 0, 1])
        assert f.to_string() == "x^3 - 1/6*x + 1/6"
        assert Poly().to_string() == "0"
