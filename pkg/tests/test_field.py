from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numerosity.field import (
    ALPHA,
    NEG_INFINITY,
    ONE,
    POS_INFINITY,
    ZERO,
    FieldElement,
    ParseError,
    Shadow,
    compare,
    parse_element,
    shadow,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def polys(max_degree=3):
    return st.lists(rationals, min_size=0, max_size=max_degree + 1)


@st.composite
def elements(draw, max_degree=3):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree).filter(lambda cs: any(c != 0 for c in cs)))
    return FieldElement(num, den)


@st.composite
def finite_elements(draw):
    x = draw(elements())
    return x if x.is_finite() else x.inverse() if not x.is_zero() else ZERO


class TestArithmetic:
    def test_additive_cancellation(self):
        assert (ALPHA + 1) + (-ALPHA) == ONE

    def test_like_term_addition(self):
        assert 1 / ALPHA + 1 / ALPHA == 2 / ALPHA

    def test_multiplicative_inverse(self):
        assert ALPHA * (1 / ALPHA) == ONE

    def test_polynomial_identity(self):
        assert (ALPHA + 1) * (ALPHA - 1) == ALPHA ** 2 - 1

    def test_self_division(self):
        assert ALPHA / ALPHA == ONE

    def test_division_canonical(self):
        q = (2 * ALPHA + 3) / ALPHA
        assert q * ALPHA == 2 * ALPHA + 3

    def test_reciprocal_of_unit_is_infinitesimal(self):
        assert (1 / ALPHA).is_infinitesimal()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ALPHA / ZERO
        with pytest.raises(ZeroDivisionError):
            ONE / (ALPHA - ALPHA)

    @given(elements())
    def test_identity_cases(self, x):
        assert ZERO + x == x
        assert ZERO * x == ZERO
        assert ONE * x == x

    @given(elements(), elements())
    @settings(max_examples=60)
    def test_commutativity(self, x, y):
        assert x + y == y + x
        assert x * y == y * x

    @given(elements(max_degree=2), elements(max_degree=2), elements(max_degree=2))
    @settings(max_examples=40)
    def test_associativity_distributivity(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(elements())
    def test_inverses(self, x):
        assert x + (-x) == ZERO
        if not x.is_zero():
            assert x * x.inverse() == ONE


class TestOrder:
    def test_unit_is_infinite(self):
        assert ALPHA.compare(10 ** 9) > 0
        assert ALPHA > 10 ** 9
        assert not ALPHA.is_finite()
        assert ALPHA.is_infinite()

    @pytest.mark.parametrize("n", [1, 2, 3, 10, 1000])
    def test_infinitesimal_below_every_reciprocal(self, n):
        eps = 1 / ALPHA
        assert eps < Fraction(1, n)
        assert -Fraction(1, n) < eps

    def test_subtraction_strictly_decreases(self):
        assert ALPHA - 1 < ALPHA

    def test_rationals_are_finite(self):
        for q in (0, 1, Fraction(-7, 3), 10 ** 12):
            assert not FieldElement.from_rational(q).is_infinite()

    @given(elements(), elements())
    @settings(max_examples=60)
    def test_antisymmetry(self, x, y):
        assert x.compare(y) == -y.compare(x)
        assert (x.compare(y) == 0) == (x == y)

    @given(elements(max_degree=2), elements(max_degree=2), elements(max_degree=2))
    @settings(max_examples=40)
    def test_transitivity(self, x, y, z):
        lo, mid, hi = sorted([x, y, z])
        assert lo <= mid <= hi
        assert lo <= hi

    @given(elements(), elements(), elements())
    @settings(max_examples=40)
    def test_translation_invariance(self, x, y, z):
        if x < y:
            assert x + z < y + z

    @given(elements(), elements(), elements())
    @settings(max_examples=40)
    def test_positive_scaling(self, x, y, z):
        if x < y and z > ZERO:
            assert x * z < y * z

    def test_equal_iff_identical_representation(self):
        a = FieldElement((2, 2), (2,))
        b = ALPHA + 1
        assert a == b
        assert (a.num, a.den) == (b.num, b.den)


class TestShadow:
    def test_leading_coefficient_ratio(self):
        assert shadow((2 * ALPHA + 3) / ALPHA) == Shadow(2)

    def test_infinite_shadows(self):
        assert shadow(ALPHA ** 2 / ALPHA) == POS_INFINITY
        assert shadow(-ALPHA) == NEG_INFINITY

    def test_rational_fixed_point(self):
        assert shadow(FieldElement.from_rational(Fraction(5, 7))) == Fraction(5, 7)

    def test_trichotomy_flags(self):
        assert (1 / ALPHA).is_infinitesimal()
        assert ZERO.is_infinitesimal()
        assert not ALPHA.is_finite()
        assert ALPHA.classify() == "infinite"
        assert (1 / ALPHA).classify() == "infinitesimal"
        assert ONE.classify() == "finite"

    @given(finite_elements(), finite_elements())
    @settings(max_examples=60)
    def test_homomorphism(self, x, y):
        assert shadow(x + y).value == shadow(x).value + shadow(y).value
        assert shadow(x * y).value == shadow(x).value * shadow(y).value

    @given(finite_elements())
    def test_shadow_difference_is_infinitesimal(self, x):
        assert (x - shadow(x).value).is_infinitesimal()

    def test_shadow_type(self):
        s = shadow(ONE / 2)
        assert s.is_finite and s.value == Fraction(1, 2)
        assert not POS_INFINITY.is_finite
        with pytest.raises(ValueError):
            Shadow(None, 0)


class TestParsePrint:
    def test_documented_form(self):
        x = parse_element("(2*a^2 + 3)/(a + 1)")
        assert x == (2 * ALPHA ** 2 + 3) / (ALPHA + 1)
        assert str(x) == "(2*a^2 + 3)/(a + 1)"

    def test_fractional_coefficients(self):
        x = parse_element("(3/4)*a + 1")
        assert x == Fraction(3, 4) * ALPHA + 1
        assert str(x) == "(3/4)*a + 1"

    @given(elements())
    @settings(max_examples=80)
    def test_round_trip(self, x):
        assert parse_element(str(x)) == x

    def test_expression_arithmetic(self):
        assert parse_element("a*(a - 1) + a") == ALPHA ** 2
        assert parse_element("1/a^2") == ALPHA ** -2
        assert parse_element("-a + 1/2") == -ALPHA + Fraction(1, 2)

    @pytest.mark.parametrize("bad", ["", "a +", "b", "2**a", "(a", "1//2", "a^x"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_element(bad)

    def test_compare_type_error(self):
        with pytest.raises(TypeError):
            ALPHA.compare("not a number")
        assert compare(ALPHA, ALPHA) == 0
