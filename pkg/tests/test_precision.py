from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from emi.errors import NumeralParseError, PrecisionExceededError
from emi.precision import (
    MIN_PRECISION,
    Rat,
    Real,
    as_rat,
    rat_to_real,
    render_decimal,
    render_rat,
)

from oracles import long_division_digits

small_rats = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=999
)
positive_rats = st.fractions(
    min_value=Fraction(1, 999), max_value=Fraction(1000), max_denominator=999
)


class TestRatToReal:
    def test_repeating_decimal(self):
        r = rat_to_real(Rat(1, 3), 12)
        assert render_decimal(r, 12) == "0.333333333333"

    def test_identity(self):
        r = rat_to_real(Rat(1), 10)
        assert render_decimal(r, 10) == "1.000000000"

    def test_pi_convergent_rounds_down(self):
        # long-division oracle: 355/113 = 3.1415929203..., 11th digit 3 -> no bump
        digits = long_division_digits(Rat(355, 113), 11)
        assert digits == "31415929203"
        r = rat_to_real(Rat(355, 113), 10)
        assert render_decimal(r, 10) == "3.141592920"

    def test_rounds_half_even_up(self):
        # 2/3 = 0.666..., rounding at digit 10 bumps the last digit
        r = rat_to_real(Rat(2, 3), 10)
        assert r.value == Decimal("0.6666666667")

    def test_minimum_precision_enforced(self):
        with pytest.raises(ValueError):
            rat_to_real(Rat(1, 3), 9)

    @given(q=positive_rats, p1=st.integers(10, 30), extra=st.integers(1, 20))
    def test_prefix_stable_across_precisions(self, q, p1, extra):
        # Correct rounding at P can carry through a run of 9s and rewrite
        # earlier digits; exclude exactly those boundary cases, detected
        # from the true expansion.
        p2 = p1 + extra
        true = long_division_digits(q, p2 + 1)
        assume("9" not in true[p1 - 1 : p2 + 1])
        r1 = rat_to_real(q, p1)
        r2 = rat_to_real(q, p2)
        assert render_decimal(r1, p1 - 1) == render_decimal(r2, p1 - 1)

    @given(q=positive_rats, p=st.integers(10, 40))
    def test_conversion_within_one_ulp(self, q, p):
        r = rat_to_real(q, p)
        got = Fraction(str(r.value))
        # scale = weight of q's leading significant digit
        scale = Fraction(1)
        lead = q
        while lead >= 10:
            lead /= 10
            scale *= 10
        while lead < 1:
            lead *= 10
            scale /= 10
        assert abs(got - q) <= scale * Fraction(1, 10 ** (p - 1))


class TestRenderDecimal:
    def test_truncates_pi_prefix(self):
        r = Real(Decimal("3.14159265358979"), 15)
        assert render_decimal(r, 7) == "3.141592"

    def test_pads_terminating_value(self):
        assert render_decimal(Real(1, 10), 3) == "1.00"

    def test_truncates_not_rounds(self):
        assert render_decimal(Real(Decimal("0.999999"), 10), 3) == "0.999"

    def test_requesting_too_many_digits_fails(self):
        r = rat_to_real(Rat(1, 3), 12)
        with pytest.raises(PrecisionExceededError):
            render_decimal(r, 13)

    def test_small_magnitude_stays_fixed_point(self):
        assert render_decimal(Real(Decimal("0.001234"), 10), 3) == "0.00123"

    def test_large_magnitude_stays_fixed_point(self):
        assert render_decimal(Real(Decimal("9999.5"), 10), 5) == "9999.5"
        assert render_decimal(Real(Decimal("1234.5"), 10), 3) == "1230"

    def test_out_of_range_uses_scientific(self):
        assert render_decimal(Real(Decimal("12345678"), 10), 3) == "1.23e7"
        assert render_decimal(Real(Decimal("0.000083301"), 10), 3) == "8.33e-5"

    def test_zero(self):
        assert render_decimal(Real(0, 10), 5) == "0"

    def test_negative(self):
        assert render_decimal(Real(Decimal("-2.5"), 10), 2) == "-2.5"

    @given(q=positive_rats, p=st.integers(10, 30), d=st.integers(1, 9))
    def test_never_rounds_up(self, q, p, d):
        # the rendered string is always a prefix of the longer rendering
        r = rat_to_real(q, p)
        full = render_decimal(r, p).replace(".", "").lstrip("0")
        short = render_decimal(r, d).replace(".", "").lstrip("0")
        trimmed = short.rstrip("0")
        assert full.startswith(trimmed)


class TestRenderRat:
    def test_terminating_expansion_stops_early(self):
        assert render_rat(Rat(16, 5), 50) == "3.2"

    def test_nonterminating_truncates(self):
        assert render_rat(Rat(1, 3), 5) == "0.33333"
        assert render_rat(Rat(355, 113), 11) == "3.1415929203"

    def test_integer(self):
        assert render_rat(Rat(4), 10) == "4"

    def test_negative(self):
        assert render_rat(Rat(-1, 8), 3) == "-0.125"

    def test_leading_zeros_not_significant(self):
        assert render_rat(Rat(1, 300), 3) == "0.00333"


class TestRatFieldAxioms:
    @given(a=small_rats, b=small_rats, c=small_rats)
    def test_associativity_and_distributivity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c

    @given(a=small_rats, b=small_rats)
    def test_division_inverts_multiplication(self, a, b):
        assume(b != 0)
        assert (a / b) * b == a

    @given(a=small_rats)
    def test_normalized_representation(self, a):
        import math

        assert a.denominator > 0
        assert math.gcd(abs(a.numerator), a.denominator) == 1


class TestReal:
    def test_immutable(self):
        r = Real(1, 10)
        with pytest.raises(AttributeError):
            r.precision = 20

    def test_minimum_precision(self):
        with pytest.raises(ValueError):
            Real(1, MIN_PRECISION - 1)

    def test_mixed_precision_takes_smaller(self):
        a = Real(Decimal("1.5"), 30)
        b = Real(Decimal("2.5"), 20)
        assert (a + b).precision == 20

    def test_int_operands_are_exact(self):
        a = rat_to_real(Rat(1, 3), 25)
        assert (3 * a).precision == 25
        assert (a - 0).value == a.value

    def test_negation_keeps_all_digits(self):
        # unary minus on raw Decimal rounds to the thread context; Real must not
        a = rat_to_real(Rat(2, 3), 40)
        assert (-a).value == a.value.copy_negate()
        assert abs(-a).value == a.value

    @given(a=positive_rats, b=positive_rats, p=st.integers(15, 35))
    @settings(max_examples=50)
    def test_each_operation_accurate_to_one_ulp(self, a, b, p):
        # accuracy is judged against the exact result on the operation's own
        # (already rounded) operands; cancellation of earlier rounding is
        # the caller's problem, not the operation's
        ra, rb = rat_to_real(a, p), rat_to_real(b, p)
        ea, eb = Fraction(str(ra.value)), Fraction(str(rb.value))
        for got, true in [
            (ra + rb, ea + eb),
            (ra - rb, ea - eb),
            (ra * rb, ea * eb),
            (ra / rb, ea / eb),
        ]:
            if true == 0:
                assert got.value == 0
                continue
            err = abs(Fraction(str(got.value)) - true)
            ulp = Fraction(10) ** (got.value.adjusted() - p + 1)
            assert err <= ulp


class TestAsRat:
    def test_fraction_string(self):
        assert as_rat("3/4") == Rat(3, 4)

    def test_decimal_string(self):
        assert as_rat("0.25") == Rat(1, 4)

    def test_int(self):
        assert as_rat(7) == Rat(7)

    @pytest.mark.parametrize("bad", ["abc", "1/0", "1//2", ""])
    def test_rejects_garbage(self, bad):
        with pytest.raises(NumeralParseError):
            as_rat(bad)
