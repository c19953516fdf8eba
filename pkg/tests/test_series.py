from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchinv.errors import InsufficientTruncation, ParseError
from branchinv.series import (
    INF,
    TruncatedSeries,
    parse_poly,
    parse_series,
    series_derivative,
    series_mul,
    valuation,
)


def conv_oracle(a: dict, b: dict) -> dict:
    """Schoolbook convolution, independent of TruncatedSeries internals."""
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


class TestValuation:
    def test_polynomial(self):
        assert valuation(parse_series("t^8+t^9").derivative()) == 7

    def test_zero_series_is_infinite(self):
        assert valuation(TruncatedSeries.zero(10)) == INF
        assert valuation(TruncatedSeries.zero()) == INF

    def test_laurent_leading_term(self):
        f = TruncatedSeries.from_terms({-3: Fraction(1), 1: Fraction(1)})
        assert valuation(f) == -3

    def test_normalization_strips_leading_zeros(self):
        f = TruncatedSeries(0, (Fraction(0), Fraction(0), Fraction(5)), 10)
        assert f.offset == 2 and f.valuation() == 2


class TestArithmetic:
    def test_monomial_product(self):
        assert (parse_series("t^2") * parse_series("t^3")).terms() == {5: Fraction(1)}

    def test_difference_of_squares_respects_truncation(self):
        f = parse_series("1+t", truncation=4)
        g = parse_series("1-t", truncation=4)
        h = f * g
        assert h.terms() == {0: Fraction(1), 2: Fraction(-1)}
        assert h.truncation == 4

    def test_square_against_convolution_oracle(self):
        f = parse_series("t^4+t^5")
        expected = conv_oracle(f.terms(), f.terms())
        assert (f * f).terms() == expected
        assert expected == {8: Fraction(1), 9: Fraction(2), 10: Fraction(1)}

    def test_product_truncation_rule(self):
        # truncation of f*g is min(N_f + v(g), N_g + v(f))
        f = TruncatedSeries.from_terms({2: Fraction(1)}, truncation=6)
        g = TruncatedSeries.from_terms({3: Fraction(1)}, truncation=5)
        assert (f * g).truncation == min(6 + 3, 5 + 2)

    def test_unknown_coefficient_raises(self):
        f = parse_series("t", truncation=4)
        with pytest.raises(InsufficientTruncation):
            f.coefficient(4)
        assert f.coefficient(3) == 0

    def test_scalar_and_shift(self):
        f = parse_series("t^2+t^3")
        assert (f * Fraction(1, 2)).terms() == {2: Fraction(1, 2), 3: Fraction(1, 2)}
        assert f.shift(-2).terms() == {0: Fraction(1), 1: Fraction(1)}


class TestDerivative:
    def test_known_values(self):
        assert series_derivative(parse_series("t^8+t^9")).terms() == {
            7: Fraction(8), 8: Fraction(9)}
        assert series_derivative(parse_series("t^4+t^5")).terms() == {
            3: Fraction(4), 4: Fraction(5)}

    def test_constant(self):
        assert series_derivative(parse_series("1")).is_zero()

    def test_truncation_drops(self):
        f = parse_series("t^2", truncation=9)
        assert f.derivative().truncation == 8


small_polys = st.dictionaries(
    st.integers(min_value=0, max_value=8),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=4,
).map(lambda d: TruncatedSeries.from_terms(d))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_valuations_add_under_product(f, g):
    p = series_mul(f, g)
    if f.is_zero() or g.is_zero():
        assert p.is_zero()
    else:
        assert p.valuation() == f.valuation() + g.valuation()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_product_matches_convolution_oracle(f, g):
    assert series_mul(f, g).terms() == conv_oracle(f.terms(), g.terms())


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_derivative_product_rule(f, g):
    lhs = (f * g).derivative()
    rhs = f.derivative() * g + f * g.derivative()
    assert lhs.terms() == rhs.terms()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_derivative_is_linear(f, g):
    assert (f + g).derivative().terms() == (f.derivative() + g.derivative()).terms()


class TestParser:
    def test_known_expansion(self):
        assert parse_poly("64*t^10 - 81*t^12").expand() == {
            10: Fraction(64), 12: Fraction(-81)}

    def test_identity(self):
        assert parse_poly("t").expand() == {1: Fraction(1)}

    def test_power_expansion_oracle(self):
        # (t^2+1)^2 expanded by the convolution oracle
        base = {0: Fraction(1), 2: Fraction(1)}
        assert parse_poly("(t^2+1)^2").expand() == conv_oracle(base, base)

    def test_rational_literals(self):
        assert parse_poly("1/2*t + 3").expand() == {0: Fraction(3), 1: Fraction(1, 2)}

    def test_leading_minus(self):
        assert parse_poly("-t^2+t^3").expand() == {2: Fraction(-1), 3: Fraction(1)}

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("2t")

    def test_unknown_variable_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("x^2")

    def test_non_integer_exponent_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("t^(1/2)")
        with pytest.raises(ParseError):
            parse_poly("t^1/2")

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("t^2 + x")
        assert exc.value.position == 6

    def test_roundtrip_through_canonical_printer(self):
        for text in ("t^8+t^9", "64*t^10 - 81*t^12", "(t^2+1)^2", "1/2*t - 7", "-t + t^4"):
            expr = parse_poly(text)
            assert parse_poly(str(expr)).expand() == expr.expand()
