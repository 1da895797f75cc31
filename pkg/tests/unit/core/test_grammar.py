"""
Unit tests for closed-form tail formulas (mvnlab.grammar).
"""

import cmath
import math

import pytest

from mvnlab.exceptions import DivergentTail, GrammarOverflow, ParseError
from mvnlab.grammar import MAX_TERMS, Formula, parse_formula


class TestParsing:
    """Test the text form of formulas."""

    def test_index(self):
        """'k' parses to the index formula."""
        assert parse_formula("k") == Formula.index()

    def test_mixed_expression(self):
        """Powers, products and exponentials evaluate as written."""
        f = parse_formula("2*k^2 + exp(-0.5*k)")
        assert f(3) == pytest.approx(18.0 + math.exp(-1.5))

    def test_power_equals_product(self):
        """k^2 and k*k are the same canonical formula."""
        assert parse_formula("k^2") == parse_formula("k*k")

    def test_imaginary_literal(self):
        """'0.5i' is an imaginary constant."""
        f = parse_formula("2 - 0.5i*k")
        assert f(2) == pytest.approx(2.0 - 1.0j)

    def test_full_turn_collapses_to_one(self):
        """exp(2πik) is identically 1 on integers."""
        assert parse_formula("exp(2*pi*i*k)") == Formula.constant(1.0)

    def test_text_round_trip(self):
        """to_text output parses back to the same formula."""
        for text in ("0", "k", "2 - 0.5i*k", "0.25*k^2 + exp(-k)", "3*k*exp(-0.5*k)"):
            f = parse_formula(text)
            assert parse_formula(f.to_text()) == f

    def test_unknown_name_reports_column(self):
        """An unknown identifier is reported at its column."""
        with pytest.raises(ParseError) as exc_info:
            parse_formula("2*q", line=4)
        assert exc_info.value.line == 4
        assert exc_info.value.column == 3

    def test_dangling_operator(self):
        """A trailing '+' is a parse error."""
        with pytest.raises(ParseError):
            parse_formula("k +")

    def test_negative_exponent_rejected(self):
        """Only non-negative integer powers of k are representable."""
        with pytest.raises(ParseError):
            parse_formula("k^-1")

    def test_non_affine_exponential_rejected(self):
        """exp(k^2) has no closed form in the grammar."""
        with pytest.raises(ParseError):
            parse_formula("exp(k^2)")

    def test_empty_formula(self):
        """An empty string is not a formula."""
        with pytest.raises(ParseError):
            parse_formula("   ")


class TestAlgebra:
    """Test the formula operations."""

    def test_like_terms_merge(self):
        """k + k = 2k and k − k = 0."""
        k = Formula.index()
        assert k + k == k * 2.0
        assert (k - k).is_zero

    def test_conjugate_and_parts(self):
        """(2 + 3i)k splits into real part 2k and imaginary part 3k."""
        f = Formula.index() * (2.0 + 3.0j)
        assert f.conjugate() == Formula.index() * (2.0 - 3.0j)
        assert f.real_part() == Formula.index() * 2.0
        assert f.imag_part() == Formula.index() * 3.0

    def test_shift(self):
        """shift(2) of k^2 evaluates to (k + 2)^2."""
        g = parse_formula("k^2").shift(2)
        for k in range(5):
            assert g(k) == pytest.approx((k + 2) ** 2)

    def test_exp_of_affine(self):
        """exp(s·(c₀ + c₁k)) = e^{s c₀}·e^{s c₁ k}."""
        f = parse_formula("0.5 + i*k")
        g = f.exp(2.0)
        assert g(3) == pytest.approx(cmath.exp(2.0 * (0.5 + 3j)))

    def test_exp_of_quadratic_overflows(self):
        """Non-affine formulas cannot be exponentiated."""
        with pytest.raises(GrammarOverflow):
            parse_formula("k^2").exp()

    def test_term_cap(self):
        """More than MAX_TERMS distinct terms overflow the grammar."""
        with pytest.raises(GrammarOverflow):
            Formula.from_terms([(1.0, 0, -0.01 * (j + 1)) for j in range(MAX_TERMS + 1)])

    def test_constant_value(self):
        """constant_value only accepts constants."""
        assert Formula.constant(2.5).constant_value() == 2.5
        with pytest.raises(GrammarOverflow):
            Formula.index().constant_value()


class TestAsymptotics:
    """Test boundedness, limits, suprema and tail sums."""

    def test_boundedness(self):
        """Growth is decided from the terms."""
        assert not parse_formula("k").is_bounded()
        assert parse_formula("exp(-k)").is_bounded()
        assert parse_formula("exp(i*k)").is_bounded()
        assert parse_formula("k*exp(-k)").is_bounded()
        assert not parse_formula("exp(0.1*k)").is_bounded()

    def test_limits(self):
        """Decaying terms vanish; oscillating ones have no limit."""
        assert parse_formula("2 + exp(-k)").limit() == pytest.approx(2.0)
        assert parse_formula("exp(-k)").limit() == 0
        assert parse_formula("exp(i*k)").limit() is None
        assert parse_formula("k").limit() is None

    def test_sup_single_terms(self):
        """Single-term suprema are exact."""
        assert parse_formula("exp(-k)").sup_abs(2) == pytest.approx(math.exp(-2.0))
        assert parse_formula("k*exp(-k)").sup_abs(0) == pytest.approx(math.exp(-1.0))
        assert parse_formula("k").sup_abs(0) == math.inf
        assert Formula().sup_abs() == 0.0

    def test_sup_of_sum_is_an_upper_bound(self):
        """The supremum of a sum bounds every sampled value."""
        f = parse_formula("exp(-k) - 2*exp(-0.5*k)")
        sup = f.sup_abs(0)
        assert all(abs(f(k)) <= sup + 1e-15 for k in range(200))

    def test_sup_of_periodic_sum_is_exact(self):
        """1 + i·(−1)^k has modulus √2 at every k, not 1 + 1."""
        assert parse_formula("1 + 1i*exp(1i*pi*k)").sup_abs() == pytest.approx(math.sqrt(2.0))

    @pytest.mark.parametrize(
        "text",
        [
            "1 + exp(2.0943951023931953i*k)",
            "exp(1.5707963267948966i*k) - 0.5*exp(1i*pi*k)",
            "2 - exp(1i*pi*k) + exp(-k)",
        ],
    )
    def test_sup_of_periodic_sum_matches_samples(self, text):
        """For periodic persistent parts the supremum is attained on sampled indices."""
        f = parse_formula(text)
        observed = max(abs(f(k)) for k in range(400))
        assert f.sup_abs() == pytest.approx(observed, rel=1e-9)

    def test_incommensurate_rotations_give_a_bound(self):
        """exp(ik) and exp(i√2k) have no common period; Σ|c| bounds the supremum."""
        f = parse_formula("exp(1i*k) + exp(1.4142135623730951i*k)")
        sup = f.sup_abs()
        assert sup == pytest.approx(2.0)
        assert all(abs(f(k)) <= sup for k in range(400))

    def test_monotone_from(self):
        """k·e^{−k/2} is monotone from its peak at k = 2."""
        assert parse_formula("k*exp(-0.5*k)").monotone_from() == 2
        assert parse_formula("exp(-k)").monotone_from() == 0

    def test_real_and_imaginary(self):
        """k is real; ik is imaginary."""
        assert parse_formula("k").is_real()
        assert not parse_formula("i*k").is_real()
        assert parse_formula("i*k").is_imaginary()

    def test_geometric_sums(self):
        """Σ 2^{-k} = 2 and Σ k 2^{-k} = 2."""
        assert Formula.constant(1.0).geometric_sum(0.5, 0) == pytest.approx(2.0)
        assert Formula.index().geometric_sum(0.5, 0) == pytest.approx(2.0)
        assert Formula.index().geometric_sum(0.5, 3) == pytest.approx(sum(k * 0.5 ** (k - 3) for k in range(3, 200)))

    def test_divergent_geometric_sum(self):
        """|ratio·e^a| ≥ 1 diverges."""
        with pytest.raises(DivergentTail):
            parse_formula("exp(k)").geometric_sum(0.5, 0)
