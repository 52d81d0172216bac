from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperiodica.quadfield import (
    SQRT2,
    TAU,
    TAU_CONJ,
    DecimalParam,
    IndeterminateComparisonError,
    MixedFieldError,
    NonExactParameterError,
    QuadReal,
    from_json,
    parse_real,
    require_exact,
    squarefree_decomposition,
    to_json,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
fields = st.sampled_from([2, 3, 5, 6, 7, 10, 13])


@st.composite
def quads(draw, D=None):
    d = draw(fields) if D is None else D
    return QuadReal(draw(rationals), draw(rationals), d)


same_field = fields.flatmap(lambda d: st.tuples(quads(D=d), quads(D=d), quads(D=d)))


class TestArithmetic:
    def test_add_examples(self):
        x = QuadReal(1, 1, 5)
        assert x + QuadReal(0, 0, 5) == x
        assert TAU + TAU_CONJ == 1
        assert TAU + TAU == QuadReal(1, 1, 5)

    def test_mul_examples(self):
        assert TAU * TAU == TAU + 1 == QuadReal(Fraction(3, 2), Fraction(1, 2), 5)
        assert TAU * 1 == TAU
        assert TAU_CONJ * TAU_CONJ == QuadReal(Fraction(3, 2), Fraction(-1, 2), 5)

    def test_mixed_fields_rejected(self):
        with pytest.raises(MixedFieldError):
            TAU + SQRT2
        with pytest.raises(MixedFieldError):
            TAU * SQRT2
        with pytest.raises(MixedFieldError):
            TAU < SQRT2

    def test_zero_and_rationals_are_field_agnostic(self):
        zero = QuadReal(0, 0, 5)
        assert zero + SQRT2 == SQRT2
        assert QuadReal(3) * TAU == 3 * TAU
        assert not TAU.same_field(SQRT2)
        assert QuadReal(2).same_field(SQRT2)

    def test_division_and_powers(self):
        assert 1 / TAU == TAU - 1
        assert TAU**-2 == (TAU - 1) ** 2
        assert TAU**0 == 1
        with pytest.raises(ZeroDivisionError):
            TAU / QuadReal(0)

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            QuadReal(0, 1, 4)
        with pytest.raises(ValueError):
            QuadReal(0, 1, 1)

    def test_squarefree_decomposition(self):
        assert squarefree_decomposition(72) == (6, 2)
        assert squarefree_decomposition(5) == (1, 5)


class TestConjugateSignFloor:
    def test_conjugate_examples(self):
        assert TAU.conjugate() == TAU_CONJ
        x = QuadReal(Fraction(2, 3), Fraction(-7, 5), 3)
        assert x.conjugate().conjugate() == x
        y = 1 + TAU
        assert (TAU * y).conjugate() == TAU.conjugate() * y.conjugate()

    def test_sign_examples(self):
        assert TAU_CONJ.sign() == -1
        assert QuadReal(0, 0, 5).sign() == 0
        assert QuadReal(-2, 1, 5).sign() == 1

    def test_floor_examples(self):
        assert TAU.floor() == 1
        assert QuadReal(3, 0, 5).floor() == 3
        assert TAU_CONJ.floor() == -1
        assert QuadReal(Fraction(-7, 2)).floor() == -4
        assert TAU_CONJ.ceil() == 0

    def test_minimal_polynomial(self):
        assert TAU.minimal_polynomial() == (1, -1, -1)
        assert SQRT2.minimal_polynomial() == (1, 0, -2)
        assert (1 / TAU).minimal_polynomial() == (1, 1, -1)
        with pytest.raises(ValueError):
            QuadReal(Fraction(1, 2)).minimal_polynomial()

    def test_in_ring(self):
        assert (TAU**2).in_ring(TAU) == (1, 1)
        assert QuadReal(Fraction(1, 2)).in_ring(TAU) is None
        assert SQRT2.in_ring(TAU) is None


class TestProperties:
    @settings(max_examples=300, deadline=None)
    @given(same_field)
    def test_field_axioms(self, xyz):
        x, y, z = xyz
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        if x:
            assert x * x.inverse() == 1

    @settings(max_examples=1000, deadline=None)
    @given(same_field)
    def test_conjugation_is_automorphism(self, xyz):
        x, y, _ = xyz
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()

    @settings(max_examples=10_000, deadline=None)
    @given(quads())
    def test_sign_matches_high_precision(self, x):
        with mpmath.workprec(128):
            v = mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.D)
        expected = 0 if x == 0 else (1 if v > 0 else -1)
        assert x.sign() == expected

    @settings(max_examples=10_000, deadline=None)
    @given(quads())
    def test_floor_brackets(self, x):
        f = x.floor()
        assert f <= x < f + 1


class TestDecimal:
    def test_precision_floor(self):
        with pytest.raises(ValueError):
            DecimalParam("0.5", prec=32)

    def test_overlapping_intervals_raise(self):
        a = DecimalParam("0.5", rad="1e-10")
        b = DecimalParam("0.5", rad="1e-10")
        with pytest.raises(IndeterminateComparisonError):
            a < b

    def test_separated_intervals_compare(self):
        assert DecimalParam("0.25") < DecimalParam("0.5")
        assert DecimalParam("0.5") < TAU

    def test_require_exact(self):
        assert require_exact(TAU) is TAU
        with pytest.raises(NonExactParameterError):
            require_exact(DecimalParam("0.3"))


class TestParsing:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("tau", TAU),
            ("golden", TAU),
            ("tau'", TAU_CONJ),
            ("sqrt2", SQRT2),
            ("1/2 + 1/2*sqrt(5)", TAU),
            ("1/tau", TAU - 1),
            ("-3/7", QuadReal(Fraction(-3, 7))),
            ("2*tau-3", 2 * TAU - 3),
            ("tau^2", TAU + 1),
        ],
    )
    def test_expressions(self, text, value):
        assert parse_real(text) == value

    def test_decimal_modes(self):
        assert isinstance(parse_real("0.3"), DecimalParam)
        assert parse_real("0.3", decimal="exact") == QuadReal(Fraction(3, 10))

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_real("tau + import")

    def test_str_round_trip(self):
        for x in (TAU, -TAU, SQRT2, -SQRT2, QuadReal(Fraction(2, 3), Fraction(-5, 7), 11), QuadReal(4)):
            assert parse_real(str(x)) == x

    def test_json_round_trip(self):
        x = QuadReal(Fraction(-2, 3), Fraction(5, 7), 13)
        obj = to_json(x)
        assert set(obj) == {"a_num", "a_den", "b_num", "b_den", "D"}
        assert from_json(obj) == x
