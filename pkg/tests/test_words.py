import math
import random
from fractions import Fraction

import pytest

from aperiodica.capset import (
    compute_gaps,
    fibonacci_params,
    generate_segment,
    mechanical_params,
)
from aperiodica.quadfield import TAU, QuadReal
from aperiodica.verify import quasisturmian_params, ternary_params
from aperiodica.words import (
    UnsaturatedError,
    Word,
    factor_complexity_empirical,
    factor_complexity_exact,
    mechanical_word,
    mirror_closure_check,
    palindrome_profile,
    profiles_to_csv,
    quasisturmian_decompose,
    recurrence_check,
    saturated_profiles,
)

FIB = fibonacci_params()


@pytest.fixture(scope="module")
def fib_word():
    return generate_segment(FIB, 5000, 5000).word


@pytest.fixture(scope="module")
def ternary_word():
    return generate_segment(ternary_params(), 5000, 5000).word


class TestWord:
    def test_parse_and_str(self):
        w = Word.parse("AABAB|AABAABAB")
        assert w.origin == 5
        assert w.left == "AABAB"
        assert w.right == "AABAABAB"
        assert str(w) == "AABAB|AABAABAB"

    def test_equality_ignores_origin(self):
        assert Word("ABA", 0) == Word("ABA", 2)
        assert Word("ABA", 1) == "AB|A"

    def test_bad_origin(self):
        with pytest.raises(ValueError):
            Word("AB", 3)
        with pytest.raises(ValueError):
            Word.parse("A|B|A")


class TestMechanical:
    def test_golden_slope(self):
        # floors of (n+1)/tau - n/tau for n = 0..7
        assert mechanical_word(1 / TAU, QuadReal(0), 0, 7).letters == "01011010"

    def test_first_letter_zero(self):
        for alpha in (1 / TAU, QuadReal(0, Fraction(1, 2), 2), 2 - TAU):
            assert mechanical_word(alpha, QuadReal(0), 0, 0).letters == "0"

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            mechanical_word(QuadReal(Fraction(1, 3)), QuadReal(0), 0, 5)
        with pytest.raises(ValueError):
            mechanical_word(TAU, QuadReal(0), 0, 5)
        with pytest.raises(ValueError):
            mechanical_word(1 / TAU, QuadReal(1), 0, 5)

    @pytest.mark.parametrize("beta", [QuadReal(0), QuadReal(Fraction(1, 2))])
    def test_matches_gap_coding(self, beta):
        alpha, eta = 1 / TAU, TAU
        params, scale = mechanical_params(alpha, beta, eta)
        g = compute_gaps(params)
        # lattice point -(floor(n alpha + beta), n) for n = 0..200
        pts = [(-(alpha * n + beta).floor(), -n) for n in range(0, 201)]
        assert all(params.contains(p) for p in pts)
        u = mechanical_word(alpha, beta, 0, 199).letters
        assert {abs(g.delta1_phys), abs(g.delta2_phys)} == {eta + 1, eta}
        coded = []
        for p, q in zip(pts, pts[1:]):
            d = (p[0] - q[0], p[1] - q[1])
            coded.append("1" if d == (1, 1) else "0")
        assert "".join(coded) == u


class TestComplexity:
    def test_fibonacci_empirical(self, fib_word):
        C = factor_complexity_empirical(fib_word, 30)
        assert list(C.values) == [n + 1 for n in range(1, 31)]
        assert not C.periodic

    def test_constant_word(self):
        C = factor_complexity_empirical(Word("A" * 400), 10)
        assert set(C.values) == {1}
        assert C.periodic

    def test_ternary_empirical_and_exact(self, ternary_word):
        C = factor_complexity_empirical(ternary_word, 30)
        E = factor_complexity_exact(compute_gaps(ternary_params()), 30)
        assert list(C.values) == [2 * n + 1 for n in range(1, 31)]
        assert E.values == C.values
        assert E.exact and not C.exact

    def test_fibonacci_exact(self):
        E = factor_complexity_exact(compute_gaps(FIB), 40)
        assert list(E.values) == [n + 1 for n in range(1, 41)]

    def test_n1_counts_branches(self):
        assert factor_complexity_exact(compute_gaps(FIB), 1).values == (2,)
        assert factor_complexity_exact(compute_gaps(ternary_params()), 1).values == (3,)

    def test_too_short(self):
        with pytest.raises(ValueError):
            factor_complexity_empirical(Word("AB" * 10), 30)

    def test_nondecreasing(self, ternary_word):
        assert factor_complexity_empirical(ternary_word, 20).nondecreasing


class TestPalindromes:
    def test_fibonacci(self, fib_word):
        P = palindrome_profile(fib_word, 20)
        assert list(P.values) == [1 if n % 2 == 0 else 2 for n in range(1, 21)]

    def test_ternary(self, ternary_word):
        P = palindrome_profile(ternary_word, 20)
        assert list(P.values) == [1 if n % 2 == 0 else 3 for n in range(1, 21)]

    def test_binary_n1(self):
        assert palindrome_profile(Word("AB" * 50), 1).values == (2,)

    def test_unsaturated(self):
        rng = random.Random(0)
        w = Word("".join(rng.choice("AB") for _ in range(200)))
        with pytest.raises(UnsaturatedError):
            palindrome_profile(w, 12)

    def test_inequalities(self, ternary_word):
        C, P, _ = saturated_profiles(lambda L: generate_segment(ternary_params(), L, L).word, 24)
        for n in range(1, 20):
            assert P[n] <= 16 / n * C[n + n // 4]
            assert P[n] + P[n + 1] <= 3 * (C[n + 1] - C[n])


class TestMirrorAndRecurrence:
    def test_cp_words_mirror_closed(self, fib_word, ternary_word):
        assert mirror_closure_check(fib_word, 20)
        assert mirror_closure_check(ternary_word, 20)

    def test_aab(self):
        assert not mirror_closure_check("AAB", 3)

    def test_fibonacci_letter_gaps(self, fib_word):
        assert recurrence_check(fib_word, 1)[1] <= 3

    def test_periodic(self):
        assert recurrence_check(Word("AB" * 40), 2)[2] == 2

    def test_ternary_finite(self, ternary_word):
        gaps = recurrence_check(ternary_word, 12)
        assert all(math.isfinite(v) and v < 500 for v in gaps.values())

    def test_single_occurrence_infinite(self):
        assert recurrence_check(Word("AAAB"), 3)[3] == math.inf


class TestQuasisturmian:
    def test_fibonacci_trivial(self, fib_word):
        d = quasisturmian_decompose(fib_word)
        assert d is not None
        assert (d.W0, d.W1) == ("A", "B")
        assert d.expand() == fib_word.letters

    def test_ternary_in_ring(self):
        w = generate_segment(quasisturmian_params(), 3000, 3000).word
        assert set(w.letters) == {"A", "B", "C"}
        d = quasisturmian_decompose(w)
        assert d is not None
        assert d.W0 != d.W1
        assert d.expand() in w.letters

    def test_random_word(self):
        rng = random.Random(1)
        assert quasisturmian_decompose(Word("".join(rng.choice("ABC") for _ in range(3000)))) is None


def test_csv():
    C = factor_complexity_empirical(Word("AABABAABAABAB" * 10), 3)
    text = profiles_to_csv(C)
    assert text.splitlines()[0] == "n,C,P"
    assert text.splitlines()[1] == "1,2,"
