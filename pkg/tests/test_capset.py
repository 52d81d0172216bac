import random
from fractions import Fraction

import pytest

from aperiodica.capset import (
    CapParams,
    LatticePoint,
    WindowSpec,
    aperiodicity_witness,
    check_delone,
    compute_gaps,
    condition_p_failures,
    enumerate_direct,
    enumerate_phys_interval,
    exchange_step,
    fibonacci_params,
    find_seed,
    generate_from,
    generate_segment,
    normalize,
    segment_to_json,
)
from aperiodica.quadfield import TAU, TAU_CONJ, NonExactParameterError, QuadReal, parse_real
from aperiodica.verify import random_p_params, random_params, ternary_params

FIB = fibonacci_params()


class TestParams:
    def test_rational_slope_rejected(self):
        with pytest.raises(ValueError):
            CapParams(QuadReal(Fraction(-1, 2)), TAU, WindowSpec(0, 1))

    def test_equal_slopes_rejected(self):
        with pytest.raises(ValueError):
            CapParams(TAU, TAU, WindowSpec(0, 1))

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            WindowSpec(0, 0)

    def test_left_open_window_is_a_reflection(self):
        # (lo, hi] for slopes (e, h) is -1 times [-hi, -lo) for the same slopes
        win, scale = WindowSpec.from_left_open(QuadReal(0), QuadReal(1))
        assert scale == -1
        p = CapParams(TAU_CONJ, TAU, win)
        for b in range(-30, 31):
            for a in range(-40, 41):
                s = TAU_CONJ * b + a
                assert (0 < s <= 1) == p.contains((-a, -b))

    def test_decimal_params_are_not_exact(self):
        p = CapParams(parse_real("-0.618"), TAU, WindowSpec(0, 1))
        assert not p.exact
        with pytest.raises(NonExactParameterError):
            p.require_exact()


class TestEnumeration:
    def test_fibonacci_small_range(self):
        pts = enumerate_direct(FIB, (-3, 3))
        assert LatticePoint(0, 0) in pts
        assert LatticePoint(1, 1) in pts
        for p in pts:
            assert 0 <= FIB.star(p) < 1
        phys = [FIB.phys(p) for p in pts]
        assert phys == sorted(phys)

    def test_direct_is_complete(self):
        pts = set(enumerate_direct(FIB, (-10, 10)))
        brute = {
            LatticePoint(a, b)
            for b in range(-10, 11)
            for a in range(-20, 21)
            if FIB.contains((a, b))
        }
        assert pts == brute


class TestGaps:
    def test_fibonacci_gaps(self):
        g = compute_gaps(FIB)
        assert g.binary
        assert g.alphabet == "AB"
        assert g.delta1 == LatticePoint(1, 1)
        assert g.delta2 == LatticePoint(0, 1)
        assert g.delta1_phys == TAU**2
        assert g.delta2_phys == TAU
        assert g.delta1_star == (3 - QuadReal(0, 1, 5)) / 2

    def test_fibonacci_middle_interval_empty(self):
        g = compute_gaps(FIB)
        assert g.delta2_star == TAU_CONJ
        assert g.delta1_star - g.delta2_star == 1
        assert g.omega_B.empty

    def test_fibonacci_step(self):
        g = compute_gaps(FIB)
        assert exchange_step(g, LatticePoint(0, 0)) == (LatticePoint(1, 1), "A")

    def test_fibonacci_forward_word(self):
        seg = generate_from(compute_gaps(FIB), LatticePoint(0, 0), 0, 7)
        assert seg.word.letters == "AABAABA"

    def test_ternary_reference(self):
        g = compute_gaps(ternary_params())
        assert not g.binary
        assert g.alphabet == "ABC"
        assert g.gap_for_letter("B") == g.delta1 + g.delta2

    def test_exchange_intervals_partition_window(self):
        for seed in range(20):
            p = random_p_params(random.Random(seed))
            g = compute_gaps(p)
            w = p.window
            parts = sorted(
                (iv for iv in (g.omega_A, g.omega_B, g.omega_C) if not iv.empty), key=lambda iv: iv.lo
            )
            assert parts[0].lo == w.c
            assert parts[-1].hi == w.right
            for x, y in zip(parts, parts[1:]):
                assert x.hi == y.lo

    def test_gaps_do_not_depend_on_window_position(self):
        base = compute_gaps(FIB)
        for shift in (Fraction(1, 3), TAU_CONJ, Fraction(-7, 11)):
            g = compute_gaps(FIB.with_window(shift, 1))
            assert {g.delta1, g.delta2} == {base.delta1, base.delta2}


class TestWalk:
    def test_forward_then_backward_is_identity(self):
        rng = random.Random(7)
        for _ in range(10):
            p = random_p_params(rng)
            g = compute_gaps(p)
            x = find_seed(p)
            for _ in range(30):
                y, letter = exchange_step(g, x, "forward")
                assert exchange_step(g, y, "backward") == (x, letter)
                x = y

    def test_walk_matches_enumeration(self):
        for seed in range(8):
            p = random_params(random.Random(seed)) if seed % 2 else random_p_params(random.Random(seed))
            seg = generate_segment(p, 60, 60)
            lo, hi = p.phys(seg.points[0]), p.phys(seg.points[-1])
            assert enumerate_phys_interval(p, lo, hi) == seg.points

    def test_zero_counts(self):
        seg = generate_segment(FIB, 0, 0)
        assert len(seg.points) == 1
        assert seg.word.letters == ""

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            generate_segment(FIB, -1, 3)

    def test_seed_minimises_abs_phys(self):
        p = FIB.with_window(Fraction(1, 7), 1)
        seed = find_seed(p)
        pts = enumerate_direct(p, (-20, 20))
        best = min(abs(p.phys(q)) for q in pts)
        assert abs(p.phys(seed)) == best


class TestNormalize:
    def test_fibonacci_already_normal(self):
        n = normalize(FIB)
        assert condition_p_failures(FIB) == []
        assert n.params == FIB
        assert n.scale == 1

    def test_unit_shift(self):
        n = normalize(CapParams(1 + TAU_CONJ, 1 + TAU, WindowSpec(0, 1)))
        assert (n.params.epsilon, n.params.eta) == (TAU_CONJ, TAU)
        assert n.scale == 1
        # the permutation relates params to word_params, whose epsilon is -1 - tau'
        assert n.word_params.epsilon == -1 - TAU_CONJ
        assert n.letter_permutation == {"A": "B", "B": "A"}

    def test_random_sets_normalize(self):
        rng = random.Random(3)
        for _ in range(6):
            p = random_params(rng)
            n = normalize(p, with_word_params=False)
            assert condition_p_failures(n.params) == []
            seg = generate_segment(n.params, 20, 20)
            for q in seg.points:
                assert p.contains(n.to_original(q))
                assert p.phys(n.to_original(q)) == n.scale * n.params.phys(q)

    def test_word_params_half_range(self):
        p = CapParams(-TAU_CONJ - 1, TAU, WindowSpec(0, Fraction(9, 10)))
        n = normalize(p)
        assert -Fraction(1, 2) < n.word_params.epsilon < 0
        w1 = generate_segment(n.params, 200, 200).word.letters
        w2 = generate_segment(n.word_params, 200, 200).word.letters
        from aperiodica.words import factor_set

        renamed = "".join(n.letter_permutation[ch] for ch in w1)
        assert factor_set(renamed, 6) == factor_set(w2, 6)

    def test_exact_required(self):
        with pytest.raises(NonExactParameterError):
            normalize(CapParams(parse_real("-0.4"), TAU, WindowSpec(0, 1)))


class TestWitnesses:
    def test_delone_bounds(self):
        seg = generate_segment(FIB, 100, 100)
        lo, hi = check_delone(seg.points, FIB.eta)
        assert (lo, hi) == (TAU, TAU**2)

    def test_aperiodic(self):
        seg = generate_segment(FIB, 300, 300)
        assert aperiodicity_witness(seg.points, FIB.eta)

    def test_periodic_lattice_detected(self):
        pts = [LatticePoint(2 * k, 0) for k in range(50)]
        assert not aperiodicity_witness(pts, TAU)


class TestJson:
    def test_segment_schema(self):
        obj = segment_to_json(generate_segment(FIB, 2, 3))
        assert set(obj) == {"params", "gaps", "points", "word"}
        assert obj["word"] == "AB|AAB"
        assert len(obj["points"]) == 6
        assert set(obj["points"][0]) == {"a", "b", "phys_decimal"}
        assert obj["params"]["epsilon"]["D"] == 5
