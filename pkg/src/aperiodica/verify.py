"""Reference instances and the end-to-end checks run by ``verify-all``.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
property, so a report can list every outcome.  The random parameter
generators are seeded, making every run reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .capset import (
    CapParams,
    WindowSpec,
    compute_gaps,
    condition_p_failures,
    enumerate_direct,
    enumerate_phys_interval,
    fibonacci_params,
    generate_segment,
    mechanical_params,
    normalize,
)
from .quadfield import TAU, TAU_CONJ, QuadReal
from .substitution import (
    Morphism,
    apply,
    fixed_point,
    incidence,
    is_sturm_number,
    mechanical_invariance,
    perron_densities,
)
from .words import (
    Word,
    factor_complexity_empirical,
    factor_complexity_exact,
    letter_frequencies,
    mechanical_word,
    palindrome_profile,
    saturated_profiles,
)

__all__ = [
    "CheckResult",
    "ternary_params",
    "quasisturmian_params",
    "planar_reference",
    "random_p_params",
    "random_params",
    "CHECKS",
    "run_all",
]

_FIELDS = (2, 3, 5, 6, 7, 10, 11, 13, 14, 15)


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.criterion:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


# -- reference instances -------------------------------------------------------


def ternary_params() -> CapParams:
    """Window length 9/10, outside Z[tau']: three gaps, C(n) = 2n + 1."""
    return CapParams(TAU_CONJ, TAU, WindowSpec(0, Fraction(9, 10)))


def quasisturmian_params() -> CapParams:
    """Window length 4 + 5 tau' (about 0.91), inside Z[tau']: C(n) = n + const eventually."""
    return CapParams(TAU_CONJ, TAU, WindowSpec(0, 4 + 5 * TAU_CONJ))


def planar_reference() -> tuple[Fraction, int]:
    """(window radius, phys radius) of the planar reference configuration."""
    return Fraction(43, 50), 48


# -- random parameters -----------------------------------------------------------


def _rand_quad(rng: random.Random, lo: Fraction | int, hi: Fraction | int, D: int | None = None) -> QuadReal:
    while True:
        d = D if D is not None else rng.choice(_FIELDS)
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 30))
        if b == 0:
            continue
        a = Fraction(rng.randint(-400, 400), rng.randint(1, 60))
        x = QuadReal(a, b, d)
        if lo < x < hi:
            return x


def random_p_params(rng: random.Random) -> CapParams:
    """Exact parameters satisfying condition (P)."""
    while True:
        eps = _rand_quad(rng, -1, 0)
        eta = _rand_quad(rng, Fraction(1, 20), 6)
        floor = max(1 + eps, -eps)
        if rng.random() < 0.5:
            ell = floor + (1 - floor) * Fraction(rng.randint(1, 99), 100)
        else:
            ell = QuadReal(Fraction(rng.randint(1, 99), 100)) * (1 - floor) + floor
        if rng.random() < 0.25:
            ell = QuadReal(1)
        c = QuadReal(Fraction(rng.randint(-50, 50), rng.randint(1, 20)))
        p = CapParams(eps, eta, WindowSpec(c, ell))
        if not condition_p_failures(p):
            return p


def random_params(rng: random.Random) -> CapParams:
    """Exact parameters violating condition (P)."""
    while True:
        D = rng.choice(_FIELDS)
        eps = _rand_quad(rng, -6, 6, D if rng.random() < 0.5 else None)
        eta = _rand_quad(rng, -6, 6)
        if eps.same_field(eta) and eps == eta:
            continue
        ell = QuadReal(Fraction(rng.randint(5, 400), 100))
        c = QuadReal(Fraction(rng.randint(-100, 100), rng.randint(1, 40)))
        p = CapParams(eps, eta, WindowSpec(c, ell))
        if condition_p_failures(p):
            return p


# -- checks ---------------------------------------------------------------------


def _timed(criterion: int, name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(criterion, name, ok, detail, time.perf_counter() - t0)


def check_three_gaps(count: int = 25, points: int = 10_000, seed: int = 2024, limit: float = 60.0) -> CheckResult:
    def run() -> tuple[bool, str]:
        rng = random.Random(seed)
        t0 = time.perf_counter()
        kinds = {1: 0, 2: 0, 3: 0}
        for _ in range(count):
            p = random_p_params(rng)
            seg = generate_segment(p, points // 2, points - points // 2 - 1)
            ph = seg.phys_values()
            gaps = sorted(set(y - x for x, y in zip(ph, ph[1:])))
            if len(gaps) > 3 or (len(gaps) == 3 and gaps[2] != gaps[0] + gaps[1]):
                return False, f"gaps {gaps} for {p}"
            # the walk must not skip points: compare with the direct oracle
            if enumerate_phys_interval(p, ph[0], ph[-1]) != seg.points:
                return False, f"segment differs from direct enumeration for {p}"
            kinds[len(gaps)] += 1
        elapsed = time.perf_counter() - t0
        ok = elapsed < limit
        return ok, f"{count} sets x {points} points, gap counts {kinds}, {elapsed:.1f}s (limit {limit:.0f}s)"

    return _timed(1, "three-gap theorem", run)


def check_fibonacci(n_oracle: int = 10_000) -> CheckResult:
    def run() -> tuple[bool, str]:
        p = fibonacci_params()
        g = compute_gaps(p)
        gaps = {g.delta1_phys, g.delta2_phys}
        if gaps != {TAU**2, TAU}:
            return False, f"gaps {gaps}"
        seg = generate_segment(p, 5, 8, g)
        if str(seg.word) != "AABAB|AABAABAB":
            return False, f"word {seg.word}"
        longer = generate_segment(p, 50, 80, g).word
        if not (longer.left.endswith("AABAB") and longer.right.startswith("AABAABAB")):
            return False, "longer segment does not extend the reference word"
        # |phys| <= n*sqrt5 + 1 for |b| <= n; walk far enough on both sides
        reach = n_oracle + 200
        walk = generate_segment(p, reach, reach, g).points
        direct = enumerate_direct(p, (-n_oracle, n_oracle))
        lo, hi = p.phys(direct[0]), p.phys(direct[-1])
        if not (p.phys(walk[0]) < lo and hi < p.phys(walk[-1])):
            return False, "walk does not cover the oracle range"
        inside = [q for q in walk if -n_oracle <= q.b <= n_oracle]
        if inside != direct:
            return False, "exchange walk differs from direct enumeration"
        return True, f"gaps {{tau^2, tau}}, word AABAB|AABAABAB, {len(direct)} points match on |b| <= {n_oracle}"

    return _timed(2, "Fibonacci reference", run)


def check_complexity(n_max: int = 30) -> CheckResult:
    def run() -> tuple[bool, str]:
        out = []
        for name, p, expect in (
            ("ell=9/10", ternary_params(), lambda n: 2 * n + 1),
            ("ell=1", fibonacci_params(), lambda n: n + 1),
        ):
            g = compute_gaps(p)
            exact = factor_complexity_exact(g, n_max)
            emp = factor_complexity_empirical(generate_segment(p, 2000, 2000, g).word, n_max)
            want = tuple(expect(n) for n in range(1, n_max + 1))
            if exact.values != want or emp.values != want or not emp.saturated:
                return False, f"{name}: exact {exact.values}, empirical {emp.values}"
            out.append(name)
        return True, f"C(n)=2n+1 for ell=9/10 and n+1 for ell=1, n=1..{n_max}, exact and empirical"

    return _timed(3, "complexity dichotomy", run)


def _word_maker(p: CapParams) -> Callable[[int], Word]:
    g = compute_gaps(p)
    return lambda L: generate_segment(p, L // 2, L - L // 2, g).word


def check_palindromes(n_max: int = 25) -> CheckResult:
    def run() -> tuple[bool, str]:
        for name, p, odd in (("ell=9/10", ternary_params(), 3), ("ell=1", fibonacci_params(), 2)):
            _, P, w = saturated_profiles(_word_maker(p), n_max)
            want = tuple(1 if n % 2 == 0 else odd for n in range(1, n_max + 1))
            if P.values != want:
                return False, f"{name}: {P.values}"
        return True, f"P(n) = 1 (even) and 3 / 2 (odd) for ell<1 / ell=1, n=1..{n_max}, saturated"

    return _timed(4, "palindromic complexity", run)


def check_inequalities(n_max: int = 30) -> CheckResult:
    def run() -> tuple[bool, str]:
        checked = 0
        for name, p in (
            ("Fibonacci", fibonacci_params()),
            ("ell=9/10", ternary_params()),
            ("ell=4+5tau'", quasisturmian_params()),
        ):
            g = compute_gaps(p)
            C = factor_complexity_exact(g, n_max + n_max // 4 + 1)
            w = generate_segment(p, 5000, 5000, g).word
            P = palindrome_profile(w, n_max + 1)
            for n in range(1, n_max + 1):
                if P[n] * n > 16 * C[n + n // 4]:
                    return False, f"{name}: P({n}) > 16/n C(n + n/4)"
                if P[n] + P[n + 1] > 3 * (C[n + 1] - C[n]):
                    return False, f"{name}: P({n}) + P({n + 1}) > 3 (C({n + 1}) - C({n}))"
                checked += 2
        return True, f"{checked} inequality instances hold on three aperiodic references, n=1..{n_max}"

    return _timed(5, "complexity/palindrome inequalities", run)


def check_mechanical(n: int = 10_000) -> CheckResult:
    def run() -> tuple[bool, str]:
        alpha = 1 / TAU
        for beta in (QuadReal(0), QuadReal(Fraction(1, 2))):
            params, scale = mechanical_params(alpha, beta, TAU)
            seg = generate_segment(params, n + 10, n + 10)
            # transformed point (a, b) is the original floor(m alpha + beta) + m eta with m = -b;
            # walking right decreases m by one and reads the letter u_{m-1}
            letters: dict[int, str] = {}
            for x, y, ch in zip(seg.points, seg.points[1:], seg.word.letters):
                m = -x.b
                if x.a != -(alpha * m + beta).floor():
                    return False, f"point {x} is not floor(m alpha + beta) + m eta"
                if y.b != x.b + 1:
                    return False, "consecutive points skip an index"
                letters[m - 1] = "1" if ch == "A" else "0"
            coded = "".join(letters[k] for k in range(-n, n + 1))
            ref = mechanical_word(alpha, beta, -n, n).letters
            if coded != ref:
                i = next(i for i, (s, t) in enumerate(zip(coded, ref)) if s != t)
                return False, f"beta={beta}: words differ at n={i - n}"
        return True, f"coding equals floor word for beta in {{0, 1/2}}, n in [-{n}, {n}]"

    return _timed(6, "mechanical word identity", run)


def check_substitution(letters: int = 100_000) -> CheckResult:
    def run() -> tuple[bool, str]:
        phi = Morphism.parse("A->AAB;B->AB")
        M = incidence(phi)
        if M.tolist() != [[2, 1], [1, 1]]:
            return False, f"incidence {M.tolist()}"
        dens = perron_densities(M, phi.alphabet)
        if not (dens[0] == 1 / TAU and dens[1] == 1 - 1 / TAU):
            return False, f"densities {dens.values}"
        u = fixed_point(phi, "A", "B", letters // 2)
        freq = letter_frequencies(u.letters)
        err = max(abs(freq[a] - float(dens[i])) for i, a in enumerate(phi.alphabet))
        if err >= 1e-3:
            return False, f"empirical densities off by {err:.2e}"
        img = apply(phi, u)
        left_ok = img.left.endswith(u.left)
        right_ok = img.right.startswith(u.right)
        if not (left_ok and right_ok):
            return False, "fixed point changes under re-application"
        return True, f"M=[[2,1],[1,1]], rho(A)=1/tau exactly, empirical error {err:.1e} on {len(u)} letters"

    return _timed(7, "substitution engine", run)


def check_invariance() -> CheckResult:
    def run() -> tuple[bool, str]:
        fib = mechanical_invariance(1 / TAU, 0)
        if fib.invariant is not True:
            return False, f"(1/tau, 0): {fib.reason}"
        # both roots of 5x^2 - 5x + 1 lie in (0, 1)
        non_sturm = QuadReal(Fraction(1, 2), Fraction(-1, 10), 5)
        v2 = mechanical_invariance(non_sturm, 0)
        if v2.invariant is not False or v2.clauses["i"] is not False or is_sturm_number(non_sturm).is_sturm:
            return False, f"non-Sturm slope: {v2.reason}"
        # beta = 2 tau - 3 in [0, 1) has conjugate -2 - sqrt5 < alpha'
        v3 = mechanical_invariance(1 / TAU, 2 * TAU - 3)
        if v3.invariant is not False or v3.clauses != {"i": True, "ii": True, "iii": False}:
            return False, f"clause (iii) case: {v3.clauses}"
        return True, "(1/tau,0) invariant; non-Sturm slope fails (i); beta=2tau-3 fails (iii)"

    return _timed(8, "invariance decisions", run)


def check_normalization(count: int = 25, points: int = 1000, seed: int = 7) -> CheckResult:
    def run() -> tuple[bool, str]:
        rng = random.Random(seed)
        for _ in range(count):
            p = random_params(rng)
            norm = normalize(p, with_word_params=False)
            if condition_p_failures(norm.params):
                return False, f"{p} did not reach (P)"
            seg = generate_segment(norm.params, points // 2, points - points // 2 - 1)
            mapped = [norm.to_original(q) for q in seg.points]
            for q, m in zip(seg.points, mapped):
                if p.phys(m) != norm.scale * norm.params.phys(q) or not p.contains(m):
                    return False, f"point map fails for {p}"
            ends = sorted((p.phys(mapped[0]), p.phys(mapped[-1])))
            if set(enumerate_phys_interval(p, ends[0], ends[1])) != set(mapped):
                return False, f"scaled segment differs from direct enumeration for {p}"
        return True, f"{count} non-(P) sets normalized; {points}-point windows match exactly"

    return _timed(9, "normalization", run)


def check_planar(limit: float = 120.0) -> CheckResult:
    def run() -> tuple[bool, str]:
        from .planar import (
            PlanarConfig,
            area_audit,
            classify_tiles,
            generate_planar,
            rotation_matrix,
            tenfold_check,
            voronoi,
        )
        import numpy as np

        t0 = time.perf_counter()
        r, R = planar_reference()
        R_small = Fraction(R, 2)
        Rm = rotation_matrix()
        if not np.array_equal(np.linalg.matrix_power(Rm, 10), np.eye(4, dtype=Rm.dtype)):
            return False, "R^10 != I"
        counts = []
        for radius in (R_small, R):
            ps = generate_planar(PlanarConfig(r, radius))
            if not tenfold_check(ps):
                return False, f"tenfold symmetry fails at phys radius {radius}"
            vr = voronoi(ps.phys, float(radius))
            audit = area_audit(vr.tiles, float(radius) / 2)
            if audit["defect"] >= 1e-9:
                return False, f"area defect {audit['defect']:.2e}"
            counts.append((len(ps), len(classify_tiles(vr.tiles))))
        elapsed = time.perf_counter() - t0
        (n1, k1), (n2, k2) = counts
        ok = k1 == k2 == 6 and elapsed < limit
        return ok, (
            f"window radius {r}: {k1} classes ({n1} points) -> {k2} classes ({n2} points) "
            f"after doubling; tenfold ok; area defect < 1e-9; {elapsed:.1f}s"
        )

    return _timed(10, "planar construction", run)


CHECKS: list[Callable[[], CheckResult]] = [
    check_three_gaps,
    check_fibonacci,
    check_complexity,
    check_palindromes,
    check_inequalities,
    check_mechanical,
    check_substitution,
    check_invariance,
    check_normalization,
    check_planar,
]


def run_all(progress: Callable[[str], None] | None = None) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        res = check()
        if progress is not None:
            progress(res.line())
        results.append(res)
    return results
