"""One-dimensional cut-and-project sets over the lattice Z^2.

A lattice point ``(a, b)`` projects to ``phys = a + b*eta`` and
``star = a + b*epsilon``; the set is ``{phys : star in [c, c + ell)}``.
Gaps between neighbours are found by a certified lattice search, after which
the whole set is generated exactly by the three-interval exchange on the
star values.  :func:`enumerate_direct` is the definitional oracle.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

import mpmath

from .quadfield import (
    DecimalParam,
    NonExactParameterError,
    QuadReal,
    RealParam,
    as_real,
    require_exact,
    to_json,
)
from .words import Word

__all__ = [
    "BudgetExhaustedError",
    "NormalizationError",
    "WindowSpec",
    "CapParams",
    "LatticePoint",
    "Interval",
    "GapStructure",
    "Segment",
    "Normalization",
    "search_budget",
    "fibonacci_params",
    "mechanical_params",
    "enumerate_direct",
    "enumerate_phys_interval",
    "compute_gaps",
    "exchange_step",
    "find_seed",
    "generate_from",
    "generate_segment",
    "condition_p_failures",
    "normalize",
    "check_delone",
    "aperiodicity_witness",
    "segment_to_json",
]

DEFAULT_BUDGET = 10_000_000


class BudgetExhaustedError(RuntimeError):
    """A lattice search ran past ``APERIODICA_BUDGET`` iterations."""


class NormalizationError(ValueError):
    """Parameters could not be brought to condition (P)."""


def search_budget() -> int:
    raw = os.environ.get("APERIODICA_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return max(1, int(raw))


# ---------------------------------------------------------------------------
# parameters and points


@dataclass(frozen=True)
class WindowSpec:
    """Half-open acceptance window ``[c, c + ell)``."""

    c: RealParam
    ell: RealParam

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", as_real(self.c))
        object.__setattr__(self, "ell", as_real(self.ell))
        if not self.ell > 0:
            raise ValueError("window length must be positive")

    @property
    def right(self) -> RealParam:
        return self.c + self.ell

    def contains(self, s: RealParam) -> bool:
        return self.c <= s < self.right

    @classmethod
    def from_left_open(cls, lo: RealParam, hi: RealParam) -> tuple[WindowSpec, int]:
        """Convert ``(lo, hi]`` into ``[-hi, -lo)`` plus the scale -1 relating the sets.

        ``Sigma((lo, hi]) == -1 * Sigma([-hi, -lo))`` for the same slopes.
        """
        lo, hi = as_real(lo), as_real(hi)
        return cls(-hi, hi - lo), -1


@dataclass(frozen=True)
class CapParams:
    """Slopes ``epsilon`` (star) and ``eta`` (phys) plus the window."""

    epsilon: RealParam
    eta: RealParam
    window: WindowSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_real(self.epsilon))
        object.__setattr__(self, "eta", as_real(self.eta))
        for name in ("epsilon", "eta"):
            v = getattr(self, name)
            if isinstance(v, QuadReal) and v.is_rational:
                raise ValueError(f"{name} must be irrational, got {v}")
        e, h = self.epsilon, self.eta
        if isinstance(e, QuadReal) and isinstance(h, QuadReal) and e.same_field(h) and e == h:
            raise ValueError("epsilon == eta: the projection is not one-to-one")

    @property
    def exact(self) -> bool:
        return all(
            isinstance(v, QuadReal) for v in (self.epsilon, self.eta, self.window.c, self.window.ell)
        )

    def require_exact(self) -> None:
        if not self.exact:
            raise NonExactParameterError("this operation requires exact (quadratic) parameters")

    def star(self, p: LatticePoint | tuple[int, int]) -> RealParam:
        return self.epsilon * p[1] + p[0]

    def phys(self, p: LatticePoint | tuple[int, int]) -> RealParam:
        return self.eta * p[1] + p[0]

    def contains(self, p: LatticePoint | tuple[int, int]) -> bool:
        return self.window.contains(self.star(p))

    def with_window(self, c: RealParam, ell: RealParam) -> CapParams:
        return replace(self, window=WindowSpec(c, ell))


class LatticePoint(NamedTuple):
    a: int
    b: int

    def __add__(self, other: tuple[int, int]) -> LatticePoint:  # type: ignore[override]
        return LatticePoint(self.a + other[0], self.b + other[1])

    def __sub__(self, other: tuple[int, int]) -> LatticePoint:
        return LatticePoint(self.a - other[0], self.b - other[1])

    def __neg__(self) -> LatticePoint:
        return LatticePoint(-self.a, -self.b)


def fibonacci_params() -> CapParams:
    from .quadfield import TAU, TAU_CONJ

    return CapParams(TAU_CONJ, TAU, WindowSpec(0, 1))


def mechanical_params(alpha: QuadReal, beta: RealParam, eta: RealParam) -> tuple[CapParams, int]:
    """Parameters for ``Sigma_{-alpha,eta}((beta-1, beta])`` in half-open-right form.

    Returns ``(params, scale)`` with the original set equal to
    ``scale * Sigma(params)``; the point ``floor(n*alpha+beta) + n*eta`` of the
    original set is ``-(a, b)`` for the lattice point ``(a, b) = (-floor(..), -n)``.
    """
    window, scale = WindowSpec.from_left_open(as_real(beta) - 1, beta)
    return CapParams(-as_real(alpha), eta, window), scale


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[lo, hi)``; empty when ``lo >= hi``."""

    lo: QuadReal
    hi: QuadReal

    @property
    def empty(self) -> bool:
        return not self.lo < self.hi

    def contains(self, s: QuadReal) -> bool:
        return self.lo <= s < self.hi

    def shift(self, t: QuadReal) -> Interval:
        return Interval(self.lo + t, self.hi + t)


# ---------------------------------------------------------------------------
# direct enumeration (oracle)


class _Linear:
    """Exact ``a + b*x`` tests against constants with a float pre-filter.

    Doubles decide whenever the float value is farther from the threshold
    than a generous bound on its rounding error; otherwise the exact
    QuadReal comparison runs.
    """

    __slots__ = ("x", "xf")

    def __init__(self, x: QuadReal) -> None:
        self.x = x
        self.xf = float(x)

    def less(self, a: int, b: int, k: QuadReal, kf: float) -> bool:
        bx = b * self.xf
        f = a + bx - kf
        tol = 1e-12 * (1.0 + abs(a) + abs(bx) + abs(kf))
        if f < -tol:
            return True
        if f > tol:
            return False
        return self.x * b + a < k

    def positive(self, a: int, b: int) -> bool:
        bx = b * self.xf
        f = a + bx
        tol = 1e-12 * (1.0 + abs(a) + abs(bx))
        if f > tol:
            return True
        if f < -tol:
            return False
        return (self.x * b + a).sign() > 0

    def ceil_shifted(self, k: QuadReal, kf: float, b: int) -> int:
        """``ceil(k - b*x)``."""
        bx = b * self.xf
        f = kf - bx
        tol = 1e-12 * (1.0 + abs(kf) + abs(bx))
        c = math.ceil(f)
        if c - f > tol and f - (c - 1) > tol:
            return c
        return (k - self.x * b).ceil()


def _phys_key(params: CapParams, p: LatticePoint) -> float:
    return float(params.eta) * p.b + p.a


def _sort_by_phys(params: CapParams, pts: list[LatticePoint]) -> list[LatticePoint]:
    pts.sort(key=lambda p: _phys_key(params, p))
    # floats only order the list; adjacent pairs are then certified
    lin = _Linear(params.eta) if isinstance(params.eta, QuadReal) else None
    for i in range(len(pts) - 1):
        p, q = pts[i], pts[i + 1]
        if lin is not None:
            ordered = lin.positive(q.a - p.a, q.b - p.b)
        else:
            ordered = params.phys(p) < params.phys(q)
        if not ordered:
            def cmp(x: LatticePoint, y: LatticePoint) -> int:
                d = params.phys(x) - params.phys(y)
                return d.sign()

            pts.sort(key=functools.cmp_to_key(cmp))
            break
    return pts


def enumerate_direct(params: CapParams, b_range: Iterable[int] | tuple[int, int]) -> list[LatticePoint]:
    """All lattice points with ``b`` in ``b_range`` whose star lies in the window.

    ``b_range`` is either an iterable of integers or an inclusive pair
    ``(b_lo, b_hi)``.  The result is sorted by increasing phys value.
    """
    if isinstance(b_range, tuple) and len(b_range) == 2:
        b_iter: Iterable[int] = range(b_range[0], b_range[1] + 1)
    else:
        b_iter = b_range
    c, right, eps = params.window.c, params.window.right, params.epsilon
    pts: list[LatticePoint] = []
    exact = params.exact
    if exact:
        lin = _Linear(eps)
        cf, rf = float(c), float(right)
    for b in b_iter:
        # c <= a + b eps < right
        if exact:
            a_lo = lin.ceil_shifted(c, cf, b)
            a_hi = lin.ceil_shifted(right, rf, b) - 1
        else:
            shift = eps * b
            a_lo = (c - shift).ceil()
            a_hi = (right - shift).ceil() - 1
        for a in range(a_lo, a_hi + 1):
            pts.append(LatticePoint(a, b))
    return _sort_by_phys(params, pts)


def _b_bounds_for_phys(params: CapParams, lo: RealParam, hi: RealParam) -> tuple[int, int]:
    # phys = star + b*(eta - eps) with star in [c, c+ell)
    kappa = float(params.eta) - float(params.epsilon)
    s_lo, s_hi = float(params.window.c), float(params.window.right)
    lo_f, hi_f = float(lo), float(hi)
    ends = [(lo_f - s_hi) / kappa, (hi_f - s_lo) / kappa]
    return int(mpmath.floor(min(ends))) - 2, int(mpmath.ceil(max(ends))) + 2


def enumerate_phys_interval(params: CapParams, lo: RealParam, hi: RealParam) -> list[LatticePoint]:
    """Direct enumeration of all points with ``lo <= phys <= hi``."""
    b_lo, b_hi = _b_bounds_for_phys(params, lo, hi)
    pts = enumerate_direct(params, (b_lo, b_hi))
    return [p for p in pts if lo <= params.phys(p) <= hi]


# ---------------------------------------------------------------------------
# gaps and the exchange map


@dataclass(frozen=True)
class GapStructure:
    params: CapParams
    delta1: LatticePoint
    delta2: LatticePoint
    omega_A: Interval
    omega_B: Interval
    omega_C: Interval
    binary: bool

    @property
    def delta1_star(self) -> QuadReal:
        return self.params.star(self.delta1)

    @property
    def delta2_star(self) -> QuadReal:
        return self.params.star(self.delta2)

    @property
    def delta1_phys(self) -> QuadReal:
        return self.params.phys(self.delta1)

    @property
    def delta2_phys(self) -> QuadReal:
        return self.params.phys(self.delta2)

    @property
    def alphabet(self) -> str:
        return "AB" if self.binary else "ABC"

    @property
    def branch_points(self) -> tuple[QuadReal, ...]:
        """Interior discontinuities of the exchange map (one when binary)."""
        if self.binary:
            return (self.omega_A.hi,)
        return (self.omega_A.hi, self.omega_B.hi)

    def letter(self, branch: str) -> str:
        if self.binary and branch == "C":
            return "B"
        return branch

    def gap_for_letter(self, letter: str) -> LatticePoint:
        if letter == "A":
            return self.delta1
        if letter == "B" and not self.binary:
            return self.delta1 + self.delta2
        return self.delta2

    def forward_star(self, s: QuadReal) -> tuple[QuadReal, str]:
        if self.omega_A.contains(s):
            return s + self.delta1_star, "A"
        if self.omega_C.contains(s):
            return s + self.delta2_star, self.letter("C")
        if self.omega_B.contains(s):
            return s + self.delta1_star + self.delta2_star, "B"
        raise ValueError(f"star value {s} is outside the window")

    def backward_star(self, s: QuadReal) -> tuple[QuadReal, str]:
        d1, d2 = self.delta1_star, self.delta2_star
        c, right = self.params.window.c, self.params.window.right
        if not c <= s < right:
            raise ValueError(f"star value {s} is outside the window")
        # images: C -> [c, right+d2), B -> [right+d2, c+d1), A -> [c+d1, right)
        if s < right + d2:
            return s - d2, self.letter("C")
        if s < c + d1:
            return s - d1 - d2, "B"
        return s - d1, "A"


def _min_positive_gap(params: CapParams, positive_star: bool) -> LatticePoint:
    """Smallest positive-phys lattice vector with star in (0, ell) or (-ell, 0)."""
    eps, eta, ell = params.epsilon, params.eta, params.window.ell
    kappa = abs(float(eta) - float(eps))
    budget = search_budget()
    best: LatticePoint | None = None
    best_phys: QuadReal | None = None
    bound = None
    for n in itertools.count():
        if n > budget:
            raise BudgetExhaustedError("gap search exceeded APERIODICA_BUDGET")
        if bound is not None and n > bound:
            break
        for b in ((0,) if n == 0 else (n, -n)):
            se = eps * b
            if positive_star:
                a_lo, a_hi = (-se).floor() + 1, (ell - se).ceil() - 1
            else:
                a_lo, a_hi = (-ell - se).floor() + 1, (-se).ceil() - 1
            a = max(a_lo, (-(eta * b)).floor() + 1)
            if a > a_hi:
                continue
            cand = LatticePoint(a, b)
            ph = params.phys(cand)
            if best_phys is None or ph < best_phys:
                best, best_phys = cand, ph
                # phys = star + b*kappa with |star| < ell, so larger |b| cannot win
                bound = int((float(best_phys) + float(ell)) / kappa * (1 + 1e-9)) + 2
    assert best is not None
    return best


def compute_gaps(params: CapParams) -> GapStructure:
    """Certified gaps Delta1, Delta2 and the star-space partition of the window."""
    params.require_exact()
    d1 = _min_positive_gap(params, True)
    d2 = _min_positive_gap(params, False)
    c, ell = params.window.c, params.window.ell
    d1s, d2s = params.star(d1), params.star(d2)
    right = c + ell
    b_lo, b_hi = right - d1s, c - d2s
    if b_hi < b_lo:
        raise AssertionError("gap search returned inconsistent gaps")
    g = GapStructure(
        params=params,
        delta1=d1,
        delta2=d2,
        omega_A=Interval(c, b_lo),
        omega_B=Interval(b_lo, b_hi),
        omega_C=Interval(b_hi, right),
        binary=(b_lo == b_hi),
    )
    _check_exchange(g)
    return g


def _check_exchange(g: GapStructure) -> None:
    """The shifted branches must tile the window: C-image, B-image, A-image."""
    d1s, d2s = g.delta1_star, g.delta2_star
    images = [g.omega_C.shift(d2s), g.omega_B.shift(d1s + d2s), g.omega_A.shift(d1s)]
    c, right = g.params.window.c, g.params.window.right
    if images[0].lo != c or images[-1].hi != right:
        raise AssertionError("exchange map does not cover the window")
    for left, nxt in zip(images, images[1:]):
        if left.hi != nxt.lo:
            raise AssertionError("exchange map images do not abut")
    for im in images:
        if im.hi < im.lo:
            raise AssertionError("negative-length exchange interval")


def exchange_step(
    g: GapStructure, x: LatticePoint | tuple[int, int], direction: str = "forward"
) -> tuple[LatticePoint, str]:
    """Neighbour of ``x`` and the letter of the gap between them."""
    x = LatticePoint(*x)
    s = g.params.star(x)
    if direction == "forward":
        _, letter = g.forward_star(s)
        return x + g.gap_for_letter(letter), letter
    if direction == "backward":
        _, letter = g.backward_star(s)
        return x - g.gap_for_letter(letter), letter
    raise ValueError("direction must be 'forward' or 'backward'")


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class Segment:
    params: CapParams
    gaps: GapStructure
    points: list[LatticePoint]
    word: Word

    def phys_values(self) -> list[QuadReal]:
        return [self.params.phys(p) for p in self.points]


def find_seed(params: CapParams) -> LatticePoint:
    """Point of the set with smallest ``|phys|`` (ties go to the non-negative one)."""
    c, right, eps, eta = params.window.c, params.window.right, params.epsilon, params.eta
    kappa = abs(float(eta) - float(eps))
    m = max(abs(float(c)), abs(float(right)))
    budget = search_budget()
    best: LatticePoint | None = None
    best_key: tuple[QuadReal, int] | None = None
    for n in itertools.count():
        if n > budget:
            raise BudgetExhaustedError("seed search exceeded APERIODICA_BUDGET")
        if best_key is not None and n * kappa - m > float(best_key[0]) * (1 + 1e-9) + 1e-12:
            break
        for b in ((0,) if n == 0 else (n, -n)):
            se = eps * b
            for a in range((c - se).ceil(), (right - se).ceil()):
                p = LatticePoint(a, b)
                ph = params.phys(p)
                key = (abs(ph), 0 if ph >= 0 else 1)
                if best_key is None or key < best_key:
                    best, best_key = p, key
    assert best is not None
    return best


def _walk_exact(g: GapStructure, x: LatticePoint, steps: int, forward: bool) -> tuple[list[LatticePoint], str]:
    """Walk with the star value tracked as the lattice point itself: star = a + b*eps."""
    params = g.params
    if not params.contains(x):
        raise ValueError("starting point is not in the set")
    lin = _Linear(params.epsilon)
    c, right = params.window.c, params.window.right
    if forward:
        # A below t1, C from t2 on, B in between
        t1, t2 = g.omega_A.hi, g.omega_C.lo
        order = ("A", g.letter("C"), "B")
    else:
        # C-image below t1, B-image below t2, A-image above
        t1, t2 = right + g.delta2_star, c + g.delta1_star
        order = (g.letter("C"), "A", "B")
    t1f, t2f = float(t1), float(t2)
    gap = {ch: g.gap_for_letter(ch) for ch in g.alphabet}
    sgn = 1 if forward else -1
    a, b = x
    pts: list[LatticePoint] = []
    letters: list[str] = []
    for _ in range(steps):
        if lin.less(a, b, t1, t1f):
            letter = order[0]
        elif not lin.less(a, b, t2, t2f):
            letter = order[1]
        else:
            letter = order[2]
        da, db = gap[letter]
        a, b = a + sgn * da, b + sgn * db
        pts.append(LatticePoint(a, b))
        letters.append(letter)
    return pts, "".join(letters)


def _walk(g: GapStructure, x: LatticePoint, steps: int, forward: bool) -> tuple[list[LatticePoint], str]:
    if g.params.exact:
        return _walk_exact(g, x, steps, forward)
    pts: list[LatticePoint] = []
    letters: list[str] = []
    s = g.params.star(x)
    if not g.params.window.contains(s):
        raise ValueError("starting point is not in the set")
    gap = {ch: g.gap_for_letter(ch) for ch in g.alphabet}
    step = g.forward_star if forward else g.backward_star
    a, b = x
    for _ in range(steps):
        s, letter = step(s)
        da, db = gap[letter]
        if forward:
            a, b = a + da, b + db
        else:
            a, b = a - da, b - db
        pts.append(LatticePoint(a, b))
        letters.append(letter)
    return pts, "".join(letters)


def generate_from(
    g: GapStructure, seed: LatticePoint, count_left: int, count_right: int
) -> Segment:
    if count_left < 0 or count_right < 0:
        raise ValueError("counts must be non-negative")
    right_pts, right_word = _walk(g, seed, count_right, True)
    left_pts, left_word = _walk(g, seed, count_left, False)
    points = left_pts[::-1] + [seed] + right_pts
    word = Word(left_word[::-1] + right_word, count_left)
    return Segment(g.params, g, points, word)


def generate_segment(
    params: CapParams,
    count_left: int,
    count_right: int,
    gaps: GapStructure | None = None,
) -> Segment:
    """Generate ``count_left`` neighbours left and ``count_right`` right of the seed.

    The seed is the point of smallest ``|phys|``; the word's origin marker sits
    at the seed.  Two-gap sets use the alphabet ``{A, B}`` with A the larger gap.
    """
    g = gaps if gaps is not None else compute_gaps(params)
    return generate_from(g, find_seed(params), count_left, count_right)


# ---------------------------------------------------------------------------
# normalization to condition (P)


def condition_p_failures(params: CapParams) -> list[str]:
    """Names of the failing clauses of condition (P); empty when it holds."""
    params.require_exact()
    eps, eta, ell = params.epsilon, params.eta, params.window.ell
    failed = []
    if not (-1 < eps < 0):
        failed.append("epsilon in (-1, 0)")
    if not eta > 0:
        failed.append("eta > 0")
    if not (max(1 + eps, -eps) < ell):
        failed.append("max(1+epsilon, -epsilon) < |window|")
    if not ell <= 1:
        failed.append("|window| <= 1")
    return failed


Matrix = tuple[tuple[int, int], tuple[int, int]]

def _SHIFT(k: int) -> Matrix:
    """epsilon -> epsilon + k"""
    return ((1, k), (0, 1))


_INVERT: Matrix = ((0, 1), (1, 0))  # epsilon -> 1/epsilon
_NEGATE: Matrix = ((1, 0), (0, -1))  # epsilon -> -epsilon


def _matmul(m: Matrix, n: Matrix) -> Matrix:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def _compose(*ms: Matrix) -> Matrix:
    out: Matrix = ((1, 0), (0, 1))
    for m in ms:
        out = _matmul(out, m)
    return out


# elementary moves of the reduction, as lattice substitutions
_G1 = _compose(_INVERT, _SHIFT(1))  # x -> 1 + 1/x
_G2 = _compose(_SHIFT(1), _INVERT, _NEGATE, _SHIFT(1))  # x -> x/(x+1)
_G1_INV = _compose(_SHIFT(-1), _INVERT)  # y -> 1/(y-1)
_G2_INV = _compose(_NEGATE, _SHIFT(1), _INVERT, _SHIFT(-1))  # y -> y/(1-y)
_REFLECT = _compose(_NEGATE, _SHIFT(-1))  # x -> -1 - x


def _transformed(params: CapParams, m: Matrix) -> tuple[CapParams, QuadReal, Matrix]:
    """Parameters, scale and sign-fixed matrix after substituting ``(a,b) = M (a',b')``."""
    eps, eta = params.epsilon, params.eta
    t = eps * m[1][0] + m[0][0]
    if t < 0:
        m = ((-m[0][0], -m[0][1]), (-m[1][0], -m[1][1]))
        t = -t
    s = eta * m[1][0] + m[0][0]
    new_eps = (eps * m[1][1] + m[0][1]) / t
    new_eta = (eta * m[1][1] + m[0][1]) / s
    win = WindowSpec(params.window.c / t, params.window.ell / t)
    return CapParams(new_eps, new_eta, win), s, m


@dataclass(frozen=True)
class Normalization:
    """Result of :func:`normalize`.

    ``original == scale * Sigma(params)``; the lattice point ``p`` of the
    normalized set corresponds to ``matrix @ p`` of the original one.
    ``word_params`` additionally has epsilon in (-1/2, 0); its word equals the
    word of ``params`` after renaming letters by ``letter_permutation``.
    """

    params: CapParams
    scale: QuadReal
    matrix: Matrix
    word_params: CapParams
    letter_permutation: dict[str, str] = field(default_factory=dict)

    def to_original(self, p: tuple[int, int]) -> LatticePoint:
        m = self.matrix
        return LatticePoint(m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def _letter_permutation(u: CapParams, v: CapParams, n: int = 8, length: int = 600) -> dict[str, str]:
    """Letter renaming taking the language of ``u`` onto the language of ``v``."""
    from .words import factor_set

    wu = generate_segment(u, length, length).word.letters
    wv = generate_segment(v, length, length).word.letters
    alphabet = sorted(set(wu))
    target = factor_set(wv, n)
    for perm in itertools.permutations(sorted(set(wv))):
        if len(perm) != len(alphabet):
            continue
        table = dict(zip(alphabet, perm))
        renamed = "".join(table[ch] for ch in wu)
        if factor_set(renamed, n) == target:
            return table
    raise NormalizationError("no letter permutation relates the two words")


def normalize(params: CapParams, *, with_word_params: bool = True) -> Normalization:
    """Bring parameters to condition (P) by lattice substitutions.

    The substitutions are the generators of GL(2, Z) acting on the slopes by
    Moebius maps; each step rescales the set by the phys factor.  The loop
    first separates epsilon into (-1, 0) and eta into (0, inf), then moves
    along the Farey tree until the window length condition holds.
    """
    params.require_exact()
    m: Matrix = ((1, 0), (0, 1))
    budget = search_budget()

    def current() -> tuple[CapParams, QuadReal, Matrix]:
        return _transformed(params, m)

    for it in itertools.count():
        if it > budget:
            raise BudgetExhaustedError("normalization exceeded APERIODICA_BUDGET")
        p, _, _ = current()
        eps, eta = p.epsilon, p.eta
        k = -eps.floor() - 1
        if k:
            m = _matmul(m, _SHIFT(k))
            continue
        if eta > 0:
            break
        if eta < -1:
            m = _matmul(m, _REFLECT)
            break
        m = _matmul(m, _G1 if eps < Fraction(-1, 2) else _G2)

    for it in itertools.count():
        if it > budget:
            raise BudgetExhaustedError("normalization exceeded APERIODICA_BUDGET")
        p, _, _ = current()
        eps, eta, ell = p.epsilon, p.eta, p.window.ell
        if ell > 1:
            m = _matmul(m, _G1_INV if eta > 1 else _G2_INV)
        elif ell <= max(1 + eps, -eps):
            m = _matmul(m, _G1 if eps < Fraction(-1, 2) else _G2)
        else:
            break

    p, s, m = current()
    failed = condition_p_failures(p)
    if failed:
        raise NormalizationError(f"condition (P) fails after reduction: {', '.join(failed)}")

    word_params, perm = p, {ch: ch for ch in "ABC"}
    if p.epsilon < Fraction(-1, 2):
        c, ell = p.window.c, p.window.ell
        word_params = CapParams(-1 - p.epsilon, p.eta, WindowSpec(-c - ell, ell))
        if with_word_params:
            perm = _letter_permutation(p, word_params)
    return Normalization(p, s, m, word_params, perm)


# ---------------------------------------------------------------------------
# geometric witnesses


def check_delone(points: Sequence[LatticePoint], eta: RealParam) -> tuple[RealParam, RealParam]:
    """``(min gap, max gap)`` between consecutive points of a sorted segment."""
    if len(points) < 2:
        raise ValueError("need at least two points")
    eta = as_real(eta)
    gaps = {LatticePoint(q.a - p.a, q.b - p.b) for p, q in zip(points, points[1:])}
    values = [eta * g.b + g.a for g in gaps]
    return min(values), max(values)


def aperiodicity_witness(
    points: Sequence[LatticePoint], eta: RealParam, candidates: int = 50
) -> bool:
    """True when no translation ``p_j - p_0`` maps the segment into itself."""
    eta = as_real(eta)
    present = set(points)
    last = eta * points[-1].b + points[-1].a
    for q in points[1 : candidates + 1]:
        t = LatticePoint(q.a - points[0].a, q.b - points[0].b)
        periodic = True
        for p in points:
            moved = LatticePoint(p.a + t.a, p.b + t.b)
            if eta * moved.b + moved.a > last:
                break
            if moved not in present:
                periodic = False
                break
        if periodic:
            return False
    return True


# ---------------------------------------------------------------------------
# serialization


def _param_json(x: RealParam) -> object:
    if isinstance(x, QuadReal):
        return to_json(x)
    return {"decimal": mpmath.nstr(x.mid, 40), "prec": x.prec}


def params_to_json(params: CapParams) -> dict[str, object]:
    return {
        "epsilon": _param_json(params.epsilon),
        "eta": _param_json(params.eta),
        "window": {"c": _param_json(params.window.c), "ell": _param_json(params.window.ell)},
    }


def segment_to_json(seg: Segment) -> dict[str, object]:
    return {
        "params": params_to_json(seg.params),
        "gaps": {
            "delta1": {"a": seg.gaps.delta1.a, "b": seg.gaps.delta1.b},
            "delta2": {"a": seg.gaps.delta2.a, "b": seg.gaps.delta2.b},
        },
        "points": [
            {"a": p.a, "b": p.b, "phys_decimal": mpmath.nstr(seg.params.phys(p).to_mpf(), 25)}
            for p in seg.points
        ],
        "word": str(seg.word),
    }


def iter_points(g: GapStructure, seed: LatticePoint) -> Iterator[LatticePoint]:
    """Endless forward walk from ``seed``."""
    s = g.params.star(seed)
    x = seed
    while True:
        yield x
        s, letter = g.forward_star(s)
        x = x + g.gap_for_letter(letter)
