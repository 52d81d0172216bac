"""Morphisms of free monoids, their fixed points, and invariance tests.

A morphism is stored as a map letter -> nonempty image.  Fixed points are
grown two-sided from a seed pair ``b0|a0``; each iterate is checked to
extend the previous one, so a bad seed is caught immediately instead of
producing a word that only looks right.

Densities come from the Perron eigenvector of the transposed incidence
matrix.  Two-letter alphabets are solved exactly in a quadratic field; larger
ones use rational power iteration with an error bound from Birkhoff's
contraction coefficient in the Hilbert projective metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath
import numpy as np

from .capset import CapParams, LatticePoint, generate_segment
from .quadfield import (
    DecimalParam,
    QuadReal,
    RealParam,
    as_real,
    squarefree_decomposition,
)
from .words import Word

__all__ = [
    "Morphism",
    "SubstitutionCheck",
    "SturmVerdict",
    "InvarianceVerdict",
    "TernaryVerdict",
    "Densities",
    "FixedPointError",
    "apply",
    "is_substitution",
    "fixed_point",
    "incidence",
    "is_primitive",
    "perron_densities",
    "is_sturm_number",
    "mechanical_invariance",
    "ternary_necessary_conditions",
    "selfsimilarity_check",
    "search_fixing_morphism",
]


class FixedPointError(ValueError):
    """Iterates of the seed pair are not prefix/suffix compatible."""


@dataclass(frozen=True)
class Morphism:
    alphabet: tuple[str, ...]
    images: Mapping[str, str] = field(hash=False)

    def __post_init__(self) -> None:
        if set(self.alphabet) != set(self.images):
            raise ValueError("images must be given for exactly the alphabet letters")
        for a, img in self.images.items():
            if len(a) != 1:
                raise ValueError(f"letters must be single characters, got {a!r}")
            if not img:
                raise ValueError(f"image of {a!r} is empty")
            bad = set(img) - set(self.alphabet)
            if bad:
                raise ValueError(f"image of {a!r} uses letters outside the alphabet: {sorted(bad)}")

    @classmethod
    def from_dict(cls, images: Mapping[str, str]) -> Morphism:
        letters = set(images)
        for img in images.values():
            letters |= set(img)
        return cls(tuple(sorted(letters)), dict(images))

    @classmethod
    def parse(cls, text: str) -> Morphism:
        """Read ``"A->AAB;B->AB"``; the alphabet is ordered as the rules appear."""
        images: dict[str, str] = {}
        for rule in filter(None, (r.strip() for r in text.split(";"))):
            lhs, arrow, rhs = rule.partition("->")
            lhs, rhs = lhs.strip(), rhs.strip()
            if not arrow or len(lhs) != 1:
                raise ValueError(f"cannot parse rule {rule!r}")
            if lhs in images:
                raise ValueError(f"letter {lhs!r} defined twice")
            images[lhs] = rhs
        if not images:
            raise ValueError("empty morphism")
        return cls(tuple(images), images)

    @classmethod
    def identity(cls, alphabet: Iterable[str]) -> Morphism:
        letters = tuple(alphabet)
        return cls(letters, {a: a for a in letters})

    def __str__(self) -> str:
        return ";".join(f"{a}->{self.images[a]}" for a in self.alphabet)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return dict(self.images) == dict(other.images)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.images.items())))

    def image(self, letters: str) -> str:
        try:
            return "".join(self.images[ch] for ch in letters)
        except KeyError as exc:
            raise ValueError(f"letter {exc.args[0]!r} not in the alphabet") from None

    def __call__(self, w: Word | str) -> Word:
        return apply(self, w)

    def compose(self, other: Morphism) -> Morphism:
        """``self o other``: apply ``other`` first."""
        return Morphism(other.alphabet, {a: self.image(other.images[a]) for a in other.alphabet})

    def power(self, n: int) -> Morphism:
        if n < 0:
            raise ValueError("negative power")
        out = Morphism.identity(self.alphabet)
        for _ in range(n):
            out = self.compose(out)
        return out


def apply(m: Morphism, w: Word | str) -> Word:
    """Image of a pointed word; the origin stays between the images of u_-1 and u_0."""
    if isinstance(w, str):
        w = Word.parse(w)
    left = m.image(w.left)
    return Word(left + m.image(w.right), len(left))


@dataclass(frozen=True)
class SubstitutionCheck:
    ok: bool
    a0: str | None
    b0: str | None
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_substitution(m: Morphism) -> SubstitutionCheck:
    """Look for a0 with phi(a0) = a0... and b0 with phi(b0) = ...b0, both images of length >= 2."""
    a0 = next((a for a in m.alphabet if len(m.images[a]) >= 2 and m.images[a][0] == a), None)
    b0 = next((b for b in m.alphabet if len(m.images[b]) >= 2 and m.images[b][-1] == b), None)
    failed = None
    if a0 is None:
        failed = "no letter a0 whose image (length >= 2) starts with a0"
    elif b0 is None:
        failed = "no letter b0 whose image (length >= 2) ends with b0"
    return SubstitutionCheck(failed is None, a0, b0, failed)


def fixed_point(m: Morphism, a0: str, b0: str, min_length: int) -> Word:
    """Iterate ``phi`` on ``b0|a0`` until both sides have at least ``min_length`` letters."""
    if a0 not in m.images or b0 not in m.images:
        raise ValueError("seed letters must be in the alphabet")
    left, right = b0, a0
    while len(left) < min_length or len(right) < min_length:
        new_left, new_right = m.image(left), m.image(right)
        if not new_right.startswith(right) or not new_left.endswith(left):
            raise FixedPointError(f"iterates of {b0}|{a0} are not compatible")
        if len(new_left) == len(left) and len(new_right) == len(right):
            raise FixedPointError(f"iterates of {b0}|{a0} stopped growing")
        left, right = new_left, new_right
    return Word(left + right, len(left))


def incidence(m: Morphism) -> np.ndarray:
    """``M[i, j]`` is the number of ``alphabet[j]`` in ``phi(alphabet[i])``."""
    idx = {a: i for i, a in enumerate(m.alphabet)}
    M = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for a, img in m.images.items():
        for ch in img:
            M[idx[a], idx[ch]] += 1
    return M


def _primitive_exponent(M: np.ndarray) -> int | None:
    M = np.asarray(M)
    k = M.shape[0]
    if M.shape != (k, k) or (M < 0).any():
        raise ValueError("expected a square non-negative matrix")
    pattern = (M > 0).astype(np.int64)
    P = pattern.copy()
    for p in range(1, (k - 1) ** 2 + 2):
        if P.all():
            return p
        P = ((P @ pattern) > 0).astype(np.int64)
    return None


def is_primitive(M: np.ndarray) -> bool:
    """True when some power up to ``(k-1)^2 + 1`` has all entries positive."""
    return _primitive_exponent(M) is not None


@dataclass(frozen=True)
class Densities:
    """Letter densities; ``radius`` bounds the error of each entry (0 when exact)."""

    alphabet: tuple[str, ...] | None
    values: tuple[QuadReal | Fraction, ...]
    radius: Fraction

    @property
    def exact(self) -> bool:
        return self.radius == 0

    def __getitem__(self, i: int) -> QuadReal | Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.values]


def _quadratic_densities(A: np.ndarray) -> tuple[QuadReal, QuadReal]:
    p, r = int(A[0, 0]), int(A[0, 1])
    s, t = int(A[1, 0]), int(A[1, 1])
    tr, det = p + t, p * t - r * s
    disc = tr * tr - 4 * det
    f, D = squarefree_decomposition(disc)
    lam = QuadReal(Fraction(tr, 2)) + (QuadReal(Fraction(f, 2), 0) if D == 1 else QuadReal(0, Fraction(f, 2), D))
    # (p - lam) x1 + r x2 = 0; r > 0 for a primitive 2x2 matrix
    x1, x2 = QuadReal(r), lam - p
    total = x1 + x2
    return x1 / total, x2 / total


def _birkhoff_kappa(P: list[list[int]]) -> mpmath.mpf:
    """Contraction coefficient ``tanh(diam/4)`` of a positive matrix in the Hilbert metric."""
    k = len(P)
    diam = mpmath.mpf(0)
    for i, j, a, b in itertools.product(range(k), repeat=4):
        diam = max(diam, mpmath.log(mpmath.mpf(P[i][a] * P[j][b]) / (P[i][b] * P[j][a])))
    return mpmath.tanh(diam / 4)


def _hilbert_bound(P: list[list[int]], kappa: mpmath.mpf, x: list[Fraction]) -> mpmath.mpf:
    """Upper bound on ``max |x_i - v_i|`` for the normalized Perron vector v of P."""
    k = len(x)
    Px = [sum(P[i][j] * x[j] for j in range(k)) for i in range(k)]
    ratios = [mpmath.mpf(Px[i].numerator * x[i].denominator) / (Px[i].denominator * x[i].numerator) for i in range(k)]
    step = mpmath.log(max(ratios)) - mpmath.log(min(ratios))
    # d(x, v) <= d(x, Px) / (1 - kappa); a Hilbert distance delta moves
    # normalized entries by at most expm1(delta)
    return mpmath.expm1(step / (1 - kappa))


def perron_densities(M: np.ndarray, alphabet: Iterable[str] | None = None, tol: float = 1e-12) -> Densities:
    """Densities ``x_i / sum(x)`` for the Perron eigenvector x of ``M^T``.

    Exact for two letters.  For more letters the returned rationals sum to 1
    and each lies within ``radius`` of the true density, with ``2*radius < tol``
    (the certified interval is narrower than ``tol``).
    """
    M = np.asarray(M, dtype=np.int64)
    letters = tuple(alphabet) if alphabet is not None else None
    p = _primitive_exponent(M)
    if p is None:
        raise ValueError("incidence matrix is not primitive")
    A = M.T
    k = A.shape[0]
    if k == 1:
        return Densities(letters, (Fraction(1),), Fraction(0))
    if k == 2:
        return Densities(letters, _quadratic_densities(A), Fraction(0))
    Ap = np.linalg.matrix_power(A.astype(object), p)
    P = [[int(v) for v in row] for row in Ap]
    with mpmath.workprec(200):
        kappa = _birkhoff_kappa(P)
    x = [Fraction(1, k)] * k
    with mpmath.workprec(200):
        for _ in range(10_000):
            y = [sum(P[i][j] * x[j] for j in range(k)) for i in range(k)]
            total = sum(y)
            # rounding is harmless: the bound is computed from the final iterate itself
            x = [(v / total).limit_denominator(10**40) for v in y]
            bound = _hilbert_bound(P, kappa, x)
            man, exp = bound.man_exp
            # slack covers the mpmath rounding and the final renormalization
            radius = Fraction(man) * Fraction(2) ** exp + Fraction(k, 10**39)
            if 2 * radius < tol:
                x[-1] = 1 - sum(x[:-1])
                return Densities(letters, tuple(x), radius)
    raise ArithmeticError("power iteration did not reach the requested certificate")


@dataclass(frozen=True)
class SturmVerdict:
    is_sturm: bool
    alpha_conjugate: QuadReal
    witness: str

    def __bool__(self) -> bool:
        return self.is_sturm

    def to_json(self) -> dict[str, object]:
        return {"is_sturm": self.is_sturm, "alpha_conjugate": str(self.alpha_conjugate), "witness": self.witness}


def _check_slope(alpha: object) -> QuadReal:
    alpha = as_real(alpha)
    if not isinstance(alpha, QuadReal):
        raise ValueError("slope must be given exactly")
    if alpha.is_rational:
        raise ValueError("slope must be irrational")
    if not 0 < alpha < 1:
        raise ValueError("slope must lie in (0, 1)")
    return alpha


def is_sturm_number(alpha: QuadReal) -> SturmVerdict:
    alpha = _check_slope(alpha)
    ac = alpha.conjugate()
    inside = 0 < ac < 1
    witness = f"conjugate {ac} {'lies in' if inside else 'is outside'} (0, 1)"
    return SturmVerdict(not inside, ac, witness)


@dataclass(frozen=True)
class InvarianceVerdict:
    """``invariant`` is None when the answer cannot be decided from the given data."""

    invariant: bool | None
    clauses: dict[str, bool | None]
    alpha_conjugate: QuadReal
    beta_conjugate: QuadReal | None
    reason: str

    def to_json(self) -> dict[str, object]:
        return {
            "invariant": self.invariant,
            "clauses": dict(self.clauses),
            "alpha_conjugate": str(self.alpha_conjugate),
            "beta_conjugate": None if self.beta_conjugate is None else str(self.beta_conjugate),
            "reason": self.reason,
        }


def mechanical_invariance(alpha: QuadReal, beta: RealParam) -> InvarianceVerdict:
    """Decide whether the mechanical word with slope alpha and intercept beta is substitution invariant.

    Clauses: (i) alpha is a Sturm number, (ii) beta lies in Q(alpha),
    (iii) beta' lies between alpha' and 1 - alpha' (endpoints included).
    beta' is the conjugate of beta exactly as supplied, with no reduction mod 1.
    """
    alpha = _check_slope(alpha)
    beta = as_real(beta)
    if not 0 <= beta < 1:
        raise ValueError("intercept must lie in [0, 1)")
    sturm = is_sturm_number(alpha)
    ac = sturm.alpha_conjugate
    clauses: dict[str, bool | None] = {"i": sturm.is_sturm, "ii": None, "iii": None}
    if isinstance(beta, DecimalParam):
        return InvarianceVerdict(
            None if sturm.is_sturm else False,
            clauses,
            ac,
            None,
            "undecidable as given: intercept is not exact" if sturm.is_sturm else "slope is not a Sturm number",
        )
    clauses["ii"] = beta.same_field(alpha)
    bc = beta.conjugate() if clauses["ii"] else None
    if bc is not None:
        lo, hi = min(ac, 1 - ac), max(ac, 1 - ac)
        clauses["iii"] = lo <= bc <= hi
    failed = [name for name, ok in clauses.items() if ok is False]
    reason = "all clauses hold" if not failed else "failed clause(s): " + ", ".join(failed)
    return InvarianceVerdict(not failed, clauses, ac, bc, reason)


@dataclass(frozen=True)
class TernaryVerdict:
    possible: bool
    reason: str

    def __bool__(self) -> bool:
        return self.possible


def ternary_necessary_conditions(params: CapParams) -> TernaryVerdict:
    """Necessary conditions for a primitive substitution to fix the coding word.

    False certifies that no primitive substitution fixes it; True only says
    this test does not exclude it.
    """
    eps = params.epsilon
    if not isinstance(eps, QuadReal) or eps.is_rational:
        return TernaryVerdict(False, "epsilon not quadratic")
    for name, v in (("c", params.window.c), ("d", params.window.right)):
        if not isinstance(v, QuadReal):
            return TernaryVerdict(False, f"window endpoint {name} not exact")
        if not v.same_field(eps):
            return TernaryVerdict(False, f"window endpoint {name} outside Q(sqrt({eps.D}))")
    return TernaryVerdict(True, "epsilon quadratic and both endpoints in its field")


def _window_maps_into_itself(params: CapParams, f: QuadReal) -> bool:
    c, d = params.window.c, params.window.right
    if f > 0:
        # [f c, f d) inside [c, d)
        return c <= f * c and f * d <= d
    if f < 0:
        # (f d, f c] inside [c, d)
        return c <= f * d and f * c < d
    return False


def selfsimilarity_check(params: CapParams, factor: QuadReal, span: int = 200) -> bool:
    """Whether ``factor * Sigma`` is contained in ``Sigma``.

    Needs exact data with epsilon the conjugate of eta, so that the star map
    is the Galois conjugation; then ``factor * Sigma = Sigma(factor' * Omega)``
    and the test reduces to ``factor' * Omega`` lying inside ``Omega``.  The
    result is rechecked pointwise on a generated segment.
    """
    params.require_exact()
    factor = as_real(factor)
    if not isinstance(factor, QuadReal):
        raise ValueError("factor must be exact")
    eps, eta = params.epsilon, params.eta
    if not (eps.same_field(eta) and eps == eta.conjugate()):
        raise ValueError("epsilon must be the conjugate of eta")
    if factor.in_ring(eta) is None:
        # factor * (a + b eta) would leave Z + Z eta
        return False
    symbolic = factor != 0 and _window_maps_into_itself(params, factor.conjugate())
    seg = generate_segment(params, span, span)
    pointwise = True
    for pt in seg.points:
        coords = (factor * params.phys(pt)).in_ring(eta)
        if coords is None or not params.contains(LatticePoint(*coords)):
            pointwise = False
            break
    if symbolic and not pointwise:
        raise ArithmeticError("window inclusion holds but a scaled point left the set")
    return symbolic


def _fixes(table: Mapping[str, str], left: str, right: str) -> bool:
    img = []
    n = 0
    for ch in right:
        img.append(table[ch])
        n += len(table[ch])
        if n >= len(right):
            break
    if not "".join(img).startswith(right) and not right.startswith("".join(img)):
        return False
    img, n = [], 0
    for ch in reversed(left):
        img.append(table[ch])
        n += len(table[ch])
        if n >= len(left):
            break
    tail = "".join(reversed(img))
    return tail.endswith(left) or left.endswith(tail)


def search_fixing_morphism(w: Word, max_total: int = 12) -> Morphism | None:
    """Smallest non-trivial morphism on a two-letter alphabet fixing the segment around the origin.

    Total image length is capped at ``max_total``.  Finding one confirms
    invariance on the sampled window; finding none proves nothing.
    """
    letters = tuple(sorted(set(w.letters)))
    if len(letters) != 2:
        raise ValueError("expected a binary word")
    left, right = w.left, w.right
    for total in range(3, max_total + 1):
        for l0 in range(1, total):
            l1 = total - l0
            for img0 in itertools.product(letters, repeat=l0):
                s0 = "".join(img0)
                for img1 in itertools.product(letters, repeat=l1):
                    s1 = "".join(img1)
                    if _fixes({letters[0]: s0, letters[1]: s1}, left, right):
                        return Morphism(letters, {letters[0]: s0, letters[1]: s1})
    return None
