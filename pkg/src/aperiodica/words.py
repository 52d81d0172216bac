"""Finite segments of bidirectional words and their combinatorics.

Factor sets are computed by sliding windows over the letter string; the
empirical profiles are lower bounds that become exact once the segment is long
enough, which is checked by comparing against the central half of the
segment.  :func:`factor_complexity_exact` counts factors from the interval
exchange instead, with no sampling involved.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Sequence

from .quadfield import QuadReal, as_real

if TYPE_CHECKING:
    from .capset import GapStructure

__all__ = [
    "Word",
    "ComplexityProfile",
    "PalindromeProfile",
    "Decomposition",
    "UnsaturatedError",
    "mechanical_word",
    "factor_set",
    "factor_complexity_empirical",
    "factor_complexity_exact",
    "palindrome_profile",
    "mirror_closure_check",
    "recurrence_check",
    "quasisturmian_decompose",
    "saturated_profiles",
    "profiles_to_csv",
]


class UnsaturatedError(RuntimeError):
    """A profile changed when the segment was enlarged."""


@dataclass(frozen=True)
class Word:
    """Finite segment ``letters`` with the origin marker before ``letters[origin]``."""

    letters: str
    origin: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.origin <= len(self.letters):
            raise ValueError("origin index outside the word")

    @classmethod
    def parse(cls, text: str) -> Word:
        if text.count("|") > 1:
            raise ValueError("at most one origin marker allowed")
        left, bar, right = text.partition("|")
        if not bar:
            return cls(text, 0)
        return cls(left + right, len(left))

    def __str__(self) -> str:
        return self.letters[: self.origin] + "|" + self.letters[self.origin :]

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        # languages are translation invariant: compare letters only
        if isinstance(other, Word):
            return self.letters == other.letters
        if isinstance(other, str):
            return self.letters == other.replace("|", "")
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.letters)

    @property
    def left(self) -> str:
        return self.letters[: self.origin]

    @property
    def right(self) -> str:
        return self.letters[self.origin :]

    @property
    def alphabet(self) -> str:
        return "".join(sorted(set(self.letters)))

    def central(self, fraction: float = 0.5) -> Word:
        n = len(self.letters)
        keep = int(n * fraction)
        start = (n - keep) // 2
        origin = min(max(self.origin - start, 0), keep)
        return Word(self.letters[start : start + keep], origin)


def mechanical_word(alpha: QuadReal, beta: QuadReal, n_from: int, n_to: int) -> Word:
    """``u_n = floor((n+1) alpha + beta) - floor(n alpha + beta)`` for ``n_from <= n <= n_to``."""
    alpha, beta = as_real(alpha), as_real(beta)
    if not isinstance(alpha, QuadReal) or alpha.is_rational:
        raise ValueError("slope must be an exact irrational number")
    if not 0 < alpha < 1:
        raise ValueError("slope must lie in (0, 1)")
    if not 0 <= beta < 1:
        raise ValueError("intercept must lie in [0, 1)")
    prev = (alpha * n_from + beta).floor()
    out = []
    for n in range(n_from, n_to + 1):
        nxt = (alpha * (n + 1) + beta).floor()
        out.append("1" if nxt - prev else "0")
        prev = nxt
    origin = min(max(-n_from, 0), len(out))
    return Word("".join(out), origin)


def factor_set(letters: str, n: int) -> set[str]:
    return {letters[i : i + n] for i in range(len(letters) - n + 1)}


@dataclass(frozen=True)
class ComplexityProfile:
    """``values[n-1] == C(n)``."""

    values: tuple[int, ...]
    exact: bool
    saturated: bool | None = None

    def __getitem__(self, n: int) -> int:
        return self.values[n - 1]

    @property
    def n_max(self) -> int:
        return len(self.values)

    @property
    def periodic(self) -> bool:
        return any(x == y for x, y in zip(self.values, self.values[1:]))

    @property
    def nondecreasing(self) -> bool:
        return all(x <= y for x, y in zip(self.values, self.values[1:]))


@dataclass(frozen=True)
class PalindromeProfile:
    """``values[n-1] == P(n)``."""

    values: tuple[int, ...]
    saturated: bool | None = None

    def __getitem__(self, n: int) -> int:
        return self.values[n - 1]


def _check_length(w: Word, n_max: int) -> None:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if 4 * n_max > len(w.letters):
        raise ValueError(f"segment of length {len(w.letters)} is too short for n_max={n_max}")


def _counts(letters: str, n_max: int) -> list[int]:
    return [len(factor_set(letters, n)) for n in range(1, n_max + 1)]


def factor_complexity_empirical(w: Word, n_max: int) -> ComplexityProfile:
    _check_length(w, n_max)
    full = _counts(w.letters, n_max)
    half = w.central().letters
    saturated = None
    if len(half) >= 2 * n_max:
        saturated = _counts(half, n_max) == full
    return ComplexityProfile(tuple(full), exact=False, saturated=saturated)


def factor_complexity_exact(g: GapStructure, n_max: int) -> ComplexityProfile:
    """Factor counts from the itinerary partition of the interval exchange.

    The factor of length n read from star value x is fixed by which branch
    each of ``x, f(x), ..., f^{n-1}(x)`` falls in, so the cylinder boundaries
    are the backward orbits ``f^{-j}(beta)``, ``j < n``, of the branch points
    beta.  C(n) is one plus the number of distinct interior boundaries.
    """
    g.params.require_exact()
    c = g.params.window.c
    cuts: set[QuadReal] = set()
    orbit = list(g.branch_points)
    values = []
    for _ in range(n_max):
        for i, s in enumerate(orbit):
            if s != c:
                cuts.add(s)
            orbit[i] = g.backward_star(s)[0]
        values.append(1 + len(cuts))
    return ComplexityProfile(tuple(values), exact=True, saturated=True)


def _palindromes(letters: str, n_max: int) -> list[int]:
    out = []
    for n in range(1, n_max + 1):
        out.append(sum(1 for f in factor_set(letters, n) if f == f[::-1]))
    return out


def palindrome_profile(w: Word, n_max: int, require_saturated: bool = True) -> PalindromeProfile:
    """Distinct palindromic factors per length.

    With ``require_saturated`` the profile of the central half must agree
    with the full one, otherwise :class:`UnsaturatedError` is raised.
    """
    _check_length(w, n_max)
    full = _palindromes(w.letters, n_max)
    half = w.central().letters
    saturated = len(half) >= 2 * n_max and _palindromes(half, n_max) == full
    if require_saturated and not saturated:
        raise UnsaturatedError("palindrome profile changes between half and full segment")
    return PalindromeProfile(tuple(full), saturated)


def mirror_closure_check(w: Word | str, n_max: int) -> bool:
    letters = w.letters if isinstance(w, Word) else w
    for n in range(1, n_max + 1):
        fs = factor_set(letters, n)
        if any(f[::-1] not in fs for f in fs):
            return False
    return True


def recurrence_check(w: Word, n_max: int) -> dict[int, float]:
    """Largest distance between consecutive occurrences of any length-n factor.

    A factor seen only once contributes ``inf``.
    """
    letters = w.letters
    out: dict[int, float] = {}
    for n in range(1, n_max + 1):
        last: dict[str, int] = {}
        worst: dict[str, int] = {}
        for i in range(len(letters) - n + 1):
            f = letters[i : i + n]
            if f in last:
                worst[f] = max(worst.get(f, 0), i - last[f])
            last[f] = i
        out[n] = math.inf if len(worst) < len(last) else float(max(worst.values(), default=0))
    return out


@dataclass(frozen=True)
class Decomposition:
    """``u = ... W[v_-1] W[v_0] W[v_1] ...`` with ``v`` over {0, 1}."""

    W0: str
    W1: str
    v: Word
    anchor: str

    def expand(self) -> str:
        blocks = (self.W0, self.W1)
        return "".join(blocks[int(ch)] for ch in self.v.letters)


def _is_sturmian_prefix(letters: str, n_max: int) -> bool:
    return all(len(factor_set(letters, n)) == n + 1 for n in range(1, n_max + 1))


def quasisturmian_decompose(w: Word, n_check: int = 20, max_anchor: int = 4) -> Decomposition | None:
    """Two-block decomposition of ``w`` driven by a sturmian word, or None.

    Anchors are factors of length 1..max_anchor tried in decreasing
    frequency; an anchor succeeds when its occurrences cut ``w`` into exactly
    two distinct return words and the induced 0/1 word has complexity n+1
    up to ``n_check``.
    """
    letters = w.letters
    if len(set(letters)) == 2 and len(letters) >= 4 * n_check and _is_sturmian_prefix(letters, n_check):
        a, b = sorted(set(letters))
        v = Word(letters.replace(a, "0").replace(b, "1"), w.origin)
        return Decomposition(a, b, v, anchor="")
    for k in range(1, max_anchor + 1):
        freq = Counter(letters[i : i + k] for i in range(len(letters) - k + 1))
        for anchor, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0])):
            pos = [i for i in range(len(letters) - k + 1) if letters.startswith(anchor, i)]
            if len(pos) < 3:
                continue
            returns = [letters[p:q] for p, q in zip(pos, pos[1:])]
            kinds = Counter(returns)
            if len(kinds) != 2:
                continue
            (W0, _), (W1, _) = sorted(kinds.items(), key=lambda kv: (-kv[1], kv[0]))
            v_letters = "".join("0" if r == W0 else "1" for r in returns)
            if len(v_letters) < 4 * n_check:
                raise UnsaturatedError("segment too short to test the driving word")
            if _is_sturmian_prefix(v_letters, n_check):
                return Decomposition(W0, W1, Word(v_letters, 0), anchor)
    return None


def saturated_profiles(
    make_word: Callable[[int], Word],
    n_max: int,
    start_length: int = 1000,
    max_length: int = 256_000,
) -> tuple[ComplexityProfile, PalindromeProfile, Word]:
    """Double the segment until C and P up to ``n_max`` stop changing.

    ``make_word(L)`` must return a segment of about ``L`` letters.
    """
    length = max(start_length, 4 * n_max)
    prev: tuple[list[int], list[int]] | None = None
    while length <= max_length:
        w = make_word(length)
        cur = (_counts(w.letters, n_max), _palindromes(w.letters, n_max))
        if prev == cur:
            return (
                ComplexityProfile(tuple(cur[0]), exact=False, saturated=True),
                PalindromeProfile(tuple(cur[1]), saturated=True),
                w,
            )
        prev = cur
        length *= 2
    raise UnsaturatedError(f"profiles still changing at length {max_length}")


def profiles_to_csv(C: ComplexityProfile, P: PalindromeProfile | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "C", "P"])
    for n in range(1, C.n_max + 1):
        writer.writerow([n, C[n], "" if P is None or n > len(P.values) else P[n]])
    return buf.getvalue()


def letter_frequencies(letters: Sequence[str] | str) -> dict[str, float]:
    counts = Counter(letters)
    total = sum(counts.values())
    return {k: v / total for k, v in sorted(counts.items())}
