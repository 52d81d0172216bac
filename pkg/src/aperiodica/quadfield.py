"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

A :class:`QuadReal` is stored as three integers ``(p, q, d)`` meaning
``(p + q*sqrt(D)) / d`` with ``d > 0`` and ``gcd(p, q, d) == 1``.  Rationals
(``q == 0``) are field-agnostic and mix freely with any ``D``.

:class:`DecimalParam` is the approximate fallback for parameters that are not
quadratic irrationals.  It carries an error radius and refuses to decide
comparisons it cannot certify.
"""

from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

import mpmath

__all__ = [
    "QuadReal",
    "DecimalParam",
    "RealParam",
    "MixedFieldError",
    "IndeterminateComparisonError",
    "NonExactParameterError",
    "TAU",
    "TAU_CONJ",
    "SQRT2",
    "squarefree_decomposition",
    "as_real",
    "require_exact",
    "parse_real",
    "to_json",
    "from_json",
]


class MixedFieldError(ValueError):
    """Raised when two irrational values live in different quadratic fields."""


class IndeterminateComparisonError(ArithmeticError):
    """Raised when a DecimalParam comparison cannot be certified."""


class NonExactParameterError(TypeError):
    """Raised when an exact (quadratic) parameter is required."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(f, D)`` with ``n == f*f*D`` and ``D`` square-free (n > 0)."""
    if n <= 0:
        raise ValueError("n must be positive")
    f, D = 1, n
    k = 2
    while k * k <= D:
        while D % (k * k) == 0:
            D //= k * k
            f *= k
        k += 1
    return f, D


def _is_squarefree(n: int) -> bool:
    return n >= 2 and squarefree_decomposition(n)[1] == n


def _sign(p: int, q: int, D: int) -> int:
    """Sign of ``p + q sqrt(D)``."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p^2 with q^2 D
    return sp if p * p > q * q * D else sq


def _coerce(x: object) -> QuadReal | None:
    if isinstance(x, QuadReal):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadReal(x)
    return None


@total_ordering
class QuadReal:
    """Element ``a + b*sqrt(D)`` of a real quadratic field with rational a, b."""

    __slots__ = ("_p", "_q", "_d", "_D")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, D: int = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        if b != 0:
            if not _is_squarefree(D):
                raise ValueError(f"D={D} must be a square-free integer >= 2")
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d, D)

    def _set(self, p: int, q: int, d: int, D: int) -> None:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(math.gcd(p, q), d)
        if g > 1:
            p, q, d = p // g, q // g, d // g
        self._p, self._q, self._d = p, q, d
        self._D = D if q != 0 else 0

    @classmethod
    def _raw(cls, p: int, q: int, d: int, D: int) -> QuadReal:
        obj = cls.__new__(cls)
        obj._set(p, q, d, D)
        return obj

    # -- accessors -------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    @property
    def D(self) -> int:
        return self._D

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    def integer_coords(self) -> tuple[int, int, int]:
        """``(p, q, d)`` with value ``(p + q*sqrt(D)) / d``."""
        return self._p, self._q, self._d

    def __repr__(self) -> str:
        if self._q == 0:
            return f"QuadReal({self.a})"
        return f"QuadReal({self.a}, {self.b}, {self._D})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self.a)
        a, b = self.a, self.b
        root = f"sqrt({self._D})"
        mag = root if abs(b) == 1 else f"{abs(b)}*{root}"
        if a == 0:
            return mag if b > 0 else f"-{mag}"
        sign = "+" if b > 0 else "-"
        return f"{a} {sign} {mag}"

    # -- field bookkeeping ------------------------------------------------
    def _common_D(self, other: QuadReal) -> int:
        if self._q == 0:
            return other._D
        if other._q == 0 or other._D == self._D:
            return self._D
        raise MixedFieldError(f"cannot combine Q(sqrt({self._D})) with Q(sqrt({other._D}))")

    def same_field(self, other: QuadReal) -> bool:
        return self._q == 0 or other._q == 0 or self._D == other._D

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: object) -> QuadReal:
        if isinstance(other, int):
            return QuadReal._raw(self._p + other * self._d, self._q, self._d, self._D)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        D = self._common_D(o)
        if self._d == o._d:
            return QuadReal._raw(self._p + o._p, self._q + o._q, self._d, D)
        return QuadReal._raw(
            self._p * o._d + o._p * self._d, self._q * o._d + o._q * self._d, self._d * o._d, D
        )

    __radd__ = __add__

    def __neg__(self) -> QuadReal:
        return QuadReal._raw(-self._p, -self._q, self._d, self._D)

    def __pos__(self) -> QuadReal:
        return self

    def __abs__(self) -> QuadReal:
        return -self if self.sign() < 0 else self

    def __sub__(self, other: object) -> QuadReal:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> QuadReal:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> QuadReal:
        if isinstance(other, int):
            return QuadReal._raw(self._p * other, self._q * other, self._d, self._D)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        D = self._common_D(o)
        p = self._p * o._p + self._q * o._q * D
        q = self._p * o._q + self._q * o._p
        return QuadReal._raw(p, q, self._d * o._d, D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x) = a^2 - b^2 D``."""
        return Fraction(self._p * self._p - self._q * self._q * self._D, self._d * self._d)

    def inverse(self) -> QuadReal:
        if self._p == 0 and self._q == 0:
            raise ZeroDivisionError("QuadReal division by zero")
        n = self._p * self._p - self._q * self._q * self._D
        # (p + q r)/d inverted is d (p - q r) / n
        return QuadReal._raw(self._d * self._p, -self._d * self._q, n, self._D)

    def __truediv__(self, other: object) -> QuadReal:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadReal:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadReal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadReal(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadReal:
        """Galois conjugate ``a - b sqrt(D)``."""
        return QuadReal._raw(self._p, -self._q, self._d, self._D)

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        return _sign(self._p, self._q, self._D)

    def _cmp(self, other: QuadReal) -> int:
        D = self._common_D(other)
        if self._d == other._d:
            return _sign(self._p - other._p, self._q - other._q, D)
        return _sign(
            self._p * other._d - other._p * self._d, self._q * other._d - other._q * self._d, D
        )

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d and (
            self._q == 0 or self._D == o._D
        )

    def __lt__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) < 0

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d, self._D))

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    # -- rounding ---------------------------------------------------------
    def floor(self) -> int:
        p, q, d = self._p, self._q, self._d
        if q == 0:
            return p // d
        r = math.isqrt(q * q * self._D)
        # r = floor(|q| sqrt D); irrational so strict inequalities hold
        s = r if q > 0 else -r - 1
        return (p + s) // d

    def __floor__(self) -> int:
        return self.floor()

    def ceil(self) -> int:
        return -((-self).floor())

    def __ceil__(self) -> int:
        return self.ceil()

    def __float__(self) -> float:
        if self._q == 0:
            return self._p / self._d
        return float(self.to_mpf(80))

    def to_mpf(self, prec: int = 128) -> mpmath.mpf:
        with mpmath.workprec(prec + 16):
            v = (mpmath.mpf(self._p) + mpmath.mpf(self._q) * mpmath.sqrt(self._D)) / self._d
        return v

    # -- algebra ----------------------------------------------------------
    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Primitive ``(A, B, C)``, ``A > 0``, with ``A x^2 + B x + C = 0``."""
        if self._q == 0:
            raise ValueError("minimal_polynomial requires an irrational value")
        # x^2 - trace x + norm
        tr = Fraction(2 * self._p, self._d)
        nm = self.norm()
        den = math.lcm(tr.denominator, nm.denominator)
        A, B, C = den, -tr.numerator * (den // tr.denominator), nm.numerator * (den // nm.denominator)
        g = math.gcd(math.gcd(A, B), C)
        return A // g, B // g, C // g

    def in_ring(self, generator: QuadReal) -> tuple[int, int] | None:
        """Integers ``(m, n)`` with ``self == m + n*generator``, or None."""
        if generator.is_rational:
            raise ValueError("generator must be irrational")
        if not self.same_field(generator):
            return None
        n = self.b / generator.b
        m = self.a - n * generator.a
        if n.denominator != 1 or m.denominator != 1:
            return None
        return int(m), int(n)


TAU = QuadReal(Fraction(1, 2), Fraction(1, 2), 5)
TAU_CONJ = TAU.conjugate()
SQRT2 = QuadReal(0, 1, 2)


@total_ordering
class DecimalParam:
    """Approximate real value ``mid +- rad`` evaluated at ``prec`` bits.

    Only the operations needed by direct enumeration are provided.
    Comparisons raise :class:`IndeterminateComparisonError` when the
    uncertainty intervals overlap.
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, value: object, prec: int = 128, rad: object = None) -> None:
        if prec < 64:
            raise ValueError("DecimalParam precision must be at least 64 bits")
        self.prec = prec
        with mpmath.workprec(prec):
            self.mid = mpmath.mpf(value)
            if rad is None:
                rad = abs(self.mid) * mpmath.ldexp(1, -prec + 2)
            self.rad = mpmath.mpf(rad)

    def __repr__(self) -> str:
        return f"DecimalParam({mpmath.nstr(self.mid, 20)}, prec={self.prec})"

    def _lift(self, other: object) -> DecimalParam | None:
        if isinstance(other, DecimalParam):
            return other
        if isinstance(other, (int, Fraction)):
            with mpmath.workprec(self.prec):
                v = mpmath.mpf(other.numerator) / other.denominator
            return DecimalParam(v, self.prec)
        if isinstance(other, QuadReal):
            v = other.to_mpf(self.prec)
            return DecimalParam(v, self.prec)
        return None

    def _combine(self, mid: mpmath.mpf, rad: mpmath.mpf) -> DecimalParam:
        # rounding of the midpoint is absorbed into the radius
        with mpmath.workprec(self.prec):
            extra = abs(mid) * mpmath.ldexp(1, -self.prec + 2)
            return DecimalParam(mid, self.prec, rad=rad + extra)

    def __add__(self, other: object) -> DecimalParam:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.prec):
            return self._combine(self.mid + o.mid, self.rad + o.rad)

    __radd__ = __add__

    def __neg__(self) -> DecimalParam:
        return DecimalParam(-self.mid, self.prec, rad=self.rad)

    def __sub__(self, other: object) -> DecimalParam:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> DecimalParam:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> DecimalParam:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.prec):
            mid = self.mid * o.mid
            rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
            return self._combine(mid, rad)

    __rmul__ = __mul__

    def sign(self) -> int:
        if self.mid - self.rad > 0:
            return 1
        if self.mid + self.rad < 0:
            return -1
        raise IndeterminateComparisonError(f"sign of {self!r} is not certified")

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if (self - o).sign() == 0:  # pragma: no cover - sign never returns 0
            return True
        return False

    def __lt__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        return hash((self.mid, self.rad))

    def floor(self) -> int:
        lo = int(mpmath.floor(self.mid - self.rad))
        hi = int(mpmath.floor(self.mid + self.rad))
        if lo != hi:
            raise IndeterminateComparisonError(f"floor of {self!r} is not certified")
        return lo

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self) -> float:
        return float(self.mid)

    def to_mpf(self, prec: int = 128) -> mpmath.mpf:
        return self.mid


RealParam = Union[QuadReal, DecimalParam]


def as_real(x: object) -> RealParam:
    """Coerce ints, Fractions, QuadReals and DecimalParams to a RealParam."""
    if isinstance(x, (QuadReal, DecimalParam)):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadReal(x)
    if isinstance(x, str):
        return parse_real(x)
    if isinstance(x, float):
        return QuadReal(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as a real parameter")


def require_exact(x: RealParam, what: str = "parameter") -> QuadReal:
    if not isinstance(x, QuadReal):
        raise NonExactParameterError(f"{what} must be exact (quadratic), got {x!r}")
    return x


_CONSTANTS = {
    "tau": TAU,
    "golden": TAU,
    "phi": TAU,
    "taup": TAU_CONJ,
    "tau_conj": TAU_CONJ,
    "sqrt2": SQRT2,
}

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def _eval_node(node: ast.AST, decimal_exact: bool) -> RealParam:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, decimal_exact)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        if isinstance(node.value, int):
            return QuadReal(node.value)
        raise ValueError("float literals inside expressions are not supported")
    if isinstance(node, ast.Name):
        try:
            return _CONSTANTS[node.id.lower()]
        except KeyError:
            raise ValueError(f"unknown constant {node.id!r}") from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, decimal_exact)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, decimal_exact)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponent must be an integer literal")
            return left ** node.right.value
        right = _eval_node(node.right, decimal_exact)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and isinstance(node.args[0], ast.Constant)
        and isinstance(node.args[0].value, int)
    ):
        n = node.args[0].value
        if n < 0:
            raise ValueError("sqrt of a negative integer")
        if n == 0:
            return QuadReal(0)
        f, D = squarefree_decomposition(n)
        return QuadReal(f) if D == 1 else QuadReal(0, f, D)
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


def parse_real(text: str, decimal: str = "approx", prec: int = 128) -> RealParam:
    """Parse ``"a/b + c/d*sqrt(D)"``, named constants or a decimal literal.

    Named constants: ``tau``/``golden``/``phi``, ``tau'``, ``sqrt2``.
    A bare decimal literal becomes a :class:`DecimalParam` when
    ``decimal == "approx"`` and an exact rational when ``decimal == "exact"``.
    """
    s = text.strip()
    if _DECIMAL_RE.match(s) and ("." in s or "e" in s.lower()):
        if decimal == "exact":
            return QuadReal(Fraction(s))
        with mpmath.workprec(prec):
            return DecimalParam(mpmath.mpf(s), prec)
    s = s.replace("tau'", "taup").replace("τ'", "taup").replace("τ", "tau")
    s = s.replace("^", "**")
    try:
        tree = ast.parse(s, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse real parameter {text!r}") from exc
    return _eval_node(tree, decimal == "exact")


def to_json(x: QuadReal) -> dict[str, int]:
    a, b = x.a, x.b
    return {
        "a_num": a.numerator,
        "a_den": a.denominator,
        "b_num": b.numerator,
        "b_den": b.denominator,
        "D": x.D,
    }


def from_json(obj: dict[str, int]) -> QuadReal:
    return QuadReal(
        Fraction(obj["a_num"], obj["a_den"]), Fraction(obj["b_num"], obj["b_den"]), obj["D"]
    )
