"""Exact elements a + b*sqrt(d) of a real quadratic field."""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational

from sympy import factorint

from ..errors import RadicandMismatch

__all__ = ["QuadraticNumber", "as_quadratic", "squarefree_decomposition"]


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, f) with n == s*s*f and f squarefree, for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    s, f = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@total_ordering
class QuadraticNumber:
    """The number ``a + b*sqrt(d)`` with rational a, b and squarefree d >= 0.

    Rationals are embedded with ``d = 0``; whenever ``b`` vanishes the radicand
    is reset to 0, so equal numbers have equal representations. Arithmetic
    between two numbers with different non-trivial radicands raises
    :class:`RadicandMismatch`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = _frac(a)
        b = _frac(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if d > 1:
            s, f = squarefree_decomposition(d)
            b *= s
            d = f
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        if d == 0 or b == 0:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    # construction -----------------------------------------------------

    @classmethod
    def sqrt(cls, x) -> QuadraticNumber:
        """Exact square root of a non-negative rational."""
        x = _frac(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        p, q = x.numerator, x.denominator
        s, f = squarefree_decomposition(p * q)
        if f <= 1:
            return cls(Fraction(s, q))
        return cls(0, Fraction(s, q), f)

    @classmethod
    def parse(cls, text: str) -> QuadraticNumber:
        """Inverse of ``str``: accepts ``p/q``, ``p/q + r/s*sqrt(d)``."""
        t = re.sub(r"\s*([-+*/()])\s*", r"\1", text.strip())
        if not t or re.search(r"\s", t):
            raise ValueError(f"not a quadratic number: {text!r}")
        m = re.search(r"([+-]?)(\d+(?:/\d+)?)?\*?sqrt\((\d+)\)$", t)
        head = t[:m.start()] if m else t
        if head and (not re.fullmatch(r"[+-]?\d+(?:/\d+)?", head) or (m and not m.group(1))):
            raise ValueError(f"not a quadratic number: {text!r}")
        a = Fraction(head) if head else Fraction(0)
        if m is None:
            return cls(a)
        b = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            b = -b
        return cls(a, b, int(m.group(3)))

    # predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa if a * a > b * b * self.d else sb

    # arithmetic -------------------------------------------------------

    def _common(self, other) -> tuple[QuadraticNumber, int]:
        other = as_quadratic(other)
        if self.d and other.d and self.d != other.d:
            raise RadicandMismatch(f"sqrt({self.d}) and sqrt({other.d}) mixed")
        return other, self.d or other.d

    def __add__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a * o.a + self.b * o.b * d,
                               self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o, _ = self._common(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * o.conjugate() * QuadraticNumber(1 / n)

    def __rtruediv__(self, other):
        return as_quadratic(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadraticNumber(1) / self ** (-k)
        result, base = QuadraticNumber(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        try:
            o = as_quadratic(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __lt__(self, other):
        try:
            return (self - other).sign() < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # conversion -------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticNumber({str(self)!r})"

    def __str__(self):
        if self.d == 0:
            return str(self.a)
        sgn = "-" if self.b < 0 else "+"
        b = abs(self.b)
        coef = "" if b == 1 else f"{b}*"
        if self.a == 0:
            return f"{'-' if sgn == '-' else ''}{coef}sqrt({self.d})"
        return f"{self.a} {sgn} {coef}sqrt({self.d})"


def as_quadratic(x) -> QuadraticNumber:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return QuadraticNumber(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QuadraticNumber")
