"""Exact scalars: rationals and elements of real quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  ``QuadScalar`` is an
immutable ``a + b*sqrt(d)`` with rational ``a``, ``b``; it interoperates with
``int`` and ``Fraction`` so that linear-algebra code can stay generic.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DivisionByZero, MismatchedField, UnsupportedIndex

Rational = Fraction
Scalar = Union[Fraction, "QuadScalar"]


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadScalar:
    """The number ``a + b*sqrt(d)`` for square-free ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 5):
        if not _is_squarefree(d):
            raise ValueError(f"d={d} is not a square-free integer > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    # coercion -----------------------------------------------------------
    def _coerce(self, other) -> "QuadScalar | None":
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise MismatchedField(f"cannot combine Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, _RationalABC)):
            return QuadScalar(other, 0, self.d)
        return None

    def _new(self, a, b) -> "QuadScalar":
        q = object.__new__(QuadScalar)
        q.a, q.b, q.d = a, b, self.d
        return q

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            if not self.b:
                return self._new(self.a * other, self.b)
            return self._new(self.a * other, self.b * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.b:
            if not self.b:
                return self._new(self.a * o.a, self.b)
            return self._new(self.a * o.a, self.b * o.a)
        if not self.b:
            return self._new(self.a * o.a, self.a * o.b)
        return self._new(self.a * o.a + self.b * o.b * self.d, self.a * o.b + o.a * self.b)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        return self._new(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if not n:
            # a^2 = d b^2 has no rational solution except 0 since d is square-free
            raise DivisionByZero("division by zero in Q(sqrt %d)" % self.d)
        return self._new(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self._new(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ---------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                return not self and not other
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, _RationalABC)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        mag = abs(self.b)
        root = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if not self.a:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{root}"


def quad_arith(x: QuadScalar, y: QuadScalar, op: str) -> QuadScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise DivisionByZero("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# Jones index values ------------------------------------------------------

def beta_of(n: int) -> QuadScalar:
    """Index ``4 cos^2(pi/(n+3))`` for the two quadratic cases ``n = 2, 3``."""
    if n == 2:
        return QuadScalar(Fraction(3, 2), Fraction(1, 2), 5)
    if n == 3:
        return QuadScalar(3, 0, 3)
    raise UnsupportedIndex(f"n={n}: beta is not in a real quadratic field handled here")


def delta_of(n: int) -> QuadScalar:
    """Loop parameter ``2 cos(pi/(n+3))``; squares to :func:`beta_of`."""
    if n == 2:
        return QuadScalar(Fraction(1, 2), Fraction(1, 2), 5)
    if n == 3:
        return QuadScalar(0, 1, 3)
    raise UnsupportedIndex(f"n={n}: delta is not in a real quadratic field handled here")


# text encoding -------------------------------------------------------------

def parse_scalar(obj, d: int | None = None) -> Scalar:
    """Decode ``"p/q"`` strings, ints, or ``{"a","b","d"}`` objects."""
    if isinstance(obj, dict):
        q = QuadScalar(Fraction(str(obj.get("a", 0))), Fraction(str(obj.get("b", 0))), int(obj["d"]))
        if d is not None and q.d != d:
            raise MismatchedField(f"scalar over Q(sqrt {q.d}) in a Q(sqrt {d}) file")
        return q
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        value = Fraction(obj) if isinstance(obj, int) else Fraction(obj.strip())
        return QuadScalar(value, 0, d) if d is not None else value
    raise ValueError(f"cannot decode scalar {obj!r}")


def format_scalar(x) -> object:
    if isinstance(x, QuadScalar):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    x = Fraction(x)
    return str(x)


def field_tag(x) -> int | None:
    return x.d if isinstance(x, QuadScalar) else None
