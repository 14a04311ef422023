"""Exact scalars: rationals and elements of a single quadratic field Q(sqrt(m)).

Rationals are plain :class:`fractions.Fraction` (ints are accepted anywhere a
rational is).  A :class:`QuadScalar` is ``a + b*sqrt(m)`` with rational ``a, b``
and squarefree ``m``.  Arithmetic results whose irrational part vanishes are
demoted back to ``Fraction`` so that rational data never drags an extension tag
around.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

import flint

from .errors import MixedExtension


class QuadScalar:
    __slots__ = ("a", "b", "m")

    def __init__(self, a, b=0, m: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if b and m == 0:
            raise ValueError("m = 0 encodes a pure rational; b must be 0")
        if m == 1 or (m and squarefree_part(m) != m):
            raise ValueError(f"extension tag {m} is not a squarefree integer != 1")
        self.a = a
        self.b = b
        self.m = m if b else 0

    # -- construction -------------------------------------------------

    @staticmethod
    def make(a, b, m: int) -> Scalar:
        """Canonical constructor: returns a ``Fraction`` whenever ``b == 0``."""
        if not b:
            return Fraction(a)
        return QuadScalar(a, b, m)

    # -- field operations ---------------------------------------------

    def _parts(self, other):
        if isinstance(other, QuadScalar):
            if other.m != self.m and other.b and self.b:
                raise MixedExtension(f"cannot combine sqrt({self.m}) and sqrt({other.m})")
            return other.a, other.b, self.m or other.m
        if isinstance(other, (int, Fraction)):
            return other, 0, self.m
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b, m = p
        return QuadScalar.make(self.a + a, self.b + b, m)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b, m = p
        return QuadScalar.make(self.a - a, self.b - b, m)

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b, m = p
        return QuadScalar.make(a - self.a, b - self.b, m)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b, m = p
        return QuadScalar.make(self.a * a + m * self.b * b, self.a * b + self.b * a, m)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.m)

    def __pos__(self):
        return self

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def inverse(self) -> Scalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.m)
        return QuadScalar.make(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        if isinstance(other, QuadScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadScalar.make(self.a / other, self.b / other, self.m)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadScalar):
            if not self.b and not other.b:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.m == other.m
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __repr__(self) -> str:
        return f"QuadScalar({self.a!r}, {self.b!r}, {self.m})"

    def __str__(self) -> str:
        return render(self)


Scalar = Union[int, Fraction, QuadScalar]


def is_zero(x: Scalar) -> bool:
    return not x


def ext_of(x: Scalar) -> int:
    """Extension tag of a scalar; 0 for anything rational."""
    if isinstance(x, QuadScalar) and x.b:
        return x.m
    return 0


def common_ext(values) -> int:
    """The single extension shared by ``values``; raises on a clash."""
    m = 0
    for v in values:
        e = ext_of(v)
        if e:
            if m and e != m:
                raise MixedExtension(f"values span sqrt({m}) and sqrt({e})")
            m = e
    return m


def parts(x: Scalar) -> tuple[Fraction, Fraction]:
    """(a, b) with x = a + b*sqrt(m)."""
    if isinstance(x, QuadScalar):
        return x.a, x.b
    return Fraction(x), Fraction(0)


def render(x: Scalar) -> str:
    """Canonical text: ``p/q`` (or ``p``) for rationals, ``a + b*sqrt(m)`` otherwise."""
    if isinstance(x, QuadScalar) and x.b:
        b = x.b
        sign = "+" if b > 0 else "-"
        return f"{_render_q(x.a)} {sign} {_render_q(abs(b))}*sqrt({x.m})"
    a = x.a if isinstance(x, QuadScalar) else Fraction(x)
    return _render_q(a)


def _render_q(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- square roots -------------------------------------------------------


@lru_cache(maxsize=4096)
def _squarefree_split(n: int) -> tuple[int, int]:
    """n > 0 -> (r, t) with n = r^2 * t and t squarefree."""
    r = isqrt(n)
    if r * r == n:
        return r, 1
    r, t = 1, 1
    for p, e in flint.fmpz(n).factor():
        p = int(p)
        r *= p ** (e // 2)
        if e % 2:
            t *= p
    return r, t


def squarefree_part(m: int) -> int:
    if m == 0:
        return 0
    sign = -1 if m < 0 else 1
    return sign * _squarefree_split(abs(m))[1]


def sqrt_in_field(q) -> tuple[Scalar, int]:
    """Square root of a rational as ``r*sqrt(m)`` with m squarefree.

    Returns ``(root, m)`` where ``m == 0`` means the root is rational.  Total on
    the rationals (negative inputs give negative ``m``).
    """
    q = Fraction(q)
    if q == 0:
        return Fraction(0), 0
    sign = -1 if q < 0 else 1
    n = abs(q.numerator) * q.denominator
    r, t = _squarefree_split(n)
    coeff = Fraction(r, q.denominator)
    m = sign * t
    if m == 1:
        return coeff, 0
    return QuadScalar(0, coeff, m), m


def sqrt_in(x: Scalar, m: int = 0) -> Scalar | None:
    """A square root of ``x`` inside Q(sqrt(m)) (or Q when m == 0).

    For rational ``x`` and ``m == 0`` the root may live in a fresh quadratic
    field, which is allowed.  ``None`` when no root exists in the permitted
    field.
    """
    m = m or ext_of(x)
    a, b = parts(x)
    if not b:
        root, tag = sqrt_in_field(a)
        if tag == 0 or m == 0 or tag == m:
            return root
        return None
    # (u + v sqrt m)^2 = a + b sqrt m  <=>  u^2 + m v^2 = a, 2uv = b
    nr, tag = sqrt_in_field(a * a - m * b * b)
    if tag != 0:
        return None
    for s in (nr, -nr):
        u2 = (a + s) / 2
        u, t = sqrt_in_field(u2)
        if t == 0 and u != 0:
            return QuadScalar.make(u, b / (2 * u), m)
    return None
