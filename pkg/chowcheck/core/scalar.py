"""
Extended projective scalars.

Cross-ratio values live on the projective line over the rationals plus
one extra state for the case that numerator and denominator vanish
together. An `ExtScalar` stores such a value as a pair of coprime
integers (num : den) with the first nonzero entry positive, so that
structural equality and hashing coincide with projective equality.
(0 : 0) is the undefined value; it is a regular value and never an
error.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import enum
import math

from sympy import QQ


__all__ = [
    'Comparison',
    'ExtScalar',
    'ext_mul',
    'ext_eq',
    'ZERO',
    'ONE',
    'INFINITY',
    'UNDEFINED',
]


class Comparison(enum.Enum):
    """Result of comparing two extended scalars."""

    EQUAL = "equal"
    UNEQUAL = "unequal"
    INCOMPARABLE = "incomparable"

    def __str__(self):
        return self.value


def _as_pair(value) -> tuple[int, int]:
    # int, Fraction, sympy QQ elements and gmpy mpq all provide
    # numerator and denominator
    if isinstance(value, int):
        return value, 1
    try:
        return int(value.numerator), int(value.denominator)
    except AttributeError:
        raise TypeError(f"not a rational number: {value!r}") from None


class ExtScalar:
    """
    A point of P^1(Q) or the undefined value. `num` and `den` can be any
    exact rationals, the representative gets normalized on creation.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        a, b = _as_pair(num)
        c, d = _as_pair(den)
        # (a/b : c/d) == (a*d : c*b)
        n, m = a * d, c * b
        g = math.gcd(n, m)
        if g:
            n //= g
            m //= g
        if n < 0 or (n == 0 and m < 0):
            n, m = -n, -m
        object.__setattr__(self, "_num", n)
        object.__setattr__(self, "_den", m)

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    def __reduce__(self):
        return (ExtScalar, (self._num, self._den))

    @classmethod
    def from_rational(cls, value) -> ExtScalar:
        return cls(value, 1)

    @classmethod
    def from_text(cls, text: str) -> ExtScalar:
        """
        Inverse of `str()`: accepts "p/q", "p", "inf" and "undef".
        Raises ValueError on anything else.
        """
        text = text.strip()
        if text == "inf":
            return INFINITY
        if text == "undef":
            return UNDEFINED
        numerator, sep, denominator = text.partition("/")
        try:
            num = int(numerator)
            den = int(denominator) if sep else 1
        except ValueError:
            raise ValueError(f"not an extended scalar: '{text}'") from None
        if den == 0:
            raise ValueError(f"zero denominator in '{text}', use 'inf'")
        return cls(num, den)

    @property
    def num(self) -> int:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def is_undefined(self) -> bool:
        return self._num == 0 and self._den == 0

    @property
    def is_zero(self) -> bool:
        return self._num == 0 and self._den != 0

    @property
    def is_infinite(self) -> bool:
        return self._den == 0 and self._num != 0

    @property
    def is_finite(self) -> bool:
        return self._den != 0

    def as_rational(self):
        """Returns the value as a sympy QQ element. Finite values only."""
        if not self.is_finite:
            raise ValueError(f"{self} has no rational value")
        return QQ(self._num, self._den)

    def inverse(self) -> ExtScalar:
        return ExtScalar(self._den, self._num)

    def __mul__(self, other):
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return ext_mul(self, other)

    def __eq__(self, other):
        # structural; the projective comparison is ext_eq()
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"ExtScalar({self._num}, {self._den})"

    def __str__(self):
        if self.is_undefined:
            return "undef"
        if self.is_infinite:
            return "inf"
        if self._den == 1:
            return str(self._num)
        return f"{self._num}/{self._den}"


def ext_mul(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    """
    Component-wise product (a.num * b.num : a.den * b.den). Zero times
    infinity gives the undefined value.
    """
    return ExtScalar(a.num * b.num, a.den * b.den)


def ext_eq(a: ExtScalar, b: ExtScalar) -> Comparison:
    """
    Projective comparison by cross-multiplication. The undefined value
    is incomparable to everything, itself included.
    """
    if a.is_undefined or b.is_undefined:
        return Comparison.INCOMPARABLE
    if a.num * b.den - a.den * b.num == 0:
        return Comparison.EQUAL
    return Comparison.UNEQUAL


ZERO = ExtScalar(0, 1)
ONE = ExtScalar(1, 1)
INFINITY = ExtScalar(1, 0)
UNDEFINED = ExtScalar(0, 0)
