"""Exact Gaussian-rational scalars.

``ExactScalar`` stores ``re + im*i`` with both components as
:class:`fractions.Fraction`. Real inputs (``int``/``Fraction``) mix freely
with it; results that come out real are still returned as ``ExactScalar``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "ExactScalar"]

_COMPONENT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>{_COMPONENT})?(?:(?P<im>[+-](?:\d+(?:/\d+)?)?|(?:\d+(?:/\d+)?))[ij])?$"
)


class ExactScalar:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value: Number | str) -> ExactScalar:
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to ExactScalar exactly")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            if not other.im:
                return ExactScalar(self.re * other.re, self.im * other.re)
            if not self.im:
                return ExactScalar(self.re * other.re, self.re * other.im)
            return ExactScalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ExactScalar division by zero")
            return ExactScalar(self.re / other, self.im / other)
        if isinstance(other, ExactScalar):
            if not other.im:
                return self / other.re
            d = other.abs2()
            num = self * other.conjugate()
            return ExactScalar(num.re / d, num.im / d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other) / self
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        result = ExactScalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    # comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def parse_scalar(text: str) -> ExactScalar:
    """Parse ``"3/2"``, ``"1+2i"``, ``"-1/3-1i"``, ``"2i"``, ``"i"`` without rounding.

    A trailing ``j`` is accepted in place of ``i``.
    """
    s = text.strip().replace(" ", "")
    if s in ("i", "+i", "j", "+j"):
        return ExactScalar(0, 1)
    if s in ("-i", "-j"):
        return ExactScalar(0, -1)
    m = _COMPLEX_RE.match(s)
    if not m or not s:
        raise ValueError(f"not an exact rational or Gaussian rational: {text!r}")
    im_text = m.group("im")
    if im_text in ("+", "-"):
        im_text += "1"
    try:
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        return ExactScalar(re_part, Fraction(im_text) if im_text else 0)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_scalar(value: Number) -> str:
    """Inverse of :func:`parse_scalar`."""
    v = ExactScalar.coerce(value)
    if v.im == 0:
        return str(v.re)
    if v.re == 0:
        return f"{v.im}i"
    sign = "+" if v.im > 0 else "-"
    return f"{v.re}{sign}{abs(v.im)}i"


def as_rational(value: Number | str) -> Fraction:
    """Coerce to a real rational, rejecting nonzero imaginary parts."""
    v = ExactScalar.coerce(value)
    if v.im:
        raise ValueError(f"expected a real rational, got {v}")
    return v.re
