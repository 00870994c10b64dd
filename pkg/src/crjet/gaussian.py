"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q.

Both parts are ``gmpy2.mpq`` rationals, kept in lowest terms with a positive
denominator, so equality and hashing are structural.  ``mpq`` hashes like
:class:`fractions.Fraction` and mixes with it freely.
"""
from __future__ import annotations

from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "I", "ZERO", "ONE", "as_gaussian"]


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is mpq else mpq(re)
        self.im = im if type(im) is mpq else mpq(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = as_gaussian(other, strict=False)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = as_gaussian(other, strict=False)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = as_gaussian(other, strict=False)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = as_gaussian(other, strict=False)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """Squared modulus, a rational."""
        return self.re * self.re + self.im * self.im

    # -- comparisons ------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            other = as_gaussian(other, strict=False)
            if other is None:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self):
        return not self.im

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({self})"

    @classmethod
    def parse(cls, text):
        """Parse the ``"a/b+c/d*i"`` serialization produced by ``str``."""
        body = text.replace(" ", "")
        try:
            if not body.endswith("i"):
                return cls(mpq(body.lstrip("+")))
            body = body[:-1].rstrip("*")
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut > 0:
                re_part, im_text = body[:cut], body[cut:]
            else:
                re_part, im_text = "0", body
            if im_text in ("", "+", "-"):
                im_text += "1"
            return cls(mpq(re_part.lstrip("+")), mpq(im_text.lstrip("+")))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a Gaussian rational: {text!r}") from None


def as_gaussian(value, strict=True):
    if type(value) is GaussianRational:
        return value
    if isinstance(value, (int, Rational)):
        return GaussianRational._raw(mpq(value), mpq(0))
    if isinstance(value, complex):
        # Only accepted when both parts are integral floats; floats are never
        # silently admitted as exact data.
        if value.real.is_integer() and value.imag.is_integer():
            return GaussianRational(int(value.real), int(value.imag))
    if strict:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
