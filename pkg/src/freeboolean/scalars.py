"""Exact scalars: rationals and Gaussian rationals, with their string forms."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class GaussianRational:
    """A complex number ``re + i*im`` with rational parts.

    Only the arithmetic the operator models need is provided. Comparison with
    plain rationals works, so ``GaussianRational(2, 0) == 2`` holds.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(other, 0)
        if isinstance(other, complex):
            return GaussianRational(Fraction(other.real), Fraction(other.imag))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = GaussianRational(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, GaussianRational]


def conj(x):
    """Complex conjugate; the identity on rationals."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def simplify(x):
    """Collapse a Gaussian rational with zero imaginary part to a Fraction."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    return Fraction(x)


def parse_scalar(value) -> Scalar:
    """Parse ``"p/q"``, an int, or ``{"re": "p/q", "im": "r/s"}``.

    Floats are rejected; exact input is required.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise ValueError(f"unexpected keys in complex scalar: {sorted(unknown)}")
        return simplify(GaussianRational(parse_scalar(value.get("re", 0)),
                                         parse_scalar(value.get("im", 0))))
    raise TypeError(f"cannot parse scalar from {value!r}; use 'p/q' strings")


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Exact string form: ``"p/q"`` or ``"a+bi"`` style for complex values."""
    x = simplify(x)
    if isinstance(x, GaussianRational):
        sign = "-" if x.im < 0 else "+"
        return f"{_frac_str(x.re)}{sign}{_frac_str(abs(x.im))}i"
    return _frac_str(x)


def scalar_to_json(x):
    """JSON form used by the file formats: ``"p/q"`` or ``{"re":..,"im":..}``."""
    x = simplify(x)
    if isinstance(x, GaussianRational):
        return {"re": _frac_str(x.re), "im": _frac_str(x.im)}
    return _frac_str(x)


def format_decimal(x, digits: int = 12) -> str:
    """Approximate rendering, explicitly marked with a leading ``~``."""
    x = simplify(x)
    if isinstance(x, GaussianRational):
        return f"~{float(x.re):.{digits}g}{float(x.im):+.{digits}g}i"
    return f"~{float(x):.{digits}g}"
