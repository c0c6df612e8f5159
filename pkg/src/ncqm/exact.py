"""Exact numbers: complex rationals and closed-form integral values.

``Coefficient`` is a Gaussian rational ``re + i*im``.  ``ExactValue`` is a
finite sum ``sum c * pi**(k/2) * sqrt(d)`` with ``c`` a ``Coefficient``, ``k``
an integer and ``d`` a squarefree positive integer.  That basis is linearly
independent over the rationals, so comparing canonical forms is an exact
zero test.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Union

__all__ = ["Coefficient", "ExactValue", "as_fraction", "squarefree_split"]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings and floats (exactly) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # decimal reading, so 1e-3 becomes 1/1000 rather than its binary neighbour
        return Fraction(repr(value))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


_ZERO = Fraction(0)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Coefficient:
    """Complex rational number with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def _raw(cls, re, im) -> "Coefficient":
        # trusted constructor: both parts are already Fractions or ints
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    @classmethod
    def coerce(cls, value) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        return cls(value)

    def __add__(self, other):
        if type(other) is not Coefficient:
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = Coefficient.coerce(other)
        return Coefficient._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self + (-Coefficient.coerce(other))

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        if type(other) is not Coefficient:
            if isinstance(other, int):
                return Coefficient._raw(self.re * other, self.im * other)
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = Coefficient.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Coefficient._raw(a * c, _ZERO)
        return Coefficient._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Coefficient.coerce(other)
        den = other.re * other.re + other.im * other.im
        if not den:
            raise ZeroDivisionError("Coefficient division by zero")
        num = self * other.conjugate()
        return Coefficient(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return Coefficient.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return Coefficient(1) / (self ** (-k))
        out = Coefficient(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Coefficient":
        return Coefficient._raw(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def to_text(self) -> str:
        if not self.im:
            return _frac_text(self.re)
        if not self.re:
            return f"{_frac_text(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"({_frac_text(self.re)}{sign}{_frac_text(abs(self.im))}i)"

    def __repr__(self):
        return f"Coefficient({self.to_text()})"

    __str__ = to_text


_SCALARS = (Coefficient, int, Rational, float, complex, str)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n == s*s*d and d squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return s, d * n


Number = Union[int, Fraction, Coefficient]


class ExactValue:
    """Exact sum of ``c * pi**(k/2) * sqrt(d)`` basis elements.

    Keys are ``(k, d)``; values are nonzero ``Coefficient`` instances.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = Coefficient.coerce(c)
            if c:
                clean[key] = c
        self._terms = clean

    @classmethod
    def rational(cls, value) -> "ExactValue":
        return cls({(0, 1): Coefficient.coerce(value)})

    @classmethod
    def basis(cls, coeff, pi_half_power: int = 0, radicand: int = 1) -> "ExactValue":
        """``coeff * pi**(pi_half_power/2) * sqrt(radicand)`` for any positive integer radicand."""
        s, d = squarefree_split(radicand)
        return cls({(pi_half_power, d): Coefficient.coerce(coeff) * s})

    @classmethod
    def sqrt_of_rational(cls, q) -> "ExactValue":
        q = as_fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if not q:
            return cls()
        # sqrt(p/r) = sqrt(p*r)/r
        return cls.basis(Fraction(1, q.denominator), 0, q.numerator * q.denominator)

    def terms(self) -> Iterator[tuple[tuple[int, int], Coefficient]]:
        return iter(sorted(self._terms.items()))

    def __add__(self, other):
        other = _as_exact(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out[key] + c if key in out else c
        return ExactValue(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactValue({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_exact(other))

    def __rsub__(self, other):
        return _as_exact(other) - self

    def __mul__(self, other):
        other = _as_exact(other)
        out: dict = {}
        for (k1, d1), c1 in self._terms.items():
            for (k2, d2), c2 in other._terms.items():
                g = math.gcd(d1, d2)
                # sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2)
                key = (k1 + k2, (d1 // g) * (d2 // g))
                val = c1 * c2 * g
                out[key] = out[key] + val if key in out else val
        return ExactValue(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactValue):
            if len(other._terms) != 1:
                raise ValueError("ExactValue division only by a single basis term")
            ((k, d), c), = other._terms.items()
            # 1/(c pi^{k/2} sqrt d) = pi^{-k/2} sqrt(d) / (c d)
            inv = ExactValue({(-k, d): Coefficient(1) / (c * d)})
            return self * inv
        c = Coefficient.coerce(other)
        inv = Coefficient(1) / c
        return ExactValue({k: v * inv for k, v in self._terms.items()})

    def conjugate(self) -> "ExactValue":
        return ExactValue({k: c.conjugate() for k, c in self._terms.items()})

    def sqrt(self) -> "ExactValue":
        """Square root of a positive single-term value with an even pi power and d == 1."""
        if not self._terms:
            return ExactValue()
        if len(self._terms) != 1:
            raise ValueError("sqrt only for single-term values")
        ((k, d), c), = self._terms.items()
        if k % 2 or d != 1 or c.im or c.re < 0:
            raise ValueError(f"sqrt of {self.to_text()} is not representable")
        root = ExactValue.sqrt_of_rational(c.re)
        return root * ExactValue({(k // 2, 1): Coefficient(1)})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        try:
            other = _as_exact(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items(), key=lambda kv: kv[0])))

    def as_rational(self) -> Fraction:
        """The value as a Fraction; raises if it is not a real rational."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {(0, 1)} or self._terms[(0, 1)].im:
            raise ValueError(f"{self.to_text()} is not rational")
        return self._terms[(0, 1)].re

    def as_coefficient(self) -> Coefficient:
        if not self._terms:
            return Coefficient(0)
        if set(self._terms) != {(0, 1)}:
            raise ValueError(f"{self.to_text()} is not a complex rational")
        return self._terms[(0, 1)]

    def __complex__(self):
        total = 0j
        for (k, d), c in self._terms.items():
            total += complex(c) * math.pi ** (k / 2) * math.sqrt(d)
        return total

    def __float__(self):
        z = complex(self)
        if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
            raise ValueError(f"{self.to_text()} is not real")
        return z.real

    def __abs__(self):
        return abs(complex(self))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (k, d), c in self.terms():
            factors = [c.to_text()]
            if k:
                factors.append("pi" if k == 2 else f"pi^{k // 2}" if k % 2 == 0 else f"pi^({k}/2)")
            if d != 1:
                factors.append(f"sqrt({d})")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"ExactValue({self.to_text()})"


def _as_exact(value) -> ExactValue:
    if isinstance(value, ExactValue):
        return value
    return ExactValue.rational(Coefficient.coerce(value))
