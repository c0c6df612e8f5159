"""Exact symbolic ring of fields ``c * x**a * (r^2)**(s/2) * exp(-beta r^2) * exp(-gamma r)``.

A term is keyed by ``(mono, rad, gauss, expo)``: the exponent tuple of the
Cartesian monomial, the integer ``s`` of the radial factor, and the two
envelope rates.  Because ``r^2 = sum x_i^2`` the naive representation is not
unique, so the canonical form rewrites ``x_N^2 -> r^2 - x_1^2 - ... - x_{N-1}^2``
until the last coordinate appears to power at most one.  Over
``Q[x_1..x_{N-1}, r, 1/r]`` the fields ``1`` and ``x_N`` form a free basis, and the
envelopes are transcendental, so equal canonical forms <=> equal functions.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .exact import Coefficient, ExactValue, as_fraction

__all__ = [
    "ScalarField",
    "DimensionMismatchError",
    "SingularPointError",
    "MixedEnvelopeError",
    "DivergentIntegralError",
    "NotRepresentableError",
    "integrate_r3",
    "angular_moment",
]

Key = tuple  # (mono: tuple[int, ...], rad: int, gauss: Fraction, expo: Fraction)

_ZERO = Fraction(0)


class DimensionMismatchError(ValueError):
    pass


class SingularPointError(ValueError):
    pass


class MixedEnvelopeError(ValueError):
    pass


class DivergentIntegralError(ValueError):
    pass


class NotRepresentableError(ValueError):
    pass


@lru_cache(maxsize=None)
def _reduce(mono: tuple, rad: int) -> tuple:
    """Canonical expansion of ``x**mono * r**rad`` as ((int, mono, rad), ...)."""
    if mono[-1] < 2:
        return ((1, mono, rad),)
    acc: dict = {}
    lowered = mono[:-1] + (mono[-1] - 2,)
    pieces = [(1, lowered, rad + 2)]
    for i in range(len(mono) - 1):
        bumped = list(lowered)
        bumped[i] += 2
        pieces.append((-1, tuple(bumped), rad))
    for sign, m, s in pieces:
        for c, m2, s2 in _reduce(m, s):
            acc[(m2, s2)] = acc.get((m2, s2), 0) + sign * c
    return tuple((c, m, s) for (m, s), c in sorted(acc.items()) if c)


def _accumulate(acc: dict, coeff: Coefficient, mono: tuple, rad: int, gauss, expo) -> None:
    for c, m, s in _reduce(mono, rad):
        key = (m, s, gauss, expo)
        val = coeff * c if c != 1 else coeff
        if key in acc:
            acc[key] = acc[key] + val
        else:
            acc[key] = val


class _Rate(Fraction):
    """Envelope rate with a cached hash; rates sit inside every term key."""

    __slots__ = ("_h",)

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            self._h = Fraction.__hash__(self)
            return self._h


@lru_cache(maxsize=4096)
def _intern(f: Fraction):
    return int(f) if f.denominator == 1 else _Rate(f.numerator, f.denominator)


def _rate(value):
    # integral rates are stored as int, the rest as interned _Rate
    return _intern(as_fraction(value))


@lru_cache(maxsize=4096)
def _rate_add(a, b):
    return _intern(Fraction(a) + b)


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


class ScalarField:
    """Immutable element of the exact field ring in ``dim`` Cartesian variables."""

    __slots__ = ("dim", "_terms", "_dcache", "_hash")

    def __init__(self, dim: int, terms: dict | None = None, *, _canonical: bool = False):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self._dcache: dict = {}
        self._hash = None
        if _canonical:
            self._terms = {k: c for k, c in terms.items() if c}
            return
        acc: dict = {}
        for (mono, rad, gauss, expo), coeff in (terms or {}).items():
            mono = tuple(int(a) for a in mono)
            if len(mono) != dim or any(a < 0 for a in mono):
                raise ValueError(f"bad monomial {mono} for dim {dim}")
            gauss, expo = _rate(gauss), _rate(expo)
            if gauss < 0 or expo < 0:
                raise NotRepresentableError("envelope rates must be non-negative")
            _accumulate(acc, Coefficient.coerce(coeff), mono, int(rad), gauss, expo)
        self._terms = {k: c for k, c in acc.items() if c}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "ScalarField":
        return cls(dim, {}, _canonical=True)

    @classmethod
    def term(cls, dim: int, coeff=1, mono: Sequence[int] | None = None, rad: int = 0,
             gauss=0, expo=0) -> "ScalarField":
        mono = tuple(mono) if mono is not None else (0,) * dim
        return cls(dim, {(mono, rad, gauss, expo): coeff})

    @classmethod
    def constant(cls, dim: int, value=1) -> "ScalarField":
        return cls.term(dim, value)

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "ScalarField":
        """``x_i`` with zero-based axis index."""
        mono = [0] * dim
        mono[i] = 1
        return cls.term(dim, 1, mono)

    @classmethod
    def coordinates(cls, dim: int) -> tuple["ScalarField", ...]:
        return tuple(cls.coordinate(dim, i) for i in range(dim))

    @classmethod
    def radial(cls, dim: int, s: int) -> "ScalarField":
        """``(r^2)**(s/2)``."""
        return cls.term(dim, 1, None, s)

    @classmethod
    def gaussian(cls, dim: int, beta=1) -> "ScalarField":
        return cls.term(dim, 1, None, 0, beta, 0)

    @classmethod
    def exponential(cls, dim: int, gamma=1) -> "ScalarField":
        return cls.term(dim, 1, None, 0, 0, gamma)

    # -- inspection ---------------------------------------------------
    def terms(self) -> Iterator[tuple[Key, Coefficient]]:
        """Terms in canonical (lexicographic key) order."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0]))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def envelopes(self) -> set:
        return {(k[2], k[3]) for k in self._terms}

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if isinstance(other, ScalarField):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction, Coefficient)):
            return self == ScalarField.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- ring operations ----------------------------------------------
    def _coerce(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            if other.dim != self.dim:
                raise DimensionMismatchError(f"dims {self.dim} and {other.dim}")
            return other
        return ScalarField.constant(self.dim, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return ScalarField(self.dim, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField(self.dim, {k: -c for k, c in self._terms.items()}, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> "ScalarField":
        factor = Coefficient.coerce(factor)
        if not factor:
            return ScalarField.zero(self.dim)
        return ScalarField(self.dim, {k: c * factor for k, c in self._terms.items()}, _canonical=True)

    def __mul__(self, other):
        if not isinstance(other, ScalarField):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict = {}
        for (m1, s1, b1, g1), c1 in self._terms.items():
            for (m2, s2, b2, g2), c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                _accumulate(acc, c1 * c2, mono, s1 + s2, _rate_add(b1, b2), _rate_add(g1, g2))
        return ScalarField(self.dim, acc, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not ring operations")
        out = ScalarField.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ScalarField":
        return ScalarField(self.dim, {k: c.conjugate() for k, c in self._terms.items()}, _canonical=True)

    # -- calculus -----------------------------------------------------
    def partial(self, i: int) -> "ScalarField":
        """Exact derivative along zero-based axis ``i``."""
        if not 0 <= i < self.dim:
            raise IndexError(f"axis {i} out of range for dim {self.dim}")
        cached = self._dcache.get(i)
        if cached is not None:
            return cached
        acc: dict = {}
        for (mono, s, beta, gamma), c in self._terms.items():
            up = list(mono)
            up[i] += 1
            up = tuple(up)
            if mono[i]:
                down = list(mono)
                down[i] -= 1
                _accumulate(acc, c * mono[i], tuple(down), s, beta, gamma)
            if s:
                _accumulate(acc, c * s, up, s - 2, beta, gamma)
            if beta:
                _accumulate(acc, c * (-2 * beta), up, s, beta, gamma)
            if gamma:
                _accumulate(acc, c * (-gamma), up, s - 1, beta, gamma)
        out = ScalarField(self.dim, acc, _canonical=True)
        self._dcache[i] = out
        return out

    def derivative(self, counts: Sequence[int]) -> "ScalarField":
        """Apply ``prod_i d_i**counts[i]``."""
        key = tuple(counts)
        cached = self._dcache.get(key)
        if cached is not None:
            return cached
        out = self
        for axis, k in enumerate(key):
            for _ in range(k):
                out = out.partial(axis)
        self._dcache[key] = out
        return out

    def gradient(self) -> tuple["ScalarField", ...]:
        return tuple(self.partial(i) for i in range(self.dim))

    def laplacian(self) -> "ScalarField":
        out = ScalarField.zero(self.dim)
        for i in range(self.dim):
            out = out + self.partial(i).partial(i)
        return out

    def divide_exact(self, divisor: "ScalarField") -> "ScalarField":
        """Exact quotient by a single-term field; raises if the result leaves the ring."""
        divisor = self._coerce(divisor)
        if len(divisor._terms) != 1:
            raise NotRepresentableError("division only by single-term fields")
        ((dm, ds, db, dg), dc), = divisor._terms.items()
        inv = Coefficient(1) / dc
        if any(dm[:-1]) or dm[-1] > 1:
            raise NotRepresentableError(f"cannot divide by monomial {dm}")
        acc: dict = {}
        for (m, s, b, g), c in self._terms.items():
            nb, ng = _rate_add(b, -db), _rate_add(g, -dg)
            if nb < 0 or ng < 0:
                raise NotRepresentableError("quotient would need a growing envelope")
            if dm[-1]:
                if m[-1]:
                    mono = m[:-1] + (m[-1] - 1,)
                    _accumulate(acc, c * inv, mono, s - ds, nb, ng)
                else:
                    # 1/x_N is not in the ring
                    raise NotRepresentableError("division by the last coordinate is not exact")
            else:
                _accumulate(acc, c * inv, m, s - ds, nb, ng)
        return ScalarField(self.dim, acc, _canonical=True)

    # -- numerics -----------------------------------------------------
    def evaluate(self, point: Sequence[float]) -> complex:
        if len(point) != self.dim:
            raise DimensionMismatchError(f"point of length {len(point)} for dim {self.dim}")
        r2 = math.fsum(float(p) * float(p) for p in point)
        r = math.sqrt(r2)
        total = 0j
        for (mono, s, beta, gamma), c in self._terms.items():
            if r == 0.0 and s < 0:
                raise SingularPointError("negative radial power at the origin")
            v = 1.0
            for p, a in zip(point, mono):
                if a:
                    v *= float(p) ** a
            if s:
                v *= r ** s
            if beta or gamma:
                v *= math.exp(-float(beta) * r2 - float(gamma) * r)
            total += complex(c) * v
        return total

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_term_text(k, c) for k, c in self.terms())

    __str__ = to_text

    def __repr__(self):
        return f"ScalarField(dim={self.dim}, {self.to_text()})"

    @classmethod
    def from_text(cls, dim: int, text: str) -> "ScalarField":
        text = text.strip()
        if text == "0":
            return cls.zero(dim)
        terms = {}
        for chunk in _split_terms(text):
            key, c = _parse_term(dim, chunk)
            terms[key] = terms[key] + c if key in terms else c
        return cls(dim, terms)


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _term_text(key: Key, c: Coefficient) -> str:
    mono, s, beta, gamma = key
    factors = [c.to_text()]
    for i, a in enumerate(mono):
        if a:
            factors.append(f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}")
    if s:
        factors.append(f"r^{s}")
    if beta:
        factors.append(f"exp(-{_frac(beta)}*r^2)")
    if gamma:
        factors.append(f"exp(-{_frac(gamma)}*r)")
    return "*".join(factors)


def _split_terms(text: str) -> list[str]:
    # top-level " + " separators only; coefficients are parenthesised
    parts, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            parts.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    parts.append(text[start:])
    return parts


_COEFF_RE = re.compile(r"^\((?P<re>-?\d+(?:/\d+)?)(?P<sg>[+-])(?P<im>\d+(?:/\d+)?)i\)$")


def _parse_coeff(tok: str) -> Coefficient:
    m = _COEFF_RE.match(tok)
    if m:
        im = Fraction(m.group("im"))
        return Coefficient(Fraction(m.group("re")), im if m.group("sg") == "+" else -im)
    if tok.endswith("i"):
        return Coefficient(0, Fraction(tok[:-1]))
    return Coefficient(Fraction(tok))


def _parse_term(dim: int, chunk: str) -> tuple[Key, Coefficient]:
    factors = chunk.split("*")
    # exp(-b*r^2) was split on '*': stitch it back
    merged: list[str] = []
    for f in factors:
        if merged and merged[-1].startswith("exp(") and not merged[-1].endswith(")"):
            merged[-1] += "*" + f
        else:
            merged.append(f)
    coeff = _parse_coeff(merged[0])
    mono = [0] * dim
    s, beta, gamma = 0, _ZERO, _ZERO
    for f in merged[1:]:
        if f.startswith("exp(-"):
            body = f[5:-1]
            rate, var = body.split("*")
            if var == "r^2":
                beta = Fraction(rate)
            elif var == "r":
                gamma = Fraction(rate)
            else:
                raise ValueError(f"bad envelope {f!r}")
        elif f.startswith("r^"):
            s = int(f[2:])
        elif f.startswith("x"):
            name, _, power = f.partition("^")
            mono[int(name[1:]) - 1] += int(power) if power else 1
        else:
            raise ValueError(f"bad factor {f!r}")
    return (tuple(mono), s, beta, gamma), coeff


def angular_moment(a: int, b: int, c: int) -> Fraction:
    """``(1/4pi) * integral over the unit sphere of n_x^a n_y^b n_z^c``."""
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    num = _double_factorial(a - 1) * _double_factorial(b - 1) * _double_factorial(c - 1)
    return Fraction(num, _double_factorial(a + b + c + 1))


def integrate_r3(field: ScalarField) -> ExactValue:
    """Exact integral of ``field`` over R^3."""
    if field.dim != 3:
        raise DimensionMismatchError("integrate_r3 needs a 3-dimensional field")
    acc: dict = {}

    def add(key, val):
        acc[key] = acc[key] + val if key in acc else val

    for (mono, s, beta, gamma), c in field.terms():
        if beta and gamma:
            raise MixedEnvelopeError("no closed form for exp(-beta r^2 - gamma r)")
        if not beta and not gamma:
            raise DivergentIntegralError(f"term {_term_text((mono, s, beta, gamma), c)} does not decay")
        k = sum(mono) + s + 2  # radial power including the r^2 Jacobian
        if k < 0:
            raise DivergentIntegralError(f"term {_term_text((mono, s, beta, gamma), c)} diverges at the origin")
        ang = angular_moment(*mono)
        if not ang:
            continue
        base = c * (4 * ang)  # times pi
        if gamma:
            add((2, 1), base * Fraction(math.factorial(k), 1) / (gamma ** (k + 1)))
            continue
        m = k + 1  # integral r^k e^{-beta r^2} = Gamma(m/2) / (2 beta^{m/2})
        if m % 2 == 0:
            val = Fraction(math.factorial(m // 2 - 1), 2) / beta ** (m // 2)
            add((2, 1), base * val)
        else:
            gam = Fraction(_double_factorial(m - 2), 2 ** ((m - 1) // 2))
            val = gam / 2 / beta ** ((m - 1) // 2)
            root = ExactValue.sqrt_of_rational(Fraction(1) / beta)  # beta^{-1/2}
            for (_, d), rc in root.terms():
                add((3, d), base * val * rc)
    return ExactValue(acc)


def sum_fields(fields: Iterable[ScalarField], dim: int) -> ScalarField:
    acc: dict = {}
    for f in fields:
        for k, c in f._terms.items():
            acc[k] = acc[k] + c if k in acc else c
    return ScalarField(dim, acc, _canonical=True)
