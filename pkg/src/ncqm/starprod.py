"""Second-order star products as explicit bidifferential operators, plus trace diagnostics.

The deformation parameter is a grading: every product returns its theta^0,
theta^1 and theta^2 components separately, so "vanishes at second order" is an
exact statement rather than a tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .exact import Coefficient, ExactValue
from .poisson import Bivector, Measure, drift_tensor, gauge_tensor_b
from .symfield import DimensionMismatchError, ScalarField, integrate_r3

__all__ = [
    "MAX_GRADE",
    "Graded",
    "BidiffOperator",
    "kontsevich_star",
    "star_prime",
    "apply",
    "apply_graded",
    "trace",
    "trace_defect",
    "associator",
    "numeric_defect",
    "defect_slope",
    "unit_index",
]

MAX_GRADE = 2


class Graded:
    """Components of a quantity at theta-grades 0..MAX_GRADE; higher grades are dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence):
        parts = tuple(parts)
        if len(parts) != MAX_GRADE + 1:
            raise ValueError(f"need {MAX_GRADE + 1} grades, got {len(parts)}")
        self.parts = parts

    @classmethod
    def scalar(cls, value, zero) -> "Graded":
        return cls((value,) + (zero,) * MAX_GRADE)

    def __getitem__(self, k: int):
        return self.parts[k]

    def __iter__(self):
        return iter(self.parts)

    def __add__(self, other: "Graded") -> "Graded":
        return Graded(a + b for a, b in zip(self.parts, other.parts))

    def __sub__(self, other: "Graded") -> "Graded":
        return Graded(a - b for a, b in zip(self.parts, other.parts))

    def __neg__(self):
        return Graded(-a for a in self.parts)

    def map(self, fn: Callable) -> "Graded":
        return Graded(fn(a) for a in self.parts)

    def is_zero(self) -> bool:
        return all(_is_zero(a) for a in self.parts)

    def zero_grades(self) -> list[bool]:
        return [_is_zero(a) for a in self.parts]

    def numeric(self, theta: float) -> complex:
        return sum(complex(a) * theta ** k for k, a in enumerate(self.parts))

    def __eq__(self, other):
        return isinstance(other, Graded) and self.parts == other.parts

    def __repr__(self):
        return "Graded(" + ", ".join(str(a) for a in self.parts) + ")"


def _is_zero(a) -> bool:
    if isinstance(a, (ScalarField, ExactValue)):
        return a.is_zero()
    return a == 0


ThetaGradedField = Graded


def unit_index(dim: int, *axes: int) -> tuple:
    counts = [0] * dim
    for a in axes:
        counts[a] += 1
    return tuple(counts)


@dataclass(frozen=True)
class BidiffOperator:
    """``B(f, g) = sum theta^k c(x) d^left f d^right g``; multi-indices are per-axis counts."""

    dim: int
    terms: tuple  # ((k, left, right, coeff), ...) in canonical order

    @classmethod
    def from_dict(cls, dim: int, acc: dict) -> "BidiffOperator":
        items = tuple((k, l, r, c) for (k, l, r), c in sorted(acc.items(), key=lambda kv: kv[0]) if not c.is_zero())
        return cls(dim, items)

    def as_dict(self) -> dict:
        return {(k, l, r): c for k, l, r, c in self.terms}

    def grade(self, k: int) -> tuple:
        return tuple(t for t in self.terms if t[0] == k)

    def plus(self, extra: dict) -> "BidiffOperator":
        acc = self.as_dict()
        for key, c in extra.items():
            acc[key] = acc[key] + c if key in acc else c
        return BidiffOperator.from_dict(self.dim, acc)


def _add(acc: dict, key, c: ScalarField):
    if c.is_zero():
        return
    acc[key] = acc[key] + c if key in acc else c


def kontsevich_star(w: Bivector, bracket_sign: int = 1) -> BidiffOperator:
    """Second-order star product for the Poisson bivector ``w``.

    ``f*g = fg + (i/2) w^{ij} d_i f d_j g - (1/8) w^{ij} w^{kl} d_ik f d_jl g
    - (bracket_sign/12) w^{ij} d_j w^{kl} (d_ik f d_l g - d_k f d_il g)``.
    ``bracket_sign=+1`` is the associative choice; ``-1`` flips the last
    bracket and serves only as a negative control.
    """
    if bracket_sign not in (1, -1):
        raise ValueError("bracket_sign must be +1 or -1")
    n = w.dim
    u = lambda *axes: unit_index(n, *axes)  # noqa: E731
    acc: dict = {(0, u(), u()): ScalarField.constant(n, 1)}
    half_i = Coefficient(0, Fraction(1, 2))
    for i in range(n):
        for j in range(n):
            _add(acc, (1, u(i), u(j)), w[i, j].scale(half_i))
    for i in range(n):
        for j in range(n):
            if w[i, j].is_zero():
                continue
            for k in range(n):
                for l in range(n):
                    _add(acc, (2, u(i, k), u(j, l)), (w[i, j] * w[k, l]).scale(Fraction(-1, 8)))
    T = drift_tensor(w)
    c = Fraction(bracket_sign, 12)
    for i in range(n):
        for k in range(n):
            for l in range(n):
                t = T[i][k][l]
                if t.is_zero():
                    continue
                _add(acc, (2, u(i, k), u(l)), t.scale(-c))
                _add(acc, (2, u(k), u(i, l)), t.scale(c))
    return BidiffOperator.from_dict(n, acc)


def gauge_correction(b: Sequence[Sequence[ScalarField]]) -> dict:
    """The ``-2 theta^2 b^{ik} d_i (x) d_k`` terms."""
    n = len(b)
    out: dict = {}
    for i in range(n):
        for k in range(n):
            _add(out, (2, unit_index(n, i), unit_index(n, k)), b[i][k].scale(-2))
    return out


def star_prime(w: Bivector, m: Measure, b=None, bracket_sign: int = 1) -> BidiffOperator:
    """Trace-compatible product ``f*'g = f*g - 2 theta^2 b^{ik} d_i f d_k g``.

    ``b`` overrides the gauge tensor (used to build deliberately broken controls).
    """
    if b is None:
        b = gauge_tensor_b(m, w)
    return kontsevich_star(w, bracket_sign).plus(gauge_correction(b))


def apply(B: BidiffOperator, f: ScalarField, g: ScalarField, max_grade: int = MAX_GRADE) -> Graded:
    """``f * g`` per grade; grades above ``max_grade`` are left as zero."""
    if f.dim != B.dim or g.dim != B.dim:
        raise DimensionMismatchError("operator and arguments differ in dimension")
    parts = [ScalarField.zero(B.dim) for _ in range(MAX_GRADE + 1)]
    if f.is_zero() or g.is_zero():
        return Graded(parts)
    buckets: list[dict] = [{} for _ in range(MAX_GRADE + 1)]
    for k, left, right, c in B.terms:
        if k > max_grade:
            continue
        df = f.derivative(left)
        if df.is_zero():
            continue
        dg = g.derivative(right)
        if dg.is_zero():
            continue
        prod = c * df * dg
        for key, v in prod._terms.items():
            bk = buckets[k]
            bk[key] = bk[key] + v if key in bk else v
    return Graded(ScalarField(B.dim, bk, _canonical=True) for bk in buckets)


def apply_graded(B: BidiffOperator, F: Graded, G: Graded) -> Graded:
    """Star product of theta-graded arguments, truncated at MAX_GRADE."""
    dim = B.dim
    out = [ScalarField.zero(dim) for _ in range(MAX_GRADE + 1)]
    for p in range(MAX_GRADE + 1):
        if F[p].is_zero():
            continue
        for q in range(MAX_GRADE + 1 - p):
            if G[q].is_zero():
                continue
            res = apply(B, F[p], G[q], MAX_GRADE - p - q)
            for k in range(MAX_GRADE + 1 - p - q):
                out[p + q + k] = out[p + q + k] + res[k]
    return Graded(out)


def lift(f: ScalarField) -> Graded:
    return Graded.scalar(f, ScalarField.zero(f.dim))


def trace(f: ScalarField, m: Measure) -> ExactValue:
    """``Tr f = int d^3x mu f``."""
    return integrate_r3(m.mu * f)


def trace_graded(F: Graded, m: Measure) -> Graded:
    return F.map(lambda part: trace(part, m))


def trace_defect(f: ScalarField, g: ScalarField, B: BidiffOperator, m: Measure) -> Graded:
    """Per-grade ``Tr(f*g) - Tr(fg)``."""
    prod = apply(B, f, g)
    vals = trace_graded(prod, m)
    return Graded((vals[0] - trace(f * g, m),) + tuple(vals.parts[1:]))


def associator(f: ScalarField, g: ScalarField, h: ScalarField, B: BidiffOperator) -> Graded:
    fg = apply(B, f, g)
    gh = apply(B, g, h)
    return apply_graded(B, fg, lift(h)) - apply_graded(B, lift(f), gh)


def numeric_defect(defect: Graded, theta: float) -> float:
    return abs(defect.numeric(theta))


def defect_slope(defect: Graded, thetas=(1e-1, 1e-2, 1e-3)) -> float:
    """Least-squares log-log slope of |defect(theta)|; ``inf`` when the defect is identically zero."""
    vals = [numeric_defect(defect, t) for t in thetas]
    if all(v == 0 for v in vals):
        return math.inf
    xs = [math.log(t) for t in thetas]
    ys = [math.log(v) for v in vals]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den
